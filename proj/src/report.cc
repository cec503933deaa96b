// Copyright 2026 The embcompress Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "embcompress/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace embcompress {

namespace {

constexpr std::string_view kErrorPrefix = "error:";

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

// CSV cells never contain commas or newlines.
std::string Sanitize(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c == ',' ) c = ';';
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

std::string MetricCell(const ReportRow& row) {
  if (row.error) return std::string(kErrorPrefix) + Sanitize(*row.error);
  return Sanitize(row.metric);
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

double ParseNumber(const std::string& cell, std::size_t line) {
  if (cell == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw FormatError("report line " + std::to_string(line) +
                      ": bad number \"" + cell + "\"");
  }
  return v;
}

}  // namespace

void EvalReport::SortCanonical() {
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ReportRow& a, const ReportRow& b) {
                     const bool ba = a.method == "baseline";
                     const bool bb = b.method == "baseline";
                     return std::tie(bb, a.task, a.method, a.dim, a.setting,
                                     a.seed) <
                            std::tie(ba, b.task, b.method, b.dim, b.setting,
                                     b.seed);
                   });
}

void WriteReportCsv(const EvalReport& report, std::ostream& out) {
  out << kReportCsvHeader << '\n';
  for (const auto& r : report.rows) {
    out << Sanitize(r.task) << ',' << Sanitize(r.method) << ',' << r.dim << ','
        << Sanitize(r.setting) << ',' << r.seed << ',' << MetricCell(r) << ','
        << FormatDouble(r.value) << ',' << FormatDouble(r.fit_seconds) << ','
        << FormatDouble(r.transform_seconds) << '\n';
  }
}

void WriteReportJsonl(const EvalReport& report, std::ostream& out) {
  for (const auto& r : report.rows) {
    nlohmann::ordered_json j;
    j["task"] = r.task;
    j["method"] = r.method;
    j["dim"] = r.dim;
    j["setting"] = r.setting;
    j["seed"] = r.seed;
    j["metric"] = MetricCell(r);
    if (std::isnan(r.value)) {
      j["value"] = nullptr;
    } else {
      j["value"] = r.value;
    }
    j["fit_seconds"] = r.fit_seconds;
    j["transform_seconds"] = r.transform_seconds;
    out << j.dump() << '\n';
  }
}

EvalReport ReadReportCsv(std::istream& in) {
  EvalReport report;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kReportCsvHeader) {
        throw FormatError("report header mismatch: expected \"" +
                          std::string(kReportCsvHeader) + "\"");
      }
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9) {
      throw FormatError("report line " + std::to_string(line_no) +
                        ": expected 9 fields, got " +
                        std::to_string(cells.size()));
    }
    ReportRow r;
    r.task = cells[0];
    r.method = cells[1];
    r.dim = static_cast<Index>(ParseNumber(cells[2], line_no));
    r.setting = cells[3];
    r.seed = static_cast<std::uint64_t>(std::stoull(cells[4]));
    if (cells[5].rfind(kErrorPrefix, 0) == 0) {
      r.error = cells[5].substr(kErrorPrefix.size());
    } else {
      r.metric = cells[5];
    }
    r.value = ParseNumber(cells[6], line_no);
    r.fit_seconds = ParseNumber(cells[7], line_no);
    r.transform_seconds = ParseNumber(cells[8], line_no);
    report.rows.push_back(std::move(r));
  }
  return report;
}

void SaveReportCsv(const EvalReport& report,
                   const std::filesystem::path& path) {
  auto out = OpenOut(path);
  WriteReportCsv(report, out);
  if (!out) throw IoError("write failed for " + path.string());
}

void SaveReportJsonl(const EvalReport& report,
                     const std::filesystem::path& path) {
  auto out = OpenOut(path);
  WriteReportJsonl(report, out);
  if (!out) throw IoError("write failed for " + path.string());
}

EvalReport LoadReportCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return ReadReportCsv(in);
}

}  // namespace embcompress
