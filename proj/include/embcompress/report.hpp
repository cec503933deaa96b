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

#ifndef EMBCOMPRESS_REPORT_HPP_
#define EMBCOMPRESS_REPORT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "embcompress/common.hpp"

namespace embcompress {

struct ReportRow {
  std::string task;     // sts | cls | nli
  std::string method;   // reducer name or "baseline"
  Index dim = 0;
  std::string setting;  // inductive | transductive | none (baseline)
  std::uint64_t seed = 0;
  std::string metric;   // spearman | accuracy
  double value = 0.0;
  double fit_seconds = 0.0;
  double transform_seconds = 0.0;
  // Set when the cell failed; value is NaN and the CSV metric column reads
  // "error:<message>".
  std::optional<std::string> error;
};

struct EvalReport {
  std::vector<ReportRow> rows;

  // Baseline rows first, then by task, method, dim, setting, seed.
  void SortCanonical();
};

inline constexpr char kReportCsvHeader[] =
    "task,method,dim,setting,seed,metric,value,fit_seconds,transform_seconds";

void WriteReportCsv(const EvalReport& report, std::ostream& out);
void WriteReportJsonl(const EvalReport& report, std::ostream& out);
EvalReport ReadReportCsv(std::istream& in);

void SaveReportCsv(const EvalReport& report,
                   const std::filesystem::path& path);
void SaveReportJsonl(const EvalReport& report,
                     const std::filesystem::path& path);
EvalReport LoadReportCsv(const std::filesystem::path& path);

}  // namespace embcompress

#endif  // EMBCOMPRESS_REPORT_HPP_
