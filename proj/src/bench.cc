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

#include "embcompress/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <optional>
#include <ostream>

namespace embcompress {

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double TimeOnce(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string_view PhaseName(Phase phase) {
  return phase == Phase::kFit ? "fit" : "transform";
}

double Median(std::vector<double> samples) {
  if (samples.empty()) throw PreconditionError("median of no samples");
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  if (samples.size() % 2 == 1) return samples[mid];
  return 0.5 * (samples[mid - 1] + samples[mid]);
}

BenchTiming TimePhases(const ReducerConfig& config,
                       const EmbeddingMatrix& train,
                       const EmbeddingMatrix& test, Index repeats,
                       Index warmup, const TransformOptions& options) {
  if (repeats < 1) throw PreconditionError("repeats must be >= 1");
  if (warmup < 0) throw PreconditionError("warmup must be >= 0");

  const std::string method(MethodName(config.method));
  BenchTiming out;
  out.fit = {method,  Phase::kFit, 0.0,        repeats, warmup,
             train.rows(), train.dim(), config.target_dim, {}};
  out.transform = {method,  Phase::kTransform, 0.0,        repeats, warmup,
                   test.rows(), test.dim(), config.target_dim, {}};

  std::optional<ProjectionModel> model;
  for (Index i = 0; i < warmup + repeats; ++i) {
    const double s = TimeOnce([&] { model.emplace(Fit(config, train)); });
    if (i >= warmup) out.fit.samples.push_back(s);
  }
  for (Index i = 0; i < warmup + repeats; ++i) {
    const double s = TimeOnce([&] {
      const EmbeddingMatrix projected = Transform(*model, test, options);
      if (projected.rows() != test.rows()) {
        throw NumericalError("transform changed the row count");
      }
    });
    if (i >= warmup) out.transform.samples.push_back(s);
  }
  out.fit.seconds = Median(out.fit.samples);
  out.transform.seconds = Median(out.transform.samples);
  return out;
}

void WriteBenchCsv(const std::vector<TimingResult>& results,
                   std::ostream& out) {
  out << kBenchCsvHeader << '\n';
  for (const auto& r : results) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), r.seconds);
    out << r.method << ',' << PhaseName(r.phase) << ',' << r.n << ',' << r.d
        << ',' << r.k << ',' << r.repeats << ',' << std::string_view(buf, end)
        << '\n';
  }
}

}  // namespace embcompress
