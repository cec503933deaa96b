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

#ifndef EMBCOMPRESS_BENCH_HPP_
#define EMBCOMPRESS_BENCH_HPP_

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "embcompress/reducers.hpp"
#include "embcompress/store.hpp"

namespace embcompress {

enum class Phase { kFit, kTransform };

std::string_view PhaseName(Phase phase);

struct TimingResult {
  std::string method;
  Phase phase = Phase::kFit;
  double seconds = 0.0;  // median of samples
  Index repeats = 0;
  Index warmup = 0;
  Index n = 0;  // rows fitted (fit) or transformed (transform)
  Index d = 0;
  Index k = 0;
  std::vector<double> samples;
};

struct BenchTiming {
  TimingResult fit;
  TimingResult transform;
};

// Median wall-clock (steady clock) of fitting on `train` and of transforming
// all of `test`. The model is refitted on every fit repeat; one fixed model
// is reused for the transform phase. Warmup runs are discarded.
BenchTiming TimePhases(const ReducerConfig& config,
                       const EmbeddingMatrix& train,
                       const EmbeddingMatrix& test, Index repeats,
                       Index warmup, const TransformOptions& options = {});

double Median(std::vector<double> samples);

inline constexpr char kBenchCsvHeader[] =
    "method,phase,n,d,k,repeats,median_seconds";

void WriteBenchCsv(const std::vector<TimingResult>& results,
                   std::ostream& out);

}  // namespace embcompress

#endif  // EMBCOMPRESS_BENCH_HPP_
