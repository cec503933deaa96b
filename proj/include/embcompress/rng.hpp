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

#ifndef EMBCOMPRESS_RNG_HPP_
#define EMBCOMPRESS_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>

#include "embcompress/common.hpp"

namespace embcompress {

// Deterministic random stream. The engine is MT19937-64, whose state
// transition is fixed by the C++ standard, so raw 64-bit outputs agree
// across platforms. Uniforms take the top 53 bits; normals use the
// Box-Muller transform with the second variate cached. Standard library
// distributions are avoided because their algorithms are unspecified.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1).
  double Uniform();
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }
  double Normal();
  // Uniform integer in [0, bound) via rejection.
  std::uint64_t Below(std::uint64_t bound);
  void Shuffle(std::span<Index> items);

  Matrix NormalMatrix(Index rows, Index cols, double stddev);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace embcompress

#endif  // EMBCOMPRESS_RNG_HPP_
