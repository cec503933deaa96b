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

#ifndef EMBCOMPRESS_KERNELS_HPP_
#define EMBCOMPRESS_KERNELS_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include "embcompress/common.hpp"

namespace embcompress {

enum class KernelKind : std::uint8_t {
  kLinear = 0,
  kRbf = 1,
  kPoly = 2,
  kSigmoid = 3,
};

//   linear   <x, y>
//   rbf      exp(-gamma |x - y|^2)
//   poly     (gamma <x, y> + coef0)^degree
//   sigmoid  tanh(gamma <x, y> + coef0)
struct KernelSpec {
  KernelKind kind = KernelKind::kRbf;
  // 0 means "unset": resolved to 1/d when a model is fitted.
  double gamma = 0.0;
  std::uint32_t degree = 3;
  double coef0 = 1.0;

  // Returns a copy with gamma resolved for input dimension `dim`, after
  // validating gamma > 0 and degree >= 1.
  KernelSpec Resolved(Index dim) const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

std::string_view KernelKindName(KernelKind kind);
KernelKind ParseKernelKind(std::string_view name);

// Gram block K[i][j] = k(a_i, b_j) for row-major inputs of equal width.
Matrix KernelMatrix(const KernelSpec& kernel, const RowMatrix& a,
                    const RowMatrix& b);

double KernelValue(const KernelSpec& kernel,
                   const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y);

}  // namespace embcompress

#endif  // EMBCOMPRESS_KERNELS_HPP_
