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

#include "embcompress/kernels.hpp"

#include <cmath>
#include <string>

namespace embcompress {

KernelSpec KernelSpec::Resolved(Index dim) const {
  KernelSpec out = *this;
  if (out.gamma == 0.0) {
    if (dim < 1) throw PreconditionError("kernel needs dim >= 1");
    out.gamma = 1.0 / static_cast<double>(dim);
  }
  if (!(out.gamma > 0.0) || !std::isfinite(out.gamma)) {
    throw PreconditionError("kernel gamma must be positive");
  }
  if (out.degree < 1) throw PreconditionError("kernel degree must be >= 1");
  if (!std::isfinite(out.coef0)) {
    throw PreconditionError("kernel coef0 must be finite");
  }
  return out;
}

std::string_view KernelKindName(KernelKind kind) {
  switch (kind) {
    case KernelKind::kLinear:
      return "linear";
    case KernelKind::kRbf:
      return "rbf";
    case KernelKind::kPoly:
      return "poly";
    case KernelKind::kSigmoid:
      return "sigmoid";
  }
  return "?";
}

KernelKind ParseKernelKind(std::string_view name) {
  for (auto kind : {KernelKind::kLinear, KernelKind::kRbf, KernelKind::kPoly,
                    KernelKind::kSigmoid}) {
    if (name == KernelKindName(kind)) return kind;
  }
  throw PreconditionError("unknown kernel \"" + std::string(name) +
                          "\" (expected linear, rbf, poly or sigmoid)");
}

Matrix KernelMatrix(const KernelSpec& kernel, const RowMatrix& a,
                    const RowMatrix& b) {
  if (a.cols() != b.cols()) {
    throw PreconditionError("kernel inputs differ in width");
  }
  Matrix k = a * b.transpose();
  switch (kernel.kind) {
    case KernelKind::kLinear:
      break;
    case KernelKind::kRbf: {
      const Vector na = a.rowwise().squaredNorm();
      const Vector nb = b.rowwise().squaredNorm();
      for (Index j = 0; j < k.cols(); ++j) {
        for (Index i = 0; i < k.rows(); ++i) {
          const double sq = std::max(0.0, na(i) + nb(j) - 2.0 * k(i, j));
          k(i, j) = std::exp(-kernel.gamma * sq);
        }
      }
      break;
    }
    case KernelKind::kPoly: {
      const int degree = static_cast<int>(kernel.degree);
      k = k.unaryExpr([&](double v) {
        return std::pow(kernel.gamma * v + kernel.coef0, degree);
      });
      break;
    }
    case KernelKind::kSigmoid:
      k = k.unaryExpr(
          [&](double v) { return std::tanh(kernel.gamma * v + kernel.coef0); });
      break;
  }
  return k;
}

double KernelValue(const KernelSpec& kernel, const Eigen::Ref<const Vector>& x,
                   const Eigen::Ref<const Vector>& y) {
  switch (kernel.kind) {
    case KernelKind::kLinear:
      return x.dot(y);
    case KernelKind::kRbf:
      return std::exp(-kernel.gamma * (x - y).squaredNorm());
    case KernelKind::kPoly:
      return std::pow(kernel.gamma * x.dot(y) + kernel.coef0,
                      static_cast<int>(kernel.degree));
    case KernelKind::kSigmoid:
      return std::tanh(kernel.gamma * x.dot(y) + kernel.coef0);
  }
  return 0.0;
}

}  // namespace embcompress
