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

#include "embcompress/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace embcompress {

namespace {

constexpr double kSymmetryTolerance = 1e-10;
// Entries within this relative distance of the column maximum count as tied
// for the sign convention, so rounding noise cannot pick a different pivot.
constexpr double kSignTieTolerance = 1e-12;

}  // namespace

double RelativeAsymmetry(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

Vector NormalizeColumnSigns(Matrix& vectors) {
  Vector signs = Vector::Ones(vectors.cols());
  for (Index c = 0; c < vectors.cols(); ++c) {
    auto col = vectors.col(c);
    if (col.size() == 0) continue;
    const double peak = col.cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    Index pivot = 0;
    while (std::abs(col(pivot)) < peak * (1.0 - kSignTieTolerance)) ++pivot;
    if (col(pivot) < 0.0) {
      col = -col;
      signs(c) = -1.0;
    }
  }
  return signs;
}

SpectralDecomposition SymmetricEigh(const Matrix& a, Index top_k) {
  if (a.rows() != a.cols()) {
    throw PreconditionError("SymmetricEigh needs a square matrix, got " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()));
  }
  const Index n = a.rows();
  if (top_k < 0 || top_k > n) {
    throw PreconditionError("top_k " + std::to_string(top_k) +
                            " out of range for size " + std::to_string(n));
  }
  if (!a.allFinite()) throw PreconditionError("matrix has non-finite entries");
  if (RelativeAsymmetry(a) > kSymmetryTolerance) {
    throw PreconditionError("matrix is not symmetric");
  }

  SpectralDecomposition out;
  if (top_k == 0) {
    out.values.resize(0);
    out.vectors.resize(n, 0);
    return out;
  }

  Matrix work = a;
  std::vector<double> w(static_cast<std::size_t>(n));
  Matrix z(n, top_k);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(top_k));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'U', static_cast<lapack_int>(n),
      work.data(), static_cast<lapack_int>(n), 0.0, 0.0,
      static_cast<lapack_int>(n - top_k + 1), static_cast<lapack_int>(n), 0.0,
      &found, w.data(), z.data(), static_cast<lapack_int>(n), support.data());
  if (info != 0 || found != top_k) {
    throw NumericalError("symmetric eigensolver failed (info=" +
                         std::to_string(info) + ")");
  }

  // dsyevr returns ascending order.
  out.values.resize(top_k);
  out.vectors.resize(n, top_k);
  for (Index i = 0; i < top_k; ++i) {
    out.values(i) = w[static_cast<std::size_t>(top_k - 1 - i)];
    out.vectors.col(i) = z.col(top_k - 1 - i);
  }
  NormalizeColumnSigns(out.vectors);
  return out;
}

ThinSvd TruncatedSvd(const Matrix& x, Index top_k) {
  const Index m = x.rows();
  const Index n = x.cols();
  const Index r = std::min(m, n);
  if (top_k < 0 || top_k > r) {
    throw PreconditionError("top_k " + std::to_string(top_k) +
                            " exceeds min(m, n) = " + std::to_string(r));
  }
  if (!x.allFinite()) throw PreconditionError("matrix has non-finite entries");

  ThinSvd out;
  if (top_k == 0) {
    out.u.resize(m, 0);
    out.s.resize(0);
    out.vt.resize(0, n);
    return out;
  }

  Matrix work = x;
  Vector s(r);
  Matrix u(m, r);
  Matrix vt(r, n);
  const lapack_int info = LAPACKE_dgesdd(
      LAPACK_COL_MAJOR, 'S', static_cast<lapack_int>(m),
      static_cast<lapack_int>(n), work.data(), static_cast<lapack_int>(m),
      s.data(), u.data(), static_cast<lapack_int>(m), vt.data(),
      static_cast<lapack_int>(r));
  if (info != 0) {
    throw NumericalError("SVD failed to converge (info=" +
                         std::to_string(info) + ")");
  }

  out.s = s.head(top_k);
  Matrix v = vt.topRows(top_k).transpose();
  const Vector signs = NormalizeColumnSigns(v);
  out.vt = v.transpose();
  out.u = u.leftCols(top_k) * signs.asDiagonal();
  return out;
}

}  // namespace embcompress
