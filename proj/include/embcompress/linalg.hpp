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

// Dense symmetric eigendecomposition and thin SVD.
//
// Both routines return spectra in descending order and normalise the sign
// of every eigenvector / right singular vector so that its entry of largest
// magnitude is positive (lowest index wins a tie). Serialised models depend
// on this convention for reproducibility.

#ifndef EMBCOMPRESS_LINALG_HPP_
#define EMBCOMPRESS_LINALG_HPP_

#include "embcompress/common.hpp"

namespace embcompress {

struct SpectralDecomposition {
  Vector values;   // descending
  Matrix vectors;  // column i pairs with values[i]
};

// Top `top_k` eigenpairs of a symmetric matrix. Throws PreconditionError if
// `a` is not square, is asymmetric beyond 1e-10 relative, or top_k is out of
// range; NumericalError if the solver fails to converge.
SpectralDecomposition SymmetricEigh(const Matrix& a, Index top_k);

struct ThinSvd {
  Matrix u;   // m x k
  Vector s;   // k, non-negative descending
  Matrix vt;  // k x n
};

ThinSvd TruncatedSvd(const Matrix& x, Index top_k);

// Flips columns in place so each column's largest-magnitude entry is
// positive. Returns the applied signs (+1/-1).
Vector NormalizeColumnSigns(Matrix& vectors);

// Largest absolute asymmetry |a_ij - a_ji| relative to max(1, max|a_ij|).
double RelativeAsymmetry(const Matrix& a);

}  // namespace embcompress

#endif  // EMBCOMPRESS_LINALG_HPP_
