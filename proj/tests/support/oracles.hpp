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

// Slow reference implementations used only by tests. Nothing here calls into
// the library under test.

#ifndef EMBCOMPRESS_TESTS_SUPPORT_ORACLES_HPP_
#define EMBCOMPRESS_TESTS_SUPPORT_ORACLES_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct Eigenpairs {
  Vec values;  // descending
  Mat vectors;
};

// Top-k eigenpairs of a symmetric matrix by shifted power iteration with
// Hotelling deflation. The shift makes the matrix positive definite so the
// dominant eigenvalue is also the algebraically largest.
inline Eigenpairs PowerEigen(const Mat& a, int k, double tol = 1e-13,
                             long max_iter = 5'000'000) {
  const int n = static_cast<int>(a.rows());
  double shift = 0.0;
  for (int i = 0; i < n; ++i) shift = std::max(shift, a.row(i).cwiseAbs().sum());
  shift += 1.0;
  Mat b = a + shift * Mat::Identity(n, n);
  const double scale = shift + b.norm();

  Eigenpairs out{Vec(k), Mat(n, k)};
  std::mt19937_64 gen(12345);
  std::normal_distribution<double> normal;
  for (int c = 0; c < k; ++c) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = normal(gen);
    v.normalize();
    double mu = 0.0;
    for (long it = 0; it < max_iter; ++it) {
      Vec w = b * v;
      mu = v.dot(w);
      const double residual = (w - mu * v).norm();
      v = w.normalized();
      if (residual <= tol * scale) break;
    }
    mu = v.dot(b * v);
    out.values(c) = mu - shift;
    out.vectors.col(c) = v;
    b -= mu * v * v.transpose();
  }
  return out;
}

// Sample covariance with the 1/(n-1) normalisation, built entry by entry.
inline Mat Covariance(const Mat& x) {
  const int n = static_cast<int>(x.rows());
  const int d = static_cast<int>(x.cols());
  Vec mean = Vec::Zero(d);
  for (int i = 0; i < n; ++i) mean += x.row(i).transpose();
  mean /= n;
  Mat cov = Mat::Zero(d, d);
  for (int p = 0; p < d; ++p) {
    for (int q = 0; q < d; ++q) {
      long double s = 0;
      for (int i = 0; i < n; ++i) {
        s += static_cast<long double>(x(i, p) - mean(p)) * (x(i, q) - mean(q));
      }
      cov(p, q) = static_cast<double>(s / (n - 1));
    }
  }
  return cov;
}

// Singular values and right singular vectors through the Gram matrix x^T x.
struct GramSvd {
  Vec s;
  Mat v;
};

inline GramSvd GramRouteSvd(const Mat& x, int k) {
  const Mat gram = x.transpose() * x;
  Eigenpairs e = PowerEigen(gram, k);
  GramSvd out{Vec(k), e.vectors};
  for (int i = 0; i < k; ++i) out.s(i) = std::sqrt(std::max(0.0, e.values(i)));
  return out;
}

// Fractional ranks by direct counting: 1 + #smaller + (#equal - 1) / 2.
inline std::vector<double> CountingRanks(const std::vector<double>& a) {
  std::vector<double> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    double smaller = 0, equal = 0;
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[j] < a[i]) smaller += 1;
      if (a[j] == a[i]) equal += 1;
    }
    r[i] = 1.0 + smaller + (equal - 1.0) / 2.0;
  }
  return r;
}

inline double PearsonLongDouble(const std::vector<double>& a,
                                const std::vector<double>& b) {
  const std::size_t n = a.size();
  long double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  long double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return static_cast<double>(sab / std::sqrt(saa * sbb));
}

inline double RankThenPearson(const std::vector<double>& a,
                              const std::vector<double>& b) {
  return PearsonLongDouble(CountingRanks(a), CountingRanks(b));
}

// Central differences of f at p, one coordinate at a time.
inline Vec CentralDifference(const std::function<double(const Vec&)>& f,
                             const Vec& p, double h = 1e-5) {
  Vec g(p.size());
  Vec q = p;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    q(i) = p(i) + h;
    const double up = f(q);
    q(i) = p(i) - h;
    const double down = f(q);
    q(i) = p(i);
    g(i) = (up - down) / (2.0 * h);
  }
  return g;
}

// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor).
inline double MaxRelativeError(const Vec& a, const Vec& b,
                               double floor = 1e-8) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double denom = std::max({std::abs(a(i)), std::abs(b(i)), floor});
    worst = std::max(worst, std::abs(a(i) - b(i)) / denom);
  }
  return worst;
}

// Spectral distance between the column spaces of two orthonormal bases.
inline double SubspaceDistance(const Mat& u, const Mat& v) {
  return (u * u.transpose() - v * v.transpose()).norm();
}

// Returns true when columns agree up to a per-column sign within tol.
inline bool EqualUpToColumnSign(const Mat& a, const Mat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double plus = (a.col(j) - b.col(j)).cwiseAbs().maxCoeff();
    const double minus = (a.col(j) + b.col(j)).cwiseAbs().maxCoeff();
    if (std::min(plus, minus) > tol) return false;
  }
  return true;
}

// Gaussian matrix from a generator independent of the library RNG.
inline Mat GaussianMatrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal;
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = normal(gen);
  }
  return m;
}

}  // namespace oracle

#endif  // EMBCOMPRESS_TESTS_SUPPORT_ORACLES_HPP_
