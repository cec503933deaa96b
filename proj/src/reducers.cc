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

#include "embcompress/reducers.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "embcompress/linalg.hpp"
#include "embcompress/rng.hpp"

namespace embcompress {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckTargetDim(Index k, Index dim) {
  if (k < 1) throw PreconditionError("target_dim must be at least 1");
  if (k > dim) {
    throw PreconditionError("target_dim " + std::to_string(k) +
                            " exceeds input dim " + std::to_string(dim));
  }
}

void CheckRows(const EmbeddingMatrix& x, std::string_view method) {
  if (x.rows() < 2) {
    throw PreconditionError(std::string(method) +
                            " needs at least 2 training rows, got " +
                            std::to_string(x.rows()));
  }
}

// Covariance-style Gram matrix a^T a, exactly symmetric.
Matrix SymmetricGram(const RowMatrix& a) {
  Matrix g = Matrix::Zero(a.cols(), a.cols());
  g.selfadjointView<Eigen::Lower>().rankUpdate(a.transpose());
  g.triangularView<Eigen::StrictlyUpper>() = g.transpose();
  return g;
}

void CenterKernelInPlace(Matrix& k) {
  const Index n = k.rows();
  if (n == 0) return;
  const Vector row_means = k.rowwise().mean();
  const Vector col_means = k.colwise().mean().transpose();
  const double grand = row_means.mean();
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      k(i, j) += grand - row_means(i) - col_means(j);
    }
  }
}

RowMatrix TransformRows(const ProjectionModel& model, const RowMatrix& x) {
  return std::visit(
      Overloaded{
          [&](const PcaModel& m) -> RowMatrix {
            return (x.rowwise() - m.mean.transpose()) * m.components;
          },
          [&](const SvdModel& m) -> RowMatrix { return x * m.components; },
          [&](const KpcaModel& m) -> RowMatrix { return KpcaScores(m, x); },
          [&](const GrpModel& m) -> RowMatrix { return x * m.r; },
          [&](const AutoencoderModel& m) -> RowMatrix {
            RowMatrix z = (x.rowwise() - m.mean.transpose()) * m.w1.transpose();
            z.rowwise() += m.b1.transpose();
            return z.array().tanh().matrix();
          },
      },
      model.variant());
}

}  // namespace

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kPca:
      return "pca";
    case Method::kSvd:
      return "svd";
    case Method::kKpca:
      return "kpca";
    case Method::kGrp:
      return "grp";
    case Method::kAutoencoder:
      return "autoencoder";
  }
  return "?";
}

Method ParseMethod(std::string_view name) {
  if (name == "ae") return Method::kAutoencoder;
  for (auto m : {Method::kPca, Method::kSvd, Method::kKpca, Method::kGrp,
                 Method::kAutoencoder}) {
    if (name == MethodName(m)) return m;
  }
  throw PreconditionError("unknown method \"" + std::string(name) +
                          "\" (expected pca, svd, kpca, grp or autoencoder)");
}

void AeHyperparams::Validate() const {
  if (!(learning_rate > 0.0) || batch_size < 1 || epochs < 1 ||
      !(adam_beta1 > 0.0) || !(adam_beta2 > 0.0) || !(adam_eps > 0.0) ||
      adam_beta1 >= 1.0 || adam_beta2 >= 1.0) {
    throw PreconditionError(
        "autoencoder hyperparameters must be positive (betas below 1, "
        "epochs >= 1)");
  }
}

Index ProjectionModel::input_dim() const {
  return std::visit(
      Overloaded{
          [](const PcaModel& m) { return m.components.rows(); },
          [](const SvdModel& m) { return m.components.rows(); },
          [](const KpcaModel& m) { return m.train.cols(); },
          [](const GrpModel& m) { return m.r.rows(); },
          [](const AutoencoderModel& m) { return m.w1.cols(); },
      },
      model_);
}

Index ProjectionModel::output_dim() const {
  return std::visit(
      Overloaded{
          [](const PcaModel& m) { return m.components.cols(); },
          [](const SvdModel& m) { return m.components.cols(); },
          [](const KpcaModel& m) { return m.alphas.cols(); },
          [](const GrpModel& m) { return m.r.cols(); },
          [](const AutoencoderModel& m) { return m.w1.rows(); },
      },
      model_);
}

ProjectionModel Fit(const ReducerConfig& config, const EmbeddingMatrix& x) {
  const Index k = config.target_dim;
  switch (config.method) {
    case Method::kPca:
      return ProjectionModel(FitPca(x, k, config.standardize));
    case Method::kSvd:
      return ProjectionModel(FitSvd(x, k));
    case Method::kKpca:
      return ProjectionModel(FitKpca(x, k, config.kernel, config.kpca_jitter));
    case Method::kGrp:
      return ProjectionModel(FitGrp(x.dim(), k, config.seed));
    case Method::kAutoencoder:
      return ProjectionModel(FitAutoencoder(x, k, config.ae, config.seed));
  }
  throw PreconditionError("unknown method");
}

EmbeddingMatrix Transform(const ProjectionModel& model,
                          const EmbeddingMatrix& x,
                          const TransformOptions& options) {
  if (x.dim() != model.input_dim()) {
    throw PreconditionError("dimension mismatch: model expects " +
                            std::to_string(model.input_dim()) +
                            "-dimensional rows, input has " +
                            std::to_string(x.dim()));
  }
  const Index n = x.rows();
  const Index threads =
      std::clamp<Index>(static_cast<Index>(options.threads), 1,
                        std::max<Index>(1, n));
  if (threads == 1) {
    return EmbeddingMatrix(TransformRows(model, x.values()));
  }

  RowMatrix out(n, model.output_dim());
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  const Index chunk = (n + threads - 1) / threads;
  for (Index t = 0; t < threads; ++t) {
    const Index begin = t * chunk;
    const Index rows = std::min(chunk, n - begin);
    if (rows <= 0) break;
    workers.emplace_back([&, t, begin, rows] {
      try {
        out.middleRows(begin, rows) =
            TransformRows(model, x.values().middleRows(begin, rows));
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return EmbeddingMatrix(std::move(out));
}

PcaModel FitPca(const EmbeddingMatrix& x, Index k, bool standardize) {
  CheckTargetDim(k, x.dim());
  CheckRows(x, "pca");
  const Index n = x.rows();

  PcaModel model;
  model.mean = x.values().colwise().mean().transpose();
  RowMatrix centered = x.values().rowwise() - model.mean.transpose();

  Vector scale = Vector::Ones(x.dim());
  if (standardize) {
    const Vector sq = centered.colwise().squaredNorm().transpose();
    for (Index j = 0; j < x.dim(); ++j) {
      const double sd = std::sqrt(sq(j) / static_cast<double>(n - 1));
      if (sd > 0.0) scale(j) = sd;
    }
    centered = centered * scale.cwiseInverse().asDiagonal();
  }

  Matrix cov = SymmetricGram(centered) / static_cast<double>(n - 1);
  SpectralDecomposition eig = SymmetricEigh(cov, k);
  model.components = scale.cwiseInverse().asDiagonal() * eig.vectors;
  model.variances = std::move(eig.values);
  return model;
}

SvdModel FitSvd(const EmbeddingMatrix& x, Index k) {
  CheckTargetDim(k, x.dim());
  CheckRows(x, "svd");
  if (k > x.rows()) {
    throw PreconditionError("target_dim exceeds sample count");
  }
  ThinSvd svd = TruncatedSvd(Matrix(x.values()), k);
  SvdModel model;
  model.components = svd.vt.transpose();
  model.singular_values = std::move(svd.s);
  return model;
}

Matrix CenterKernel(const Matrix& k) {
  if (k.rows() != k.cols()) throw PreconditionError("kernel must be square");
  Matrix out = k;
  CenterKernelInPlace(out);
  return out;
}

KpcaModel FitKpca(const EmbeddingMatrix& x, Index k, const KernelSpec& kernel,
                  double jitter) {
  CheckRows(x, "kpca");
  if (k > x.rows()) {
    throw PreconditionError("target_dim exceeds sample count");
  }
  CheckTargetDim(k, x.dim());
  if (!(jitter >= 0.0)) throw PreconditionError("jitter must be >= 0");

  KpcaModel model;
  model.kernel = kernel.Resolved(x.dim());
  model.train = x.values();

  Matrix gram = KernelMatrix(model.kernel, model.train, model.train);
  gram = 0.5 * (gram + gram.transpose());
  model.row_means = gram.rowwise().mean();
  model.grand_mean = model.row_means.mean();

  gram.diagonal().array() += jitter;
  CenterKernelInPlace(gram);
  SpectralDecomposition eig = SymmetricEigh(gram, k);
  gram.resize(0, 0);

  const double top = eig.values(0);
  const double floor = kKpcaSpectrumEpsilon * top;
  Index positive = 0;
  while (positive < k && top > 0.0 && eig.values(positive) > floor) {
    ++positive;
  }
  if (positive < k) {
    throw NumericalError("insufficient positive spectrum: " +
                         std::to_string(positive) +
                         " numerically positive eigenvalues of the centred "
                         "kernel, target_dim " +
                         std::to_string(k));
  }
  model.eigenvalues = std::move(eig.values);
  model.alphas = std::move(eig.vectors);
  return model;
}

RowMatrix KpcaScores(const KpcaModel& model, const RowMatrix& x) {
  if (x.cols() != model.train.cols()) {
    throw PreconditionError("dimension mismatch in KPCA transform");
  }
  Matrix cross = KernelMatrix(model.kernel, x, model.train);
  const Vector cross_means = cross.rowwise().mean();
  cross.colwise() -= cross_means;
  cross.rowwise() -= model.row_means.transpose();
  cross.array() += model.grand_mean;
  const Vector inv_sqrt = model.eigenvalues.cwiseSqrt().cwiseInverse();
  return cross * model.alphas * inv_sqrt.asDiagonal();
}

GrpModel FitGrp(Index dim, Index k, std::uint64_t seed) {
  CheckTargetDim(k, dim);
  RngStream rng(seed);
  GrpModel model;
  model.seed = seed;
  model.r = rng.NormalMatrix(dim, k, 1.0 / std::sqrt(static_cast<double>(k)));
  return model;
}

}  // namespace embcompress
