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

// Unsupervised dimensionality reducers behind one fit/transform contract.
//
// Every reducer maps d-dimensional rows to k = target_dim dimensions:
//
//   pca          U^T (s - mu), U the top-k covariance eigenvectors
//   svd          V_k^T s, V_k the top-k right singular vectors (no centering)
//   kpca         alpha_i^T k~(s) / sqrt(lambda_i) on the centred kernel
//   grp          R^T s, R with i.i.d. N(0, 1/k) entries derived from a seed
//   autoencoder  tanh(W1 (s - mu) + b1), one hidden layer of width k

#ifndef EMBCOMPRESS_REDUCERS_HPP_
#define EMBCOMPRESS_REDUCERS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <variant>
#include <vector>

#include "embcompress/common.hpp"
#include "embcompress/kernels.hpp"
#include "embcompress/store.hpp"

namespace embcompress {

enum class Method : std::uint8_t {
  kPca = 0,
  kSvd = 1,
  kKpca = 2,
  kGrp = 3,
  kAutoencoder = 4,
};

std::string_view MethodName(Method method);
Method ParseMethod(std::string_view name);

enum class AeOptimizer { kAdam, kGradientDescent };

struct AeHyperparams {
  double learning_rate = 1e-3;
  Index batch_size = 256;
  Index epochs = 100;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  // kGradientDescent takes plain steps of size learning_rate; it exists for
  // monotonicity checks of the loss.
  AeOptimizer optimizer = AeOptimizer::kAdam;

  void Validate() const;
};

struct ReducerConfig {
  Method method = Method::kPca;
  Index target_dim = 0;
  std::uint64_t seed = 0;
  KernelSpec kernel;
  AeHyperparams ae;
  // PCA only: divide centred columns by their standard deviation.
  bool standardize = false;
  // KPCA only: added to the kernel diagonal before centring.
  double kpca_jitter = 0.0;
};

struct PcaModel {
  Vector mean;        // d
  Matrix components;  // d x k; orthonormal unless standardize folded scales
  // Covariance eigenvalues of the kept components. Fit diagnostic only;
  // not persisted.
  Vector variances;
};

struct SvdModel {
  Matrix components;  // d x k, right singular vectors
  Vector singular_values;  // diagnostic only; not persisted
};

struct KpcaModel {
  RowMatrix train;     // n x d support points
  KernelSpec kernel;   // gamma resolved
  Vector eigenvalues;  // k, strictly positive, descending
  Matrix alphas;       // n x k, unit-norm eigenvectors of the centred kernel
  Vector row_means;    // n, row means of the training kernel
  double grand_mean = 0.0;
};

struct GrpModel {
  std::uint64_t seed = 0;
  Matrix r;  // d x k
};

struct AutoencoderModel {
  Matrix w1;    // k x d
  Vector b1;    // k
  Matrix w2;    // d x k
  Vector b2;    // d
  Vector mean;  // d, training mean subtracted before encoding
};

class ProjectionModel {
 public:
  using Variant =
      std::variant<PcaModel, SvdModel, KpcaModel, GrpModel, AutoencoderModel>;

  explicit ProjectionModel(Variant model) : model_(std::move(model)) {}

  Method method() const { return static_cast<Method>(model_.index()); }
  Index input_dim() const;
  Index output_dim() const;

  const Variant& variant() const { return model_; }
  template <typename T>
  const T& as() const {
    return std::get<T>(model_);
  }

 private:
  Variant model_;
};

struct TransformOptions {
  // Rows are split across this many threads; 1 runs inline.
  unsigned threads = 1;
};

ProjectionModel Fit(const ReducerConfig& config, const EmbeddingMatrix& x);

EmbeddingMatrix Transform(const ProjectionModel& model,
                          const EmbeddingMatrix& x,
                          const TransformOptions& options = {});

PcaModel FitPca(const EmbeddingMatrix& x, Index k, bool standardize = false);
SvdModel FitSvd(const EmbeddingMatrix& x, Index k);
KpcaModel FitKpca(const EmbeddingMatrix& x, Index k, const KernelSpec& kernel,
                  double jitter = 0.0);
GrpModel FitGrp(Index dim, Index k, std::uint64_t seed);

// Per-step mini-batch losses are appended to `loss_trace` when non-null.
AutoencoderModel FitAutoencoder(const EmbeddingMatrix& x, Index k,
                                const AeHyperparams& ae, std::uint64_t seed,
                                std::vector<double>* loss_trace = nullptr);

// Centred-kernel eigenvalues at or below this fraction of the largest are
// discarded by KPCA.
inline constexpr double kKpcaSpectrumEpsilon = 1e-10;

// Centred kernel K~ = K - 1K/n - K1/n + 1K1/n^2 (1 = all-ones matrix).
Matrix CenterKernel(const Matrix& k);

// Out-of-sample KPCA scores; also used for training rows.
RowMatrix KpcaScores(const KpcaModel& model, const RowMatrix& x);

// Model persistence in PRJ1 format; see model_io.cc for the byte layout.
void WriteModel(const ProjectionModel& model, std::ostream& out);
ProjectionModel ReadModel(std::istream& in);
void SaveModel(const ProjectionModel& model,
               const std::filesystem::path& path);
ProjectionModel LoadModel(const std::filesystem::path& path);

}  // namespace embcompress

#endif  // EMBCOMPRESS_REDUCERS_HPP_
