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

#include "embcompress/autoencoder.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace embcompress {

namespace {

// First and second moment estimates for one parameter block.
template <typename T>
struct AdamSlot {
  T m;
  T v;
};

template <typename T>
void AdamStep(T& param, const T& grad, AdamSlot<T>& slot,
              const AeHyperparams& ae, double bias1, double bias2) {
  slot.m = ae.adam_beta1 * slot.m + (1.0 - ae.adam_beta1) * grad;
  slot.v = ae.adam_beta2 * slot.v +
           (1.0 - ae.adam_beta2) * grad.cwiseProduct(grad);
  const double step = ae.learning_rate * std::sqrt(bias2) / bias1;
  // eps is applied to the bias-corrected second moment.
  param.array() -= step * slot.m.array() /
                   (slot.v.array().sqrt() + ae.adam_eps * std::sqrt(bias2));
}

}  // namespace

AeParams AeParams::Zeros(Index dim, Index k) {
  return {Matrix::Zero(k, dim), Vector::Zero(k), Matrix::Zero(dim, k),
          Vector::Zero(dim)};
}

AeParams AeParams::GlorotInit(Index dim, Index k, RngStream& rng) {
  AeParams p = Zeros(dim, k);
  const double limit = std::sqrt(6.0 / static_cast<double>(dim + k));
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < dim; ++j) p.w1(i, j) = rng.Uniform(-limit, limit);
  }
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < k; ++j) p.w2(i, j) = rng.Uniform(-limit, limit);
  }
  return p;
}

double AutoencoderLoss(const AeParams& params, const RowMatrix& batch,
                       AeParams* grad) {
  const Index rows = batch.rows();
  if (rows == 0) throw PreconditionError("empty autoencoder batch");
  const double count = static_cast<double>(rows * batch.cols());

  RowMatrix hidden = batch * params.w1.transpose();
  hidden.rowwise() += params.b1.transpose();
  hidden = hidden.array().tanh().matrix();

  RowMatrix residual = hidden * params.w2.transpose();
  residual.rowwise() += params.b2.transpose();
  residual -= batch;
  const double loss = residual.squaredNorm() / count;
  if (grad == nullptr) return loss;

  residual *= 2.0 / count;  // d loss / d reconstruction
  grad->w2.noalias() = residual.transpose() * hidden;
  grad->b2 = residual.colwise().sum().transpose();
  RowMatrix pre = residual * params.w2;
  pre.array() *= 1.0 - hidden.array().square();
  grad->w1.noalias() = pre.transpose() * batch;
  grad->b1 = pre.colwise().sum().transpose();
  return loss;
}

AutoencoderModel FitAutoencoder(const EmbeddingMatrix& x, Index k,
                                const AeHyperparams& ae, std::uint64_t seed,
                                std::vector<double>* loss_trace) {
  if (k < 1 || k > x.dim()) {
    throw PreconditionError("target_dim " + std::to_string(k) +
                            " out of range for input dim " +
                            std::to_string(x.dim()));
  }
  if (x.rows() < 2) {
    throw PreconditionError("autoencoder needs at least 2 training rows, got " +
                            std::to_string(x.rows()));
  }
  ae.Validate();

  const Index n = x.rows();
  const Index d = x.dim();
  const Vector mean = x.values().colwise().mean().transpose();
  const RowMatrix centered = x.values().rowwise() - mean.transpose();

  RngStream rng(seed);
  AeParams params = AeParams::GlorotInit(d, k, rng);
  AeParams grad = AeParams::Zeros(d, k);
  AdamSlot<Matrix> w1_slot{Matrix::Zero(k, d), Matrix::Zero(k, d)};
  AdamSlot<Vector> b1_slot{Vector::Zero(k), Vector::Zero(k)};
  AdamSlot<Matrix> w2_slot{Matrix::Zero(d, k), Matrix::Zero(d, k)};
  AdamSlot<Vector> b2_slot{Vector::Zero(d), Vector::Zero(d)};

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const Index batch_size = std::min(ae.batch_size, n);
  RowMatrix batch(batch_size, d);
  std::int64_t step = 0;

  for (Index epoch = 0; epoch < ae.epochs; ++epoch) {
    rng.Shuffle(order);
    for (Index start = 0; start < n; start += batch_size) {
      const Index rows = std::min(batch_size, n - start);
      if (batch.rows() != rows) batch.resize(rows, d);
      for (Index i = 0; i < rows; ++i) {
        batch.row(i) = centered.row(order[static_cast<std::size_t>(start + i)]);
      }
      const double loss = AutoencoderLoss(params, batch, &grad);
      if (!std::isfinite(loss) || !grad.w1.allFinite() ||
          !grad.w2.allFinite()) {
        throw NumericalError("autoencoder diverged: non-finite loss at epoch " +
                             std::to_string(epoch) + ", step " +
                             std::to_string(step) +
                             "; lower the learning rate or standardise inputs");
      }
      if (loss_trace != nullptr) loss_trace->push_back(loss);
      ++step;

      if (ae.optimizer == AeOptimizer::kGradientDescent) {
        params.w1 -= ae.learning_rate * grad.w1;
        params.b1 -= ae.learning_rate * grad.b1;
        params.w2 -= ae.learning_rate * grad.w2;
        params.b2 -= ae.learning_rate * grad.b2;
        continue;
      }
      const double t = static_cast<double>(step);
      const double bias1 = 1.0 - std::pow(ae.adam_beta1, t);
      const double bias2 = 1.0 - std::pow(ae.adam_beta2, t);
      AdamStep(params.w1, grad.w1, w1_slot, ae, bias1, bias2);
      AdamStep(params.b1, grad.b1, b1_slot, ae, bias1, bias2);
      AdamStep(params.w2, grad.w2, w2_slot, ae, bias1, bias2);
      AdamStep(params.b2, grad.b2, b2_slot, ae, bias1, bias2);
    }
  }

  return {std::move(params.w1), std::move(params.b1), std::move(params.w2),
          std::move(params.b2), mean};
}

}  // namespace embcompress
