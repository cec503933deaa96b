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

// Evaluation maths: cosine similarity, Spearman correlation, pair features
// and an L2-regularised multinomial logistic regression probe.

#ifndef EMBCOMPRESS_PROBE_HPP_
#define EMBCOMPRESS_PROBE_HPP_

#include <span>
#include <vector>

#include "embcompress/common.hpp"

namespace embcompress {

// u.v / (|u| |v|); 0 when either vector has zero norm.
double Cosine(const Eigen::Ref<const Vector>& u,
              const Eigen::Ref<const Vector>& v);
double Cosine(std::span<const double> u, std::span<const double> v);

// 1-based fractional ranks; tied values share the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> values);

double Pearson(std::span<const double> a, std::span<const double> b);

// Pearson correlation of average ranks. Throws PreconditionError on length
// mismatch, fewer than two values, or a constant input.
double Spearman(std::span<const double> a, std::span<const double> b);

// [u * v ; |u - v|], symmetric in its arguments.
Vector PairFeatures(const Eigen::Ref<const Vector>& u,
                    const Eigen::Ref<const Vector>& v);

struct ProbeModel {
  Matrix weights;  // C x f
  Vector bias;     // C
  double l2 = 0.0;

  int num_classes() const { return static_cast<int>(weights.rows()); }
  Index num_features() const { return weights.cols(); }
};

struct ProbeOptions {
  double l2 = 1e-4;
  int max_iterations = 2000;
  double gradient_tolerance = 1e-6;
};

// Mean softmax cross-entropy plus (l2/2) |W|_F^2; the bias is unregularised.
// Fills the gradients when both pointers are non-null.
double ProbeObjective(const ProbeModel& model, const RowMatrix& features,
                      std::span<const int> labels, Matrix* grad_weights,
                      Vector* grad_bias);

// Full-batch gradient descent from zero with Armijo backtracking (step
// halved from at most 1.0) until the gradient infinity-norm falls to the
// tolerance or the iteration budget runs out. Deterministic.
// `objective_trace`, when non-null, receives the objective after every
// accepted step (starting with the value at zero).
ProbeModel FitProbe(const RowMatrix& features, std::span<const int> labels,
                    int num_classes, const ProbeOptions& options = {},
                    std::vector<double>* objective_trace = nullptr);

// Argmax of W z + b per row; the lowest class id wins ties.
std::vector<int> PredictProbe(const ProbeModel& model,
                              const RowMatrix& features);

double Accuracy(std::span<const int> predicted, std::span<const int> gold);

inline constexpr double kDefaultL2Grid[] = {1e-4, 1e-3, 1e-2, 1e-1, 1.0};

// Picks the grid value with the best dev accuracy (first wins ties).
double SelectL2(const RowMatrix& train_features,
                std::span<const int> train_labels,
                const RowMatrix& dev_features, std::span<const int> dev_labels,
                int num_classes, std::span<const double> grid);

}  // namespace embcompress

#endif  // EMBCOMPRESS_PROBE_HPP_
