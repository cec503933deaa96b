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

#include "embcompress/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace embcompress {

namespace {

// Armijo sufficient-decrease constant.
constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-20;

void CheckSameLength(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw PreconditionError(std::string(what) + ": length mismatch (" +
                            std::to_string(a) + " vs " + std::to_string(b) +
                            ")");
  }
}

void CheckLabels(const RowMatrix& features, std::span<const int> labels,
                 int num_classes) {
  CheckSameLength(static_cast<std::size_t>(features.rows()), labels.size(),
                  "probe labels");
  if (num_classes < 2) {
    throw PreconditionError("probe needs at least 2 classes");
  }
  for (int y : labels) {
    if (y < 0 || y >= num_classes) {
      throw PreconditionError("label " + std::to_string(y) +
                              " outside [0, " + std::to_string(num_classes) +
                              ")");
    }
  }
}

}  // namespace

double Cosine(const Eigen::Ref<const Vector>& u,
              const Eigen::Ref<const Vector>& v) {
  if (u.size() != v.size()) {
    throw PreconditionError("cosine: dimension mismatch");
  }
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

double Cosine(std::span<const double> u, std::span<const double> v) {
  CheckSameLength(u.size(), v.size(), "cosine");
  const Eigen::Map<const Vector> mu(u.data(), static_cast<Index>(u.size()));
  const Eigen::Map<const Vector> mv(v.data(), static_cast<Index>(v.size()));
  return Cosine(mu, mv);
}

std::vector<double> AverageRanks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a,
                                                   std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 (0-based) share rank mean(i+1 .. j).
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t t = i; t < j; ++t) ranks[order[t]] = rank;
    i = j;
  }
  return ranks;
}

double Pearson(std::span<const double> a, std::span<const double> b) {
  CheckSameLength(a.size(), b.size(), "pearson");
  if (a.size() < 2) throw PreconditionError("pearson needs at least 2 values");
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) {
    throw PreconditionError("correlation undefined for a constant vector");
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

double Spearman(std::span<const double> a, std::span<const double> b) {
  CheckSameLength(a.size(), b.size(), "spearman");
  if (a.size() < 2) throw PreconditionError("spearman needs at least 2 values");
  const auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(),
                       [&](double x) { return x == v.front(); });
  };
  if (constant(a) || constant(b)) {
    throw PreconditionError("spearman undefined for a constant vector");
  }
  const auto ra = AverageRanks(a);
  const auto rb = AverageRanks(b);
  return Pearson(ra, rb);
}

Vector PairFeatures(const Eigen::Ref<const Vector>& u,
                    const Eigen::Ref<const Vector>& v) {
  if (u.size() != v.size()) {
    throw PreconditionError("pair features: dimension mismatch");
  }
  Vector out(2 * u.size());
  out.head(u.size()) = u.cwiseProduct(v);
  out.tail(u.size()) = (u - v).cwiseAbs();
  return out;
}

double ProbeObjective(const ProbeModel& model, const RowMatrix& features,
                      std::span<const int> labels, Matrix* grad_weights,
                      Vector* grad_bias) {
  const Index n = features.rows();
  if (n == 0) throw PreconditionError("probe objective on empty data");
  if (features.cols() != model.num_features()) {
    throw PreconditionError("probe feature dimension mismatch");
  }
  RowMatrix logits = features * model.weights.transpose();
  logits.rowwise() += model.bias.transpose();

  double loss = 0.0;
  for (Index i = 0; i < n; ++i) {
    auto row = logits.row(i);
    const int y = labels[static_cast<std::size_t>(i)];
    const double peak = row.maxCoeff();
    const double shifted_y = row(y) - peak;
    row.array() = (row.array() - peak).exp();
    const double total = row.sum();
    loss += std::log(total) - shifted_y;
    row /= total;  // softmax probabilities
    row(y) -= 1.0;
  }
  loss /= static_cast<double>(n);
  loss += 0.5 * model.l2 * model.weights.squaredNorm();

  if (grad_weights != nullptr && grad_bias != nullptr) {
    *grad_weights = logits.transpose() * features / static_cast<double>(n) +
                    model.l2 * model.weights;
    *grad_bias = logits.colwise().sum().transpose() / static_cast<double>(n);
  }
  return loss;
}

ProbeModel FitProbe(const RowMatrix& features, std::span<const int> labels,
                    int num_classes, const ProbeOptions& options,
                    std::vector<double>* objective_trace) {
  CheckLabels(features, labels, num_classes);
  if (features.rows() < num_classes) {
    throw PreconditionError("probe needs at least as many rows as classes");
  }
  const std::set<int> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) {
    throw PreconditionError("degenerate label set: fewer than 2 classes "
                            "present");
  }
  if (!(options.l2 >= 0.0)) throw PreconditionError("l2 must be >= 0");

  ProbeModel model;
  model.weights = Matrix::Zero(num_classes, features.cols());
  model.bias = Vector::Zero(num_classes);
  model.l2 = options.l2;

  Matrix gw;
  Vector gb;
  double objective = ProbeObjective(model, features, labels, &gw, &gb);
  if (objective_trace != nullptr) objective_trace->push_back(objective);

  ProbeModel trial = model;
  double step = 1.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double grad_inf =
        std::max(gw.cwiseAbs().maxCoeff(), gb.cwiseAbs().maxCoeff());
    if (grad_inf <= options.gradient_tolerance) break;
    const double grad_sq = gw.squaredNorm() + gb.squaredNorm();

    step = std::min(1.0, 2.0 * step);
    double next = 0.0;
    while (true) {
      trial.weights = model.weights - step * gw;
      trial.bias = model.bias - step * gb;
      next = ProbeObjective(trial, features, labels, nullptr, nullptr);
      if (next <= objective - kArmijo * step * grad_sq) break;
      step *= 0.5;
      if (step < kMinStep) break;
    }
    if (step < kMinStep) break;

    std::swap(model, trial);
    objective = ProbeObjective(model, features, labels, &gw, &gb);
    if (objective_trace != nullptr) objective_trace->push_back(objective);
  }
  return model;
}

std::vector<int> PredictProbe(const ProbeModel& model,
                              const RowMatrix& features) {
  if (features.cols() != model.num_features()) {
    throw PreconditionError("probe feature dimension mismatch: model has " +
                            std::to_string(model.num_features()) +
                            ", input has " + std::to_string(features.cols()));
  }
  RowMatrix logits = features * model.weights.transpose();
  logits.rowwise() += model.bias.transpose();
  std::vector<int> out(static_cast<std::size_t>(features.rows()));
  for (Index i = 0; i < logits.rows(); ++i) {
    int best = 0;
    for (int c = 1; c < logits.cols(); ++c) {
      if (logits(i, c) > logits(i, best)) best = c;
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return out;
}

double Accuracy(std::span<const int> predicted, std::span<const int> gold) {
  CheckSameLength(predicted.size(), gold.size(), "accuracy");
  if (gold.empty()) throw PreconditionError("accuracy of an empty set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) hits += predicted[i] == gold[i];
  return static_cast<double>(hits) / static_cast<double>(gold.size());
}

double SelectL2(const RowMatrix& train_features,
                std::span<const int> train_labels,
                const RowMatrix& dev_features, std::span<const int> dev_labels,
                int num_classes, std::span<const double> grid) {
  if (grid.empty()) throw PreconditionError("empty l2 grid");
  double best_l2 = grid.front();
  double best_acc = -1.0;
  for (double l2 : grid) {
    ProbeOptions options;
    options.l2 = l2;
    const ProbeModel model =
        FitProbe(train_features, train_labels, num_classes, options);
    const double acc = Accuracy(PredictProbe(model, dev_features), dev_labels);
    if (acc > best_acc) {
      best_acc = acc;
      best_l2 = l2;
    }
  }
  return best_l2;
}

}  // namespace embcompress
