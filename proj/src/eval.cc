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

#include "embcompress/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace embcompress {

namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Projects `x` (identity when model is null) and accumulates the elapsed time.
EmbeddingMatrix Project(const ProjectionModel* model, const EmbeddingMatrix& x,
                        double& seconds) {
  if (model == nullptr) return x;
  const auto start = Clock::now();
  EmbeddingMatrix out = Transform(*model, x);
  seconds += SecondsSince(start);
  return out;
}

struct FitRows {
  const EmbeddingMatrix* train;
  EmbeddingMatrix test;
};

FitRows RowsForFitting(const TaskInputs& task) {
  return std::visit(
      [](const auto& t) -> FitRows {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, StsTask>) {
          return {&t.train, t.TestRows()};
        } else {
          return {&t.train, t.test};
        }
      },
      task);
}

Index InputDim(const TaskInputs& task) {
  return std::visit([](const auto& t) { return t.train.dim(); }, task);
}

}  // namespace

std::string_view SettingName(Setting setting) {
  return setting == Setting::kInductive ? "inductive" : "transductive";
}

Setting ParseSetting(std::string_view name) {
  if (name == "inductive") return Setting::kInductive;
  if (name == "transductive") return Setting::kTransductive;
  throw PreconditionError("unknown setting \"" + std::string(name) +
                          "\" (expected inductive or transductive)");
}

ProjectionModel FitForSetting(const ReducerConfig& config,
                              const EmbeddingMatrix& train,
                              const EmbeddingMatrix& test, Setting setting) {
  if (train.dim() != test.dim()) {
    throw PreconditionError("train and test dimensions differ (" +
                            std::to_string(train.dim()) + " vs " +
                            std::to_string(test.dim()) + ")");
  }
  if (setting == Setting::kInductive || test.rows() == 0) {
    return Fit(config, train);
  }
  return Fit(config, EmbeddingMatrix::Concat(train, test));
}

EmbeddingMatrix StsTask::TestRows() const {
  if (!test_b) return test_a;
  return EmbeddingMatrix::Concat(test_a, *test_b);
}

std::string_view TaskName(const TaskInputs& task) {
  switch (task.index()) {
    case 0:
      return "sts";
    case 1:
      return "cls";
    default:
      return "nli";
  }
}

double StsSpearman(const EmbeddingMatrix& emb_a, const EmbeddingMatrix& emb_b,
                   const PairDataset& pairs) {
  if (pairs.kind != LabelKind::kSimilarity) {
    throw PreconditionError("STS evaluation needs similarity-score pairs");
  }
  if (emb_a.dim() != emb_b.dim()) {
    throw PreconditionError("STS sides differ in dimension");
  }
  pairs.CheckIndices(emb_a.rows(), emb_b.rows());
  std::vector<double> predicted;
  predicted.reserve(pairs.records.size());
  for (const auto& r : pairs.records) {
    predicted.push_back(Cosine(emb_a.values().row(r.index_a).transpose(),
                               emb_b.values().row(r.index_b).transpose()));
  }
  return Spearman(predicted, pairs.Gold());
}

double ClassificationAccuracy(const EmbeddingMatrix& train,
                              const EmbeddingMatrix& test,
                              const LabeledDataset& train_labels,
                              const LabeledDataset& test_labels,
                              const ProbeOptions& probe) {
  train_labels.CheckIndices(train.rows());
  test_labels.CheckIndices(test.rows());
  const int classes = std::max(train_labels.n_classes, test_labels.n_classes);
  const RowMatrix x_train = train.SelectRows(train_labels.Indices()).values();
  const RowMatrix x_test = test.SelectRows(test_labels.Indices()).values();
  const auto y_train = train_labels.Labels();
  const ProbeModel model = FitProbe(x_train, y_train, classes, probe);
  return Accuracy(PredictProbe(model, x_test), test_labels.Labels());
}

RowMatrix PairFeatureMatrix(const EmbeddingMatrix& emb,
                            const PairDataset& pairs) {
  pairs.CheckIndices(emb.rows(), emb.rows());
  RowMatrix out(static_cast<Index>(pairs.records.size()), 2 * emb.dim());
  for (std::size_t i = 0; i < pairs.records.size(); ++i) {
    const auto& r = pairs.records[i];
    out.row(static_cast<Index>(i)) =
        PairFeatures(emb.values().row(r.index_a).transpose(),
                     emb.values().row(r.index_b).transpose())
            .transpose();
  }
  return out;
}

double EntailmentAccuracy(const EmbeddingMatrix& train,
                          const EmbeddingMatrix& test,
                          const PairDataset& train_pairs,
                          const PairDataset& test_pairs,
                          const ProbeOptions& probe) {
  if (train_pairs.kind != LabelKind::kEntailment ||
      test_pairs.kind != LabelKind::kEntailment) {
    throw PreconditionError("entailment evaluation needs entailment pairs");
  }
  const RowMatrix x_train = PairFeatureMatrix(train, train_pairs);
  const RowMatrix x_test = PairFeatureMatrix(test, test_pairs);
  const auto y_train = train_pairs.Labels();
  const ProbeModel model =
      FitProbe(x_train, y_train, kNumEntailmentClasses, probe);
  return Accuracy(PredictProbe(model, x_test), test_pairs.Labels());
}

ReportRow RunSts(const ProjectionModel* model, const StsTask& task) {
  ReportRow row;
  row.task = "sts";
  row.metric = "spearman";
  const EmbeddingMatrix a = Project(model, task.test_a, row.transform_seconds);
  if (task.test_b) {
    const EmbeddingMatrix b =
        Project(model, *task.test_b, row.transform_seconds);
    row.value = StsSpearman(a, b, task.pairs);
  } else {
    row.value = StsSpearman(a, a, task.pairs);
  }
  return row;
}

ReportRow RunClassification(const ProjectionModel* model,
                            const ClassificationTask& task) {
  ReportRow row;
  row.task = "cls";
  row.metric = "accuracy";
  const EmbeddingMatrix train = Project(model, task.train, row.transform_seconds);
  const EmbeddingMatrix test = Project(model, task.test, row.transform_seconds);
  row.value = ClassificationAccuracy(train, test, task.train_labels,
                                     task.test_labels, task.probe);
  return row;
}

ReportRow RunEntailment(const ProjectionModel* model,
                        const EntailmentTask& task) {
  ReportRow row;
  row.task = "nli";
  row.metric = "accuracy";
  const EmbeddingMatrix train = Project(model, task.train, row.transform_seconds);
  const EmbeddingMatrix test = Project(model, task.test, row.transform_seconds);
  row.value = EntailmentAccuracy(train, test, task.train_pairs,
                                 task.test_pairs, task.probe);
  return row;
}

ReportRow RunTask(const ProjectionModel* model, const TaskInputs& task) {
  return std::visit(
      [&](const auto& t) -> ReportRow {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, StsTask>) {
          return RunSts(model, t);
        } else if constexpr (std::is_same_v<T, ClassificationTask>) {
          return RunClassification(model, t);
        } else {
          return RunEntailment(model, t);
        }
      },
      task);
}

void SweepSpec::Validate(Index input_dim) const {
  if (methods.empty() || dims.empty() || settings.empty() || seeds.empty()) {
    throw PreconditionError(
        "sweep needs at least one method, dim, setting and seed");
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1 || dims[i] > input_dim) {
      throw PreconditionError("sweep dim " + std::to_string(dims[i]) +
                              " outside [1, " + std::to_string(input_dim) +
                              "]");
    }
    if (i > 0 && dims[i] <= dims[i - 1]) {
      throw PreconditionError("sweep dims must be strictly ascending");
    }
  }
}

EvalReport Sweep(const SweepSpec& spec, const TaskInputs& task) {
  const Index input_dim = InputDim(task);
  spec.Validate(input_dim);
  const FitRows rows = RowsForFitting(task);

  EvalReport report;
  ReportRow baseline = RunTask(nullptr, task);
  baseline.method = "baseline";
  baseline.dim = input_dim;
  baseline.setting = "none";
  report.rows.push_back(std::move(baseline));

  for (const Method method : spec.methods) {
    for (const Index dim : spec.dims) {
      for (const Setting setting : spec.settings) {
        for (const std::uint64_t seed : spec.seeds) {
          ReducerConfig config = spec.base;
          config.method = method;
          config.target_dim = dim;
          config.seed = seed;

          ReportRow row;
          try {
            const auto start = Clock::now();
            const ProjectionModel model =
                FitForSetting(config, *rows.train, rows.test, setting);
            const double fit_seconds = SecondsSince(start);
            row = RunTask(&model, task);
            row.fit_seconds = fit_seconds;
          } catch (const Error& e) {
            row = ReportRow{};
            row.task = std::string(TaskName(task));
            row.metric = task.index() == 0 ? "spearman" : "accuracy";
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.error = e.what();
          }
          row.method = std::string(MethodName(method));
          row.dim = dim;
          row.setting = std::string(SettingName(setting));
          row.seed = seed;
          report.rows.push_back(std::move(row));
        }
      }
    }
  }
  report.SortCanonical();
  return report;
}

std::vector<Index> DefaultSweepDims(Index input_dim) {
  static constexpr Index kGrid[] = {16,  32,  64,  128, 150, 200,
                                    300, 384, 512, 640, 768};
  std::vector<Index> dims;
  for (Index d : kGrid) {
    if (d < input_dim) dims.push_back(d);
  }
  dims.push_back(input_dim);
  return dims;
}

}  // namespace embcompress
