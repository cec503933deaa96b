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

// Task orchestration: inductive / transductive fitting, the three task
// runners and metric-versus-dimension sweeps.

#ifndef EMBCOMPRESS_EVAL_HPP_
#define EMBCOMPRESS_EVAL_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "embcompress/probe.hpp"
#include "embcompress/reducers.hpp"
#include "embcompress/report.hpp"
#include "embcompress/store.hpp"

namespace embcompress {

enum class Setting { kInductive, kTransductive };

std::string_view SettingName(Setting setting);
Setting ParseSetting(std::string_view name);

// Inductive fits on `train`; transductive fits on train stacked over test.
// Labels are deliberately not part of this signature.
ProjectionModel FitForSetting(const ReducerConfig& config,
                              const EmbeddingMatrix& train,
                              const EmbeddingMatrix& test, Setting setting);

struct StsTask {
  // Training-side sentences (both sides of the training pairs).
  EmbeddingMatrix train;
  // Test sentences. Pair index_a refers to test_a; index_b refers to test_b
  // when present, otherwise also to test_a.
  EmbeddingMatrix test_a;
  std::optional<EmbeddingMatrix> test_b;
  PairDataset pairs;

  // Every test-side row; the unlabelled half of a transductive fit.
  EmbeddingMatrix TestRows() const;
};

struct ClassificationTask {
  EmbeddingMatrix train;
  EmbeddingMatrix test;
  LabeledDataset train_labels;
  LabeledDataset test_labels;
  ProbeOptions probe;
};

struct EntailmentTask {
  // Premise and hypothesis both index into the same split matrix.
  EmbeddingMatrix train;
  EmbeddingMatrix test;
  PairDataset train_pairs;
  PairDataset test_pairs;
  ProbeOptions probe;
};

using TaskInputs = std::variant<StsTask, ClassificationTask, EntailmentTask>;

std::string_view TaskName(const TaskInputs& task);

// Spearman of per-pair cosines of already-projected embeddings vs gold.
double StsSpearman(const EmbeddingMatrix& emb_a, const EmbeddingMatrix& emb_b,
                   const PairDataset& pairs);
// Probe accuracy on already-projected embeddings.
double ClassificationAccuracy(const EmbeddingMatrix& train,
                              const EmbeddingMatrix& test,
                              const LabeledDataset& train_labels,
                              const LabeledDataset& test_labels,
                              const ProbeOptions& probe = {});
double EntailmentAccuracy(const EmbeddingMatrix& train,
                          const EmbeddingMatrix& test,
                          const PairDataset& train_pairs,
                          const PairDataset& test_pairs,
                          const ProbeOptions& probe = {});

// Feature matrix of PairFeatures(u, v) for every record.
RowMatrix PairFeatureMatrix(const EmbeddingMatrix& emb,
                            const PairDataset& pairs);

// Task runners. A null model evaluates the untransformed embeddings
// (identity baseline). Only task, metric, value and transform_seconds are
// filled in; callers stamp method/dim/setting/seed/fit_seconds.
ReportRow RunSts(const ProjectionModel* model, const StsTask& task);
ReportRow RunClassification(const ProjectionModel* model,
                            const ClassificationTask& task);
ReportRow RunEntailment(const ProjectionModel* model,
                        const EntailmentTask& task);
ReportRow RunTask(const ProjectionModel* model, const TaskInputs& task);

struct SweepSpec {
  std::vector<Method> methods;
  std::vector<Index> dims;  // ascending
  std::vector<Setting> settings;
  std::vector<std::uint64_t> seeds;
  // Kernel, autoencoder and PCA options shared by every cell.
  ReducerConfig base;

  void Validate(Index input_dim) const;
};

// One row per (method, dim, setting, seed) plus one baseline row. A cell
// that throws is recorded with its error message instead of aborting.
EvalReport Sweep(const SweepSpec& spec, const TaskInputs& task);

// Default dimension grid, clipped to `input_dim` (which is always included).
std::vector<Index> DefaultSweepDims(Index input_dim);

}  // namespace embcompress

#endif  // EMBCOMPRESS_EVAL_HPP_
