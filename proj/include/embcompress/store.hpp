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

// Embedding and dataset ingestion, persistence and synthetic corpora.
//
// EMB1 layout (all little-endian):
//   bytes 0..3   ASCII "EMB1"
//   bytes 4..7   u32 row count
//   bytes 8..11  u32 column count
//   payload      rows*cols binary32 values, row-major, nothing after.
//
// Values are stored as binary32 and widened to double on load.

#ifndef EMBCOMPRESS_STORE_HPP_
#define EMBCOMPRESS_STORE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "embcompress/common.hpp"

namespace embcompress {

// n sentences by d dimensions. Every entry is finite; dim() >= 1.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() : values_(0, 1) {}
  explicit EmbeddingMatrix(RowMatrix values);

  static EmbeddingMatrix Empty(Index dim);

  Index rows() const { return values_.rows(); }
  Index dim() const { return values_.cols(); }
  const RowMatrix& values() const { return values_; }

  // Row-wise concatenation; both operands must share dim().
  static EmbeddingMatrix Concat(const EmbeddingMatrix& top,
                                const EmbeddingMatrix& bottom);

  EmbeddingMatrix SelectRows(const std::vector<Index>& rows) const;

 private:
  RowMatrix values_;
};

enum class EmbeddingFormat { kEmb1, kTsv };

// Picks kTsv for .tsv/.csv/.txt extensions, kEmb1 otherwise.
EmbeddingFormat GuessEmbeddingFormat(const std::filesystem::path& path);

EmbeddingMatrix ReadEmb1(std::istream& in);
void WriteEmb1(const EmbeddingMatrix& m, std::ostream& out);
// Tab- or comma-delimited, detected from the first line. No header.
EmbeddingMatrix ReadEmbeddingTsv(std::istream& in);

EmbeddingMatrix LoadEmbeddings(const std::filesystem::path& path,
                               EmbeddingFormat format);
EmbeddingMatrix LoadEmbeddings(const std::filesystem::path& path);
void SaveEmbeddings(const EmbeddingMatrix& m,
                    const std::filesystem::path& path);

enum class LabelKind { kSimilarity, kEntailment };

// SICK-E three-way label set.
enum class EntailmentLabel : int {
  kEntailment = 0,
  kContradiction = 1,
  kNeutral = 2,
};
inline constexpr int kNumEntailmentClasses = 3;

std::string_view EntailmentLabelName(EntailmentLabel label);
// Case-insensitive; throws FormatError("unknown class ...") otherwise.
EntailmentLabel ParseEntailmentLabel(std::string_view text);

struct PairRecord {
  Index index_a = 0;
  Index index_b = 0;
  // Similarity score, or the EntailmentLabel id for entailment data.
  double gold = 0.0;

  int label() const { return static_cast<int>(gold); }
};

struct PairDataset {
  LabelKind kind = LabelKind::kSimilarity;
  std::vector<PairRecord> records;

  // Throws PreconditionError if an index falls outside the given row counts.
  void CheckIndices(Index rows_a, Index rows_b) const;
  std::vector<double> Gold() const;
  std::vector<int> Labels() const;
};

PairDataset ReadPairs(std::istream& in, LabelKind kind);
PairDataset LoadPairs(const std::filesystem::path& path, LabelKind kind);
void SavePairs(const PairDataset& pairs, const std::filesystem::path& path);

struct LabeledRecord {
  Index index = 0;
  int label = 0;
};

struct LabeledDataset {
  std::vector<LabeledRecord> records;
  int n_classes = 0;
  // Either the textual names (id = position) or empty for integer labels.
  std::vector<std::string> class_names;

  void CheckIndices(Index rows) const;
  std::vector<int> Labels() const;
  std::vector<Index> Indices() const;
};

// "index<TAB>label" lines. Integer labels are used as class ids directly;
// textual labels are assigned ids in lexicographic order.
LabeledDataset ReadLabels(std::istream& in);
// Maps textual labels onto an existing vocabulary (e.g. the training split's).
LabeledDataset ReadLabels(std::istream& in,
                          const std::vector<std::string>& vocabulary);
LabeledDataset LoadLabels(const std::filesystem::path& path);
LabeledDataset LoadLabels(const std::filesystem::path& path,
                          const std::vector<std::string>& vocabulary);
void SaveLabels(const LabeledDataset& labels,
                const std::filesystem::path& path);

struct SynthSpec {
  Index n = 2000;
  Index dim = 768;
  Index intrinsic = 50;
  double noise_sigma = 0.05;
  std::uint64_t seed = 1;
};

struct SynthCorpus {
  EmbeddingMatrix embeddings;
  // Pair i joins rows 2i and 2i+1; gold is the cosine of the noiseless
  // latent vectors.
  PairDataset pairs;
};

// Latent pairs (z_a, z_b = t*z_a + sqrt(1-t^2)*xi, t ~ U(-1,1)) in
// `intrinsic` dimensions are mapped through a random orthonormal
// dim x intrinsic frame and perturbed with isotropic N(0, sigma^2) noise.
// Draw order from RngStream(seed): frame entries (row-major), then per pair
// t, z_a, xi, noise(a), noise(b).
SynthCorpus SynthesizeCorpus(const SynthSpec& spec);

}  // namespace embcompress

#endif  // EMBCOMPRESS_STORE_HPP_
