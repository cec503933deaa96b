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

#include "embcompress/store.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "binary_io.hpp"
#include "embcompress/rng.hpp"

namespace embcompress {

namespace {

constexpr char kEmb1Magic[] = "EMB1";

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view Trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> Split(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(Trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool ParseDouble(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

bool ParseIndex(std::string_view text, Index& out) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || v < 0) return false;
  out = static_cast<Index>(v);
  return true;
}

std::ifstream OpenIn(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream OpenOut(const std::filesystem::path& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc
                                 : std::ios::out | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void CloseOut(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

// Rethrows with the file name prefixed.
template <typename F>
auto WithPath(const std::filesystem::path& path, F&& f) {
  try {
    return f();
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(RowMatrix values) : values_(std::move(values)) {
  if (values_.cols() < 1) {
    throw PreconditionError("embedding dimension must be at least 1");
  }
  for (Index i = 0; i < values_.rows(); ++i) {
    for (Index j = 0; j < values_.cols(); ++j) {
      if (!std::isfinite(values_(i, j))) {
        throw FormatError("non-finite value at row " + std::to_string(i) +
                          ", column " + std::to_string(j));
      }
    }
  }
}

EmbeddingMatrix EmbeddingMatrix::Empty(Index dim) {
  return EmbeddingMatrix(RowMatrix(0, dim));
}

EmbeddingMatrix EmbeddingMatrix::Concat(const EmbeddingMatrix& top,
                                        const EmbeddingMatrix& bottom) {
  if (top.dim() != bottom.dim()) {
    throw PreconditionError("cannot stack matrices of dim " +
                            std::to_string(top.dim()) + " and " +
                            std::to_string(bottom.dim()));
  }
  RowMatrix out(top.rows() + bottom.rows(), top.dim());
  out.topRows(top.rows()) = top.values();
  out.bottomRows(bottom.rows()) = bottom.values();
  EmbeddingMatrix m;
  m.values_ = std::move(out);
  return m;
}

EmbeddingMatrix EmbeddingMatrix::SelectRows(
    const std::vector<Index>& rows) const {
  RowMatrix out(static_cast<Index>(rows.size()), dim());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0 || rows[i] >= this->rows()) {
      throw PreconditionError("row index " + std::to_string(rows[i]) +
                              " out of range");
    }
    out.row(static_cast<Index>(i)) = values_.row(rows[i]);
  }
  EmbeddingMatrix m;
  m.values_ = std::move(out);
  return m;
}

EmbeddingFormat GuessEmbeddingFormat(const std::filesystem::path& path) {
  const auto ext = Lower(path.extension().string());
  if (ext == ".tsv" || ext == ".csv" || ext == ".txt") {
    return EmbeddingFormat::kTsv;
  }
  return EmbeddingFormat::kEmb1;
}

EmbeddingMatrix ReadEmb1(std::istream& in) {
  internal::LeReader reader(in);
  const std::string magic = reader.Bytes(4);
  if (magic != kEmb1Magic) {
    throw FormatError("bad magic at byte 0: expected \"EMB1\"");
  }
  const std::uint32_t rows = reader.U32();
  const std::uint32_t cols = reader.U32();
  if (cols == 0) throw FormatError("column count at byte 8 must be >= 1");

  const std::uint64_t count = std::uint64_t{rows} * cols;
  const std::uint64_t payload = count * 4;
  // Check the declared size against what is left before allocating.
  const auto here = in.tellg();
  if (here != std::streampos(-1)) {
    in.seekg(0, std::ios::end);
    const auto end = in.tellg();
    in.seekg(here);
    const auto remaining = static_cast<std::uint64_t>(end - here);
    if (remaining < payload) {
      throw FormatError("truncated payload: header declares " +
                        std::to_string(rows) + "x" + std::to_string(cols) +
                        " values (" + std::to_string(payload) +
                        " bytes) but only " + std::to_string(remaining) +
                        " bytes follow byte 12");
    }
    if (remaining > payload) {
      throw FormatError("unexpected trailing bytes after byte " +
                        std::to_string(12 + payload));
    }
  }

  std::vector<unsigned char> buf(payload);
  in.read(reinterpret_cast<char*>(buf.data()),
          static_cast<std::streamsize>(payload));
  if (static_cast<std::uint64_t>(in.gcount()) != payload) {
    throw FormatError("truncated payload: expected " +
                      std::to_string(payload) + " bytes after byte 12, got " +
                      std::to_string(in.gcount()));
  }
  reader.ExpectEnd();

  RowMatrix values(rows, cols);
  double* dst = values.data();
  for (std::uint64_t i = 0; i < count; ++i) {
    const unsigned char* b = buf.data() + 4 * i;
    const std::uint32_t bits = std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 |
                               std::uint32_t{b[2]} << 16 |
                               std::uint32_t{b[3]} << 24;
    const float f = std::bit_cast<float>(bits);
    if (!std::isfinite(f)) {
      throw FormatError("non-finite value at byte " +
                        std::to_string(12 + 4 * i) + " (row " +
                        std::to_string(i / cols) + ")");
    }
    dst[i] = static_cast<double>(f);
  }
  return EmbeddingMatrix(std::move(values));
}

void WriteEmb1(const EmbeddingMatrix& m, std::ostream& out) {
  if (m.rows() > std::numeric_limits<std::uint32_t>::max() ||
      m.dim() > std::numeric_limits<std::uint32_t>::max()) {
    throw PreconditionError("matrix too large for EMB1");
  }
  internal::LeWriter writer(out);
  writer.Bytes(kEmb1Magic);
  writer.U32(static_cast<std::uint32_t>(m.rows()));
  writer.U32(static_cast<std::uint32_t>(m.dim()));
  const RowMatrix& v = m.values();
  for (Index i = 0; i < v.rows(); ++i) {
    for (Index j = 0; j < v.cols(); ++j) {
      writer.F32(static_cast<float>(v(i, j)));
    }
  }
}

EmbeddingMatrix ReadEmbeddingTsv(std::istream& in) {
  std::vector<double> values;
  Index cols = -1;
  Index rows = 0;
  char delim = '\t';
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty()) continue;
    if (cols < 0) {
      delim = trimmed.find('\t') == std::string_view::npos &&
                      trimmed.find(',') != std::string_view::npos
                  ? ','
                  : '\t';
    }
    const auto fields = Split(trimmed, delim);
    if (cols < 0) {
      cols = static_cast<Index>(fields.size());
    } else if (static_cast<Index>(fields.size()) != cols) {
      throw FormatError("ragged row at line " + std::to_string(line_no) +
                        ": expected " + std::to_string(cols) +
                        " fields, got " + std::to_string(fields.size()));
    }
    for (std::size_t j = 0; j < fields.size(); ++j) {
      double v = 0.0;
      if (!ParseDouble(fields[j], v)) {
        throw FormatError("unparseable number at line " +
                          std::to_string(line_no) + ", field " +
                          std::to_string(j + 1));
      }
      if (!std::isfinite(v)) {
        throw FormatError("non-finite value at line " +
                          std::to_string(line_no) + ", field " +
                          std::to_string(j + 1));
      }
      values.push_back(v);
    }
    ++rows;
  }
  if (cols < 0) throw FormatError("empty TSV: dimension cannot be inferred");
  RowMatrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.data());
  return EmbeddingMatrix(std::move(m));
}

EmbeddingMatrix LoadEmbeddings(const std::filesystem::path& path,
                               EmbeddingFormat format) {
  auto in = OpenIn(path, format == EmbeddingFormat::kEmb1);
  return WithPath(path, [&] {
    return format == EmbeddingFormat::kEmb1 ? ReadEmb1(in)
                                            : ReadEmbeddingTsv(in);
  });
}

EmbeddingMatrix LoadEmbeddings(const std::filesystem::path& path) {
  return LoadEmbeddings(path, GuessEmbeddingFormat(path));
}

void SaveEmbeddings(const EmbeddingMatrix& m,
                    const std::filesystem::path& path) {
  auto out = OpenOut(path, true);
  WriteEmb1(m, out);
  CloseOut(out, path);
}

std::string_view EntailmentLabelName(EntailmentLabel label) {
  switch (label) {
    case EntailmentLabel::kEntailment:
      return "entailment";
    case EntailmentLabel::kContradiction:
      return "contradiction";
    case EntailmentLabel::kNeutral:
      return "neutral";
  }
  return "?";
}

EntailmentLabel ParseEntailmentLabel(std::string_view text) {
  const auto lower = Lower(Trim(text));
  for (int id = 0; id < kNumEntailmentClasses; ++id) {
    const auto label = static_cast<EntailmentLabel>(id);
    if (lower == EntailmentLabelName(label)) return label;
  }
  throw FormatError("unknown class \"" + std::string(text) + "\"");
}

void PairDataset::CheckIndices(Index rows_a, Index rows_b) const {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.index_a >= rows_a || r.index_b >= rows_b) {
      throw PreconditionError(
          "pair " + std::to_string(i) + " references rows (" +
          std::to_string(r.index_a) + ", " + std::to_string(r.index_b) +
          ") outside matrices of " + std::to_string(rows_a) + " and " +
          std::to_string(rows_b) + " rows");
    }
  }
}

std::vector<double> PairDataset::Gold() const {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.gold);
  return out;
}

std::vector<int> PairDataset::Labels() const {
  std::vector<int> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.label());
  return out;
}

PairDataset ReadPairs(std::istream& in, LabelKind kind) {
  PairDataset out;
  out.kind = kind;
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const auto fields = Split(trimmed, '\t');
    if (fields.size() != 3) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": expected 3 tab-separated fields, got " +
                        std::to_string(fields.size()));
    }
    PairRecord rec;
    if (!ParseIndex(fields[0], rec.index_a) ||
        !ParseIndex(fields[1], rec.index_b)) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": row indices must be non-negative integers");
    }
    if (kind == LabelKind::kSimilarity) {
      if (!ParseDouble(fields[2], rec.gold) || !std::isfinite(rec.gold)) {
        throw FormatError("line " + std::to_string(line_no) +
                          ": gold score is not a finite number");
      }
    } else {
      try {
        rec.gold = static_cast<double>(ParseEntailmentLabel(fields[2]));
      } catch (const FormatError& e) {
        throw FormatError("line " + std::to_string(line_no) + ": " +
                          e.what());
      }
    }
    out.records.push_back(rec);
  }
  return out;
}

PairDataset LoadPairs(const std::filesystem::path& path, LabelKind kind) {
  auto in = OpenIn(path, false);
  return WithPath(path, [&] { return ReadPairs(in, kind); });
}

void SavePairs(const PairDataset& pairs, const std::filesystem::path& path) {
  auto out = OpenOut(path, false);
  out.precision(17);
  for (const auto& r : pairs.records) {
    out << r.index_a << '\t' << r.index_b << '\t';
    if (pairs.kind == LabelKind::kSimilarity) {
      out << r.gold;
    } else {
      out << EntailmentLabelName(static_cast<EntailmentLabel>(r.label()));
    }
    out << '\n';
  }
  CloseOut(out, path);
}

void LabeledDataset::CheckIndices(Index rows) const {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].index >= rows) {
      throw PreconditionError("label record " + std::to_string(i) +
                              " references row " +
                              std::to_string(records[i].index) +
                              " of a matrix with " + std::to_string(rows) +
                              " rows");
    }
  }
}

std::vector<int> LabeledDataset::Labels() const {
  std::vector<int> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.label);
  return out;
}

std::vector<Index> LabeledDataset::Indices() const {
  std::vector<Index> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.index);
  return out;
}

namespace {

struct RawLabels {
  std::vector<Index> indices;
  std::vector<std::string> labels;
};

RawLabels ReadRawLabels(std::istream& in) {
  RawLabels raw;
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto trimmed = Trim(line);
    if (trimmed.empty()) continue;
    const auto fields = Split(trimmed, '\t');
    Index idx = 0;
    if (fields.size() != 2 || !ParseIndex(fields[0], idx) ||
        fields[1].empty()) {
      throw FormatError("line " + std::to_string(line_no) +
                        ": expected \"index<TAB>label\"");
    }
    raw.indices.push_back(idx);
    raw.labels.emplace_back(fields[1]);
  }
  return raw;
}

bool AllIntegers(const std::vector<std::string>& labels) {
  return std::all_of(labels.begin(), labels.end(), [](const std::string& s) {
    Index v = 0;
    return ParseIndex(s, v);
  });
}

LabeledDataset Assemble(const RawLabels& raw,
                        const std::vector<std::string>& vocabulary) {
  LabeledDataset out;
  out.class_names = vocabulary;
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < vocabulary.size(); ++i) {
    ids[vocabulary[i]] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < raw.labels.size(); ++i) {
    const auto it = ids.find(raw.labels[i]);
    if (it == ids.end()) {
      throw FormatError("unknown class \"" + raw.labels[i] + "\"");
    }
    out.records.push_back({raw.indices[i], it->second});
  }
  out.n_classes = static_cast<int>(vocabulary.size());
  return out;
}

}  // namespace

LabeledDataset ReadLabels(std::istream& in) {
  const RawLabels raw = ReadRawLabels(in);
  if (AllIntegers(raw.labels)) {
    LabeledDataset out;
    int max_label = -1;
    for (std::size_t i = 0; i < raw.labels.size(); ++i) {
      Index v = 0;
      ParseIndex(raw.labels[i], v);
      if (v > std::numeric_limits<int>::max()) {
        throw FormatError("class id " + raw.labels[i] + " too large");
      }
      out.records.push_back({raw.indices[i], static_cast<int>(v)});
      max_label = std::max(max_label, static_cast<int>(v));
    }
    out.n_classes = std::max(2, max_label + 1);
    return out;
  }
  const std::set<std::string> distinct(raw.labels.begin(), raw.labels.end());
  std::vector<std::string> vocabulary(distinct.begin(), distinct.end());
  if (vocabulary.size() < 2) vocabulary.resize(2);
  return Assemble(raw, vocabulary);
}

LabeledDataset ReadLabels(std::istream& in,
                          const std::vector<std::string>& vocabulary) {
  if (vocabulary.empty()) {
    LabeledDataset out = ReadLabels(in);
    if (!out.class_names.empty()) {
      throw FormatError("textual labels given where integer ids expected");
    }
    return out;
  }
  return Assemble(ReadRawLabels(in), vocabulary);
}

LabeledDataset LoadLabels(const std::filesystem::path& path) {
  auto in = OpenIn(path, false);
  return WithPath(path, [&] { return ReadLabels(in); });
}

LabeledDataset LoadLabels(const std::filesystem::path& path,
                          const std::vector<std::string>& vocabulary) {
  auto in = OpenIn(path, false);
  return WithPath(path, [&] { return ReadLabels(in, vocabulary); });
}

void SaveLabels(const LabeledDataset& labels,
                const std::filesystem::path& path) {
  auto out = OpenOut(path, false);
  for (const auto& r : labels.records) {
    out << r.index << '\t';
    if (labels.class_names.empty()) {
      out << r.label;
    } else {
      out << labels.class_names.at(static_cast<std::size_t>(r.label));
    }
    out << '\n';
  }
  CloseOut(out, path);
}

SynthCorpus SynthesizeCorpus(const SynthSpec& spec) {
  if (spec.dim < 1 || spec.intrinsic < 1) {
    throw PreconditionError("dim and intrinsic must be at least 1");
  }
  if (spec.intrinsic > spec.dim) {
    throw PreconditionError("intrinsic (" + std::to_string(spec.intrinsic) +
                            ") exceeds dim (" + std::to_string(spec.dim) +
                            ")");
  }
  if (spec.n < 0 || spec.n % 2 != 0) {
    throw PreconditionError("n must be a non-negative even count");
  }
  if (!(spec.noise_sigma >= 0.0) || !std::isfinite(spec.noise_sigma)) {
    throw PreconditionError("noise_sigma must be finite and non-negative");
  }

  RngStream rng(spec.seed);
  const Matrix gaussian = rng.NormalMatrix(spec.dim, spec.intrinsic, 1.0);
  const Eigen::HouseholderQR<Matrix> qr(gaussian);
  const Matrix frame =
      qr.householderQ() * Matrix::Identity(spec.dim, spec.intrinsic);

  RowMatrix rows(spec.n, spec.dim);
  SynthCorpus corpus;
  corpus.pairs.kind = LabelKind::kSimilarity;
  corpus.pairs.records.reserve(static_cast<std::size_t>(spec.n / 2));

  Vector za(spec.intrinsic), xi(spec.intrinsic), zb(spec.intrinsic);
  Vector noise(spec.dim);
  for (Index p = 0; p < spec.n / 2; ++p) {
    const double t = rng.Uniform(-1.0, 1.0);
    for (Index i = 0; i < spec.intrinsic; ++i) za(i) = rng.Normal();
    for (Index i = 0; i < spec.intrinsic; ++i) xi(i) = rng.Normal();
    zb = t * za + std::sqrt(1.0 - t * t) * xi;

    const Index a = 2 * p;
    const Index b = a + 1;
    for (Index j = 0; j < spec.dim; ++j) noise(j) = rng.Normal();
    rows.row(a) = (frame * za + spec.noise_sigma * noise).transpose();
    for (Index j = 0; j < spec.dim; ++j) noise(j) = rng.Normal();
    rows.row(b) = (frame * zb + spec.noise_sigma * noise).transpose();

    const double na = za.norm();
    const double nb = zb.norm();
    const double gold = na > 0.0 && nb > 0.0 ? za.dot(zb) / (na * nb) : 0.0;
    corpus.pairs.records.push_back({a, b, gold});
  }
  corpus.embeddings = EmbeddingMatrix(std::move(rows));
  return corpus;
}

}  // namespace embcompress
