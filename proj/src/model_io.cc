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

// PRJ1 model files. All integers and floats are little-endian.
//
//   bytes 0..3   ASCII "PRJ1"
//   byte  4      method tag: 0 pca, 1 svd, 2 kpca, 3 grp, 4 autoencoder
//   bytes 5..8   u32 input dim d
//   bytes 9..12  u32 output dim k
//   payload (f64 unless noted):
//     pca          mean[d], U[d x k] column-major
//     svd          V_k[d x k] column-major
//     kpca         u8 kernel kind, gamma, u32 degree, coef0, u32 n,
//                  train[n x d] row-major, eigenvalues[k],
//                  alphas[n x k] column-major, row_means[n], grand_mean
//     grp          u64 seed (R is re-derived from seed, d, k)
//     autoencoder  W1[k x d] row-major, b1[k], W2[d x k] row-major, b2[d],
//                  mean[d]
//
// Nothing may follow the payload.

#include <fstream>
#include <limits>
#include <optional>
#include <string>

#include "binary_io.hpp"
#include "embcompress/reducers.hpp"

namespace embcompress {

namespace {

constexpr char kMagic[] = "PRJ1";

using internal::LeReader;
using internal::LeWriter;

std::uint32_t CheckedU32(Index v) {
  if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
    throw PreconditionError("dimension too large for PRJ1");
  }
  return static_cast<std::uint32_t>(v);
}

void PutVector(LeWriter& w, const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) w.F64(v(i));
}

void PutColMajor(LeWriter& w, const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) w.F64(m(i, j));
  }
}

template <typename M>
void PutRowMajor(LeWriter& w, const M& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) w.F64(m(i, j));
  }
}

Vector GetVector(LeReader& r, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = r.F64();
  return v;
}

Matrix GetColMajor(LeReader& r, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = r.F64();
  }
  return m;
}

template <typename M>
M GetRowMajor(LeReader& r, Index rows, Index cols) {
  M m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = r.F64();
  }
  return m;
}

std::optional<std::uint64_t> RemainingBytes(std::istream& in) {
  const auto here = in.tellg();
  if (here == std::streampos(-1)) return std::nullopt;
  in.seekg(0, std::ios::end);
  const auto end = in.tellg();
  in.seekg(here);
  if (end == std::streampos(-1)) return std::nullopt;
  return static_cast<std::uint64_t>(end - here);
}

}  // namespace

void WriteModel(const ProjectionModel& model, std::ostream& out) {
  LeWriter w(out);
  w.Bytes(kMagic);
  w.U8(static_cast<std::uint8_t>(model.method()));
  const Index d = model.input_dim();
  const Index k = model.output_dim();
  w.U32(CheckedU32(d));
  w.U32(CheckedU32(k));

  switch (model.method()) {
    case Method::kPca: {
      const auto& m = model.as<PcaModel>();
      PutVector(w, m.mean);
      PutColMajor(w, m.components);
      break;
    }
    case Method::kSvd:
      PutColMajor(w, model.as<SvdModel>().components);
      break;
    case Method::kKpca: {
      const auto& m = model.as<KpcaModel>();
      w.U8(static_cast<std::uint8_t>(m.kernel.kind));
      w.F64(m.kernel.gamma);
      w.U32(m.kernel.degree);
      w.F64(m.kernel.coef0);
      w.U32(CheckedU32(m.train.rows()));
      PutRowMajor(w, m.train);
      PutVector(w, m.eigenvalues);
      PutColMajor(w, m.alphas);
      PutVector(w, m.row_means);
      w.F64(m.grand_mean);
      break;
    }
    case Method::kGrp:
      w.U64(model.as<GrpModel>().seed);
      break;
    case Method::kAutoencoder: {
      const auto& m = model.as<AutoencoderModel>();
      PutRowMajor(w, m.w1);
      PutVector(w, m.b1);
      PutRowMajor(w, m.w2);
      PutVector(w, m.b2);
      PutVector(w, m.mean);
      break;
    }
  }
}

ProjectionModel ReadModel(std::istream& in) {
  LeReader r(in);
  const std::string magic = r.Bytes(4);
  if (magic != kMagic) {
    if (magic.rfind("PRJ", 0) == 0) {
      throw FormatError("unsupported model version \"" + magic +
                        "\" (expected PRJ1)");
    }
    throw FormatError("bad magic at byte 0: expected \"PRJ1\"");
  }
  const std::uint8_t tag = r.U8();
  if (tag > static_cast<std::uint8_t>(Method::kAutoencoder)) {
    throw FormatError("unknown method tag " + std::to_string(tag) +
                      " at byte 4");
  }
  const Index d = r.U32();
  const Index k = r.U32();
  if (d < 1 || k < 1 || k > d) {
    throw FormatError("invalid dimensions " + std::to_string(d) + " -> " +
                      std::to_string(k) + " at byte 5");
  }

  std::optional<ProjectionModel> model;
  switch (static_cast<Method>(tag)) {
    case Method::kPca: {
      PcaModel m;
      m.mean = GetVector(r, d);
      m.components = GetColMajor(r, d, k);
      model.emplace(std::move(m));
      break;
    }
    case Method::kSvd: {
      SvdModel m;
      m.components = GetColMajor(r, d, k);
      model.emplace(std::move(m));
      break;
    }
    case Method::kKpca: {
      KpcaModel m;
      const std::uint8_t kind = r.U8();
      if (kind > static_cast<std::uint8_t>(KernelKind::kSigmoid)) {
        throw FormatError("unknown kernel kind " + std::to_string(kind));
      }
      m.kernel.kind = static_cast<KernelKind>(kind);
      m.kernel.gamma = r.F64();
      m.kernel.degree = r.U32();
      m.kernel.coef0 = r.F64();
      const Index n = r.U32();
      if (n < k) throw FormatError("KPCA support size smaller than k");
      const auto remaining = RemainingBytes(in);
      const auto needed = static_cast<std::uint64_t>(n) *
                          static_cast<std::uint64_t>(d + k + 1) * 8;
      if (remaining && *remaining < needed) {
        throw FormatError("truncated payload: KPCA support of " +
                          std::to_string(n) + " rows needs " +
                          std::to_string(needed) + " bytes, " +
                          std::to_string(*remaining) + " remain");
      }
      m.train = GetRowMajor<RowMatrix>(r, n, d);
      m.eigenvalues = GetVector(r, k);
      m.alphas = GetColMajor(r, n, k);
      m.row_means = GetVector(r, n);
      m.grand_mean = r.F64();
      model.emplace(std::move(m));
      break;
    }
    case Method::kGrp:
      model.emplace(FitGrp(d, k, r.U64()));
      break;
    case Method::kAutoencoder: {
      AutoencoderModel m;
      m.w1 = GetRowMajor<Matrix>(r, k, d);
      m.b1 = GetVector(r, k);
      m.w2 = GetRowMajor<Matrix>(r, d, k);
      m.b2 = GetVector(r, d);
      m.mean = GetVector(r, d);
      model.emplace(std::move(m));
      break;
    }
  }
  r.ExpectEnd();
  return std::move(*model);
}

void SaveModel(const ProjectionModel& model,
               const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  WriteModel(model, out);
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

ProjectionModel LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  try {
    return ReadModel(in);
  } catch (const FormatError& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace embcompress
