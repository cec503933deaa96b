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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cmath>

#include "embcompress/linalg.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

namespace embcompress {
namespace {

using testing::Emb;
using testing::RandomEmb;

RowMatrix ToyLine() {
  RowMatrix x(4, 2);
  x << 1, 0, -1, 0, 0.5, 0, -0.5, 0;
  return x;
}

ReducerConfig Config(Method method, Index k, std::uint64_t seed = 0) {
  ReducerConfig c;
  c.method = method;
  c.target_dim = k;
  c.seed = seed;
  return c;
}

double MaxPairwiseDistanceError(const RowMatrix& a, const RowMatrix& b) {
  double worst = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = i + 1; j < a.rows(); ++j) {
      const double da = (a.row(i) - a.row(j)).norm();
      const double db = (b.row(i) - b.row(j)).norm();
      worst = std::max(worst, std::abs(da - db));
    }
  }
  return worst;
}

// ---- PCA ----------------------------------------------------------------

TEST(PcaTest, ToyLineProjectsOntoFirstAxis) {
  const auto model = FitPca(EmbeddingMatrix(ToyLine()), 1);
  EXPECT_NEAR(model.components(0, 0), 1.0, 1e-14);
  EXPECT_NEAR(model.components(1, 0), 0.0, 1e-14);
  const auto scores = Transform(ProjectionModel(model), EmbeddingMatrix(ToyLine()));
  const Vector expected = Eigen::Vector4d(1, -1, 0.5, -0.5);
  EXPECT_LE((scores.values().col(0) - expected).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PcaTest, FullCapacityIsAnOrthogonalChangeOfBasis) {
  const auto x = RandomEmb(30, 6, 1);
  const ProjectionModel model = Fit(Config(Method::kPca, 6), x);
  const Matrix& u = model.as<PcaModel>().components;
  EXPECT_LE((u.transpose() * u - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff(),
            1e-8);
  EXPECT_LE((u * u.transpose() - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff(),
            1e-8);
  const auto y = Transform(model, x);
  EXPECT_LE(MaxPairwiseDistanceError(x.values(), y.values()), 1e-8);
}

TEST(PcaTest, MatchesCovarianceEigenOracle) {
  const auto x = RandomEmb(6, 4, 17);
  const auto model = FitPca(x, 3);
  const auto o = oracle::PowerEigen(oracle::Covariance(x.values()), 3);
  for (Index i = 0; i < 3; ++i) {
    EXPECT_NEAR(model.variances(i), o.values(i), 1e-9);
  }
  EXPECT_TRUE(oracle::EqualUpToColumnSign(model.components, o.vectors, 1e-9));
}

TEST(PcaTest, ScoreVariancesEqualEigenvalues) {
  const auto x = RandomEmb(50, 5, 2);
  const auto model = FitPca(x, 5);
  const auto y = Transform(ProjectionModel(model), x);
  for (Index i = 0; i < 5; ++i) {
    const Vector col = y.values().col(i);
    const double var = (col.array() - col.mean()).square().sum() / 49.0;
    EXPECT_NEAR(var, model.variances(i), 1e-8 * model.variances(i));
    if (i > 0) EXPECT_GE(model.variances(i - 1), model.variances(i));
  }
}

TEST(PcaTest, MeanMapsToZero) {
  const auto x = RandomEmb(20, 4, 3);
  const auto model = FitPca(x, 2);
  RowMatrix mu = model.mean.transpose();
  const auto y = Transform(ProjectionModel(model), EmbeddingMatrix(mu));
  EXPECT_LE(y.values().cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PcaTest, StandardizeIgnoresColumnScale) {
  const auto x = RandomEmb(40, 3, 4);
  RowMatrix scaled = x.values();
  scaled.col(1) *= 1000.0;
  const auto a = Transform(ProjectionModel(FitPca(x, 2, true)), x);
  const auto b = Transform(ProjectionModel(FitPca(EmbeddingMatrix(scaled), 2, true)),
                           EmbeddingMatrix(scaled));
  EXPECT_TRUE(oracle::EqualUpToColumnSign(a.values(), b.values(), 1e-8));
}

// ---- SVD ----------------------------------------------------------------

TEST(SvdTest, DiagonalRankOne) {
  RowMatrix x(2, 2);
  x << 3, 0, 0, 2;
  const ProjectionModel model = Fit(Config(Method::kSvd, 1), EmbeddingMatrix(x));
  const auto y = Transform(model, EmbeddingMatrix(x));
  EXPECT_NEAR(y.values()(0, 0), 3.0, 1e-14);
  EXPECT_NEAR(y.values()(1, 0), 0.0, 1e-14);
}

TEST(SvdTest, DiagonalFullRankIsIdentity) {
  RowMatrix x(2, 2);
  x << 3, 0, 0, 2;
  const auto model = FitSvd(EmbeddingMatrix(x), 2);
  EXPECT_LE((model.components - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(),
            1e-14);
}

TEST(SvdTest, NoCentering) {
  RowMatrix x(3, 2);
  x << 10, 1, 10, 2, 10, 3;
  const auto model = FitSvd(EmbeddingMatrix(x), 1);
  // The dominant direction is the offset, not the spread along axis 2.
  EXPECT_GT(std::abs(model.components(0, 0)), 0.9);
}

TEST(SvdTest, CentredInputMatchesPcaScoresUpToSign) {
  const auto raw = RandomEmb(25, 5, 6);
  RowMatrix centred = raw.values().rowwise() - raw.values().colwise().mean();
  const EmbeddingMatrix x(centred);
  const auto svd = Transform(Fit(Config(Method::kSvd, 3), x), x);
  const auto pca = Transform(Fit(Config(Method::kPca, 3), x), x);
  EXPECT_TRUE(oracle::EqualUpToColumnSign(svd.values(), pca.values(), 1e-9));
}

TEST(SvdTest, BestRankKColumnSubspace) {
  const auto x = RandomEmb(5, 3, 8);
  const auto model = FitSvd(x, 2);
  const Matrix& v = model.components;
  const double err = (x.values() - x.values() * v * v.transpose()).norm();
  EXPECT_NEAR(err, oracle::GramRouteSvd(x.values(), 3).s(2), 1e-9);
}

TEST(SvdTest, TargetAboveRowCountRejected) {
  EXPECT_THAT([] { FitSvd(RandomEmb(2, 5, 1), 3); },
              ::testing::ThrowsMessage<PreconditionError>(
                  ::testing::HasSubstr("exceeds sample count")));
}

// ---- KPCA ---------------------------------------------------------------

KernelSpec Linear() {
  KernelSpec k;
  k.kind = KernelKind::kLinear;
  return k;
}

TEST(KpcaTest, LinearKernelToyMatchesPcaScores) {
  const EmbeddingMatrix x(ToyLine());
  const ProjectionModel model(FitKpca(x, 1, Linear()));
  const auto y = Transform(model, x);
  const Vector expected = Eigen::Vector4d(1, -1, 0.5, -0.5);
  const Vector got = y.values().col(0);
  EXPECT_LE(std::min((got - expected).cwiseAbs().maxCoeff(),
                     (got + expected).cwiseAbs().maxCoeff()),
            1e-10);
}

TEST(KpcaTest, LinearKernelMatchesPcaOnTrainingAndNewRows) {
  const auto x = RandomEmb(30, 6, 9);
  const auto fresh = RandomEmb(10, 6, 10);
  const ProjectionModel kpca(FitKpca(x, 4, Linear()));
  const ProjectionModel pca(FitPca(x, 4));
  EXPECT_TRUE(oracle::EqualUpToColumnSign(Transform(kpca, x).values(),
                                          Transform(pca, x).values(), 1e-6));
  EXPECT_TRUE(oracle::EqualUpToColumnSign(Transform(kpca, fresh).values(),
                                          Transform(pca, fresh).values(), 1e-6));
}

TEST(KpcaTest, CentredRbfKernelRowsSumToZero) {
  const auto x = RandomEmb(15, 4, 11);
  KernelSpec spec;
  spec.gamma = 0.7;
  const Matrix k = CenterKernel(KernelMatrix(spec, x.values(), x.values()));
  EXPECT_LE(k.rowwise().sum().cwiseAbs().maxCoeff(), 1e-8);
  EXPECT_LE(k.colwise().sum().cwiseAbs().maxCoeff(), 1e-8);
}

TEST(KpcaTest, CentredIdentityKernelSpectrum) {
  // I - J/3 is a projector of rank 2: eigenvalues {1, 1, 0}.
  const Matrix k = CenterKernel(Matrix::Identity(3, 3));
  const auto e = SymmetricEigh(k, 3);
  EXPECT_NEAR(e.values(0), 1.0, 1e-12);
  EXPECT_NEAR(e.values(1), 1.0, 1e-12);
  EXPECT_NEAR(e.values(2), 0.0, 1e-12);
}

TEST(KpcaTest, IdentityKernelRejectsFullRankTarget) {
  // Far-apart points under an RBF kernel give exactly K = I.
  RowMatrix x = 100.0 * RowMatrix::Identity(3, 3);
  KernelSpec spec;
  spec.gamma = 1.0;
  EXPECT_THAT([&] { FitKpca(EmbeddingMatrix(x), 3, spec); },
              ::testing::ThrowsMessage<NumericalError>(
                  ::testing::HasSubstr("insufficient positive spectrum")));
  const auto model = FitKpca(EmbeddingMatrix(x), 2, spec);
  EXPECT_NEAR(model.eigenvalues(0), 1.0, 1e-12);
  EXPECT_NEAR(model.eigenvalues(1), 1.0, 1e-12);
}

TEST(KpcaTest, AlphasCarryEigenvalueVariance) {
  const auto x = RandomEmb(20, 3, 12);
  KernelSpec spec;
  spec.kind = KernelKind::kPoly;
  spec.degree = 2;
  const auto model = FitKpca(x, 3, spec);
  const Matrix kc = CenterKernel(KernelMatrix(model.kernel, x.values(), x.values()));
  for (Index i = 0; i < 3; ++i) {
    const double q = model.alphas.col(i).dot(kc * model.alphas.col(i));
    EXPECT_NEAR(q, model.eigenvalues(i), 1e-6 * model.eigenvalues(i));
  }
}

TEST(KpcaTest, TrainingRowTransformIsConsistent) {
  const auto x = RandomEmb(12, 4, 13);
  KernelSpec spec;
  const auto model = FitKpca(x, 3, spec);
  const auto y = KpcaScores(model, x.values());
  // Training scores are sqrt(lambda_i) * alpha_i.
  for (Index i = 0; i < 3; ++i) {
    const Vector expect = std::sqrt(model.eigenvalues(i)) * model.alphas.col(i);
    EXPECT_LE((y.col(i) - expect).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(KpcaTest, VanishingGammaGivesVanishingScores) {
  const auto x = RandomEmb(10, 3, 14);
  KernelSpec spec;
  spec.gamma = 1e-12;
  try {
    const ProjectionModel model(FitKpca(x, 2, spec));
    EXPECT_LE(Transform(model, x).values().norm(), 1e-3);
  } catch (const NumericalError&) {
    SUCCEED();
  }
}

TEST(KpcaTest, JitterIsAccepted) {
  const auto x = RandomEmb(10, 3, 15);
  KernelSpec spec;
  spec.kind = KernelKind::kSigmoid;
  EXPECT_NO_THROW(FitKpca(x, 2, spec, 1e-6));
  EXPECT_THROW(FitKpca(x, 2, spec, -1.0), PreconditionError);
}

TEST(KpcaTest, TargetAboveRowCountRejected) {
  ReducerConfig c = Config(Method::kKpca, 5);
  EXPECT_THAT([&] { Fit(c, RandomEmb(4, 6, 1)); },
              ::testing::ThrowsMessage<PreconditionError>(
                  ::testing::HasSubstr("target_dim exceeds sample count")));
}

// ---- GRP ----------------------------------------------------------------

TEST(GrpTest, ProjectionIsDataIndependent) {
  const ProjectionModel a = Fit(Config(Method::kGrp, 3, 7), RandomEmb(5, 8, 1));
  const ProjectionModel b = Fit(Config(Method::kGrp, 3, 7), RandomEmb(9, 8, 2));
  EXPECT_EQ(a.as<GrpModel>().r, b.as<GrpModel>().r);
  EXPECT_EQ(FitGrp(8, 3, 7).r, a.as<GrpModel>().r);
  EXPECT_NE(FitGrp(8, 3, 8).r, a.as<GrpModel>().r);
}

TEST(GrpTest, ZeroRowMapsToZero) {
  const ProjectionModel m(FitGrp(6, 2, 1));
  const auto y = Transform(m, EmbeddingMatrix(RowMatrix::Zero(1, 6)));
  EXPECT_EQ(y.values().cwiseAbs().maxCoeff(), 0.0);
}

TEST(GrpTest, SquaredNormPreservedInExpectation) {
  const Index d = 200, k = 100;
  Vector s = oracle::GaussianMatrix(d, 1, 3).col(0);
  s.normalize();
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    total += (FitGrp(d, k, seed).r.transpose() * s).squaredNorm();
  }
  const double mean = total / 200.0;
  EXPECT_GE(mean, 0.9);
  EXPECT_LE(mean, 1.1);
}

TEST(GrpTest, PairwiseDistancesNearlyPreserved) {
  const auto x = RandomEmb(500, 768, 21);
  const auto y = Transform(ProjectionModel(FitGrp(768, 300, 5)), x);
  std::size_t ok = 0, total = 0;
  for (Index i = 0; i < 500; ++i) {
    for (Index j = i + 1; j < 500; ++j) {
      const double a = (x.values().row(i) - x.values().row(j)).squaredNorm();
      const double b = (y.values().row(i) - y.values().row(j)).squaredNorm();
      ok += std::abs(b - a) <= 0.25 * a;
      ++total;
    }
  }
  EXPECT_GE(static_cast<double>(ok) / static_cast<double>(total), 0.95);
}

// ---- Shared contract ----------------------------------------------------

class MethodContractTest : public ::testing::TestWithParam<Method> {
 protected:
  ReducerConfig Cfg(Index k) const {
    ReducerConfig c = Config(GetParam(), k, 3);
    c.ae.epochs = 3;
    c.ae.batch_size = 8;
    return c;
  }
};

TEST_P(MethodContractTest, OutputShapeAndPurity) {
  const auto x = RandomEmb(20, 6, 31);
  const auto fresh = RandomEmb(7, 6, 32);
  const ProjectionModel model = Fit(Cfg(3), x);
  EXPECT_EQ(model.method(), GetParam());
  EXPECT_EQ(model.input_dim(), 6);
  EXPECT_EQ(model.output_dim(), 3);
  const auto y1 = Transform(model, fresh);
  const auto y2 = Transform(model, fresh);
  EXPECT_EQ(y1.rows(), 7);
  EXPECT_EQ(y1.dim(), 3);
  EXPECT_EQ(y1.values(), y2.values());
}

TEST_P(MethodContractTest, ThreadedTransformMatchesInline) {
  const auto x = RandomEmb(20, 6, 33);
  const auto fresh = RandomEmb(101, 6, 34);
  const ProjectionModel model = Fit(Cfg(2), x);
  TransformOptions opts;
  opts.threads = 4;
  // Blocked products may round differently for different row counts.
  const RowMatrix inline_out = Transform(model, fresh).values();
  const RowMatrix threaded = Transform(model, fresh, opts).values();
  EXPECT_LE((inline_out - threaded).cwiseAbs().maxCoeff(), 1e-12);
}

TEST_P(MethodContractTest, DimensionMismatchRejected) {
  const ProjectionModel model = Fit(Cfg(2), RandomEmb(10, 4, 1));
  EXPECT_THROW(Transform(model, RandomEmb(3, 5, 2)), PreconditionError);
}

TEST_P(MethodContractTest, EmptyInputGivesEmptyOutput) {
  const ProjectionModel model = Fit(Cfg(2), RandomEmb(10, 4, 1));
  const auto y = Transform(model, EmbeddingMatrix::Empty(4));
  EXPECT_EQ(y.rows(), 0);
  EXPECT_EQ(y.dim(), 2);
}

TEST_P(MethodContractTest, TargetDimBounds) {
  const auto x = RandomEmb(10, 4, 1);
  EXPECT_THROW(Fit(Cfg(0), x), PreconditionError);
  EXPECT_THROW(Fit(Cfg(5), x), PreconditionError);
  EXPECT_NO_THROW(Fit(Cfg(4), x));
}

TEST_P(MethodContractTest, SingleRowInput) {
  const auto one = RandomEmb(1, 4, 1);
  if (GetParam() == Method::kGrp) {
    EXPECT_NO_THROW(Fit(Cfg(2), one));
  } else {
    EXPECT_THROW(Fit(Cfg(2), one), PreconditionError);
  }
}

INSTANTIATE_TEST_SUITE_P(
    AllMethods, MethodContractTest,
    ::testing::Values(Method::kPca, Method::kSvd, Method::kKpca, Method::kGrp,
                      Method::kAutoencoder),
    [](const auto& info) { return std::string(MethodName(info.param)); });

TEST(MethodNameTest, ParseRoundTrip) {
  for (auto m : {Method::kPca, Method::kSvd, Method::kKpca, Method::kGrp,
                 Method::kAutoencoder}) {
    EXPECT_EQ(ParseMethod(MethodName(m)), m);
  }
  EXPECT_EQ(ParseMethod("ae"), Method::kAutoencoder);
  EXPECT_THROW(ParseMethod("lda"), PreconditionError);
}

}  // namespace
}  // namespace embcompress
