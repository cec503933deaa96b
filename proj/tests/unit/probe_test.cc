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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

namespace embcompress {
namespace {

using Values = std::vector<double>;

// ---- cosine -------------------------------------------------------------

TEST(CosineTest, SelfSimilarityIsOne) {
  const Vector u = Eigen::Vector3d(0.3, -2, 5);
  EXPECT_NEAR(Cosine(u, u), 1.0, 1e-15);
}

TEST(CosineTest, OrthogonalIsZero) {
  EXPECT_EQ(Cosine(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)), 0.0);
}

TEST(CosineTest, FortyFiveDegrees) {
  EXPECT_NEAR(Cosine(Eigen::Vector2d(1, 1), Eigen::Vector2d(1, 0)),
              0.7071067811865476, 1e-15);
}

TEST(CosineTest, ZeroNormGivesZero) {
  EXPECT_EQ(Cosine(Vector::Zero(3), Vector::Ones(3)), 0.0);
}

TEST(CosineTest, DimensionMismatch) {
  EXPECT_THROW(Cosine(Vector::Ones(2), Vector::Ones(3)), PreconditionError);
  const Values a{1, 2}, b{1};
  EXPECT_THROW(Cosine(a, b), PreconditionError);
}

TEST(CosineTest, BoundedOnRandomVectors) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const oracle::Mat m = oracle::GaussianMatrix(2, 30, s);
    const double c = Cosine(m.row(0).transpose(), m.row(1).transpose());
    EXPECT_LE(std::abs(c), 1.0 + 1e-12);
  }
}

// ---- spearman -----------------------------------------------------------

TEST(SpearmanTest, IdenticalAndReversedOrderings) {
  const Values a{1, 2, 3, 4, 5};
  const Values b{10, 20, 30, 40, 50};
  const Values r{5, 4, 3, 2, 1};
  EXPECT_NEAR(Spearman(a, b), 1.0, 1e-15);
  EXPECT_NEAR(Spearman(a, r), -1.0, 1e-15);
}

TEST(SpearmanTest, NoTieClosedForm) {
  const Values a{1, 2, 3}, b{3, 1, 2};
  EXPECT_NEAR(Spearman(a, b), -0.5, 1e-12);
  EXPECT_NEAR(Spearman(a, b), oracle::RankThenPearson(a, b), 1e-12);
}

TEST(SpearmanTest, TiesUseAverageRanks) {
  const Values a{1, 2, 2, 3}, b{1, 2, 3, 4};
  EXPECT_EQ(AverageRanks(a), (Values{1, 2.5, 2.5, 4}));
  EXPECT_NEAR(Spearman(a, b), oracle::RankThenPearson(a, b), 1e-12);
}

TEST(SpearmanTest, MatchesOracleOnRandomTiedData) {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<int> small(0, 6);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + trial % 40;
    Values a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = trial % 2 ? small(gen) : normal(gen);
      b[i] = small(gen);
    }
    b[0] = -1;  // never constant
    a[1] = 100;
    EXPECT_NEAR(Spearman(a, b), oracle::RankThenPearson(a, b), 1e-12);
  }
}

TEST(SpearmanTest, InvariantUnderMonotoneTransform) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> pos(0.1, 3.0);
  Values a(40), b(40), cubed(40);
  for (int i = 0; i < 40; ++i) {
    a[i] = pos(gen);
    b[i] = pos(gen);
    cubed[i] = a[i] * a[i] * a[i];
  }
  EXPECT_NEAR(Spearman(a, b), Spearman(cubed, b), 1e-12);
  EXPECT_EQ(Spearman(a, b), Spearman(b, a));
}

TEST(SpearmanTest, Preconditions) {
  EXPECT_THROW(Spearman(Values{1, 2}, Values{1}), PreconditionError);
  EXPECT_THROW(Spearman(Values{1}, Values{1}), PreconditionError);
  EXPECT_THROW(Spearman(Values{1, 1, 1}, Values{1, 2, 3}), PreconditionError);
}

// ---- pair features ------------------------------------------------------

TEST(PairFeaturesTest, ClosedForm) {
  const Vector f = PairFeatures(Eigen::Vector2d(1, 2), Eigen::Vector2d(3, -1));
  EXPECT_EQ(f, Eigen::Vector4d(3, -2, 2, 3));
}

TEST(PairFeaturesTest, EqualInputsZeroSecondHalf) {
  const Vector u = Eigen::Vector3d(1, -4, 2);
  EXPECT_EQ(PairFeatures(u, u).tail(3), Vector::Zero(3));
}

TEST(PairFeaturesTest, Symmetric) {
  const Vector u = Eigen::Vector3d(1, -4, 2);
  const Vector v = Eigen::Vector3d(0.5, 3, -2);
  EXPECT_EQ(PairFeatures(u, v), PairFeatures(v, u));
  EXPECT_THROW(PairFeatures(u, Vector::Ones(2)), PreconditionError);
}

// ---- probe --------------------------------------------------------------

struct Clusters {
  RowMatrix x;
  std::vector<int> y;
};

Clusters GaussianClusters(int per_class, int classes, double spread,
                          std::uint64_t seed) {
  const oracle::Mat noise = oracle::GaussianMatrix(per_class * classes, 3, seed);
  Clusters c{RowMatrix(per_class * classes, 3), {}};
  for (int k = 0; k < classes; ++k) {
    for (int i = 0; i < per_class; ++i) {
      const int r = k * per_class + i;
      c.x.row(r) = spread * noise.row(r);
      c.x(r, k % 3) += 5.0;
      c.y.push_back(k);
    }
  }
  return c;
}

Vector FlattenProbe(const Matrix& w, const Vector& b) {
  Vector v(w.size() + b.size());
  v << Eigen::Map<const Vector>(w.data(), w.size()), b;
  return v;
}

TEST(ProbeObjectiveTest, GradientMatchesFiniteDifferences) {
  const RowMatrix x = oracle::GaussianMatrix(10, 3, 4);
  const std::vector<int> y{0, 1, 2, 0, 1, 2, 0, 1, 2, 2};
  ProbeModel model;
  model.weights = oracle::GaussianMatrix(3, 3, 5) * 0.5;
  model.bias = Eigen::Vector3d(0.1, -0.2, 0.3);
  model.l2 = 0.1;

  Matrix gw;
  Vector gb;
  ProbeObjective(model, x, y, &gw, &gb);
  const auto f = [&](const Vector& v) {
    ProbeModel m = model;
    m.weights = Eigen::Map<const Matrix>(v.data(), 3, 3);
    m.bias = v.tail(3);
    return ProbeObjective(m, x, y, nullptr, nullptr);
  };
  const Vector numeric =
      oracle::CentralDifference(f, FlattenProbe(model.weights, model.bias));
  EXPECT_LE(oracle::MaxRelativeError(FlattenProbe(gw, gb), numeric), 1e-5);
}

TEST(ProbeObjectiveTest, ZeroModelLossIsLogC) {
  const RowMatrix x = oracle::GaussianMatrix(6, 2, 1);
  const std::vector<int> y{0, 1, 2, 3, 0, 1};
  ProbeModel m{Matrix::Zero(4, 2), Vector::Zero(4), 1.0};
  EXPECT_NEAR(ProbeObjective(m, x, y, nullptr, nullptr), std::log(4.0), 1e-15);
}

TEST(ProbeObjectiveTest, StableForHugeLogits) {
  RowMatrix x(2, 1);
  x << 1e6, -1e6;
  const std::vector<int> y{1, 1};
  ProbeModel m{Matrix::Zero(2, 1), Vector::Zero(2), 0.0};
  m.weights(0, 0) = 1.0;
  const double loss = ProbeObjective(m, x, y, nullptr, nullptr);
  EXPECT_TRUE(std::isfinite(loss));
  EXPECT_NEAR(loss, 0.5e6, 1.0);
}

TEST(FitProbeTest, SeparableClustersFitPerfectly) {
  const auto c = GaussianClusters(30, 2, 0.3, 1);
  const ProbeModel m = FitProbe(c.x, c.y, 2);
  EXPECT_EQ(Accuracy(PredictProbe(m, c.x), c.y), 1.0);
  EXPECT_TRUE(m.weights.allFinite());
}

TEST(FitProbeTest, ObjectiveNonIncreasing) {
  const auto c = GaussianClusters(20, 3, 2.0, 2);
  std::vector<double> trace;
  FitProbe(c.x, c.y, 3, {}, &trace);
  ASSERT_GT(trace.size(), 2u);
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i], trace[i - 1]);
}

TEST(FitProbeTest, StrongerPenaltyShrinksWeights) {
  const auto c = GaussianClusters(20, 3, 1.5, 3);
  ProbeOptions weak, strong;
  weak.l2 = 1e-4;
  strong.l2 = 1.0;
  EXPECT_LT(FitProbe(c.x, c.y, 3, strong).weights.norm(),
            FitProbe(c.x, c.y, 3, weak).weights.norm());
}

TEST(FitProbeTest, ConvergesToStationaryPoint) {
  const auto c = GaussianClusters(20, 3, 2.0, 4);
  ProbeOptions opts;
  opts.l2 = 0.1;
  const ProbeModel m = FitProbe(c.x, c.y, 3, opts);
  Matrix gw;
  Vector gb;
  ProbeObjective(m, c.x, c.y, &gw, &gb);
  EXPECT_LE(std::max(gw.cwiseAbs().maxCoeff(), gb.cwiseAbs().maxCoeff()), 1e-6);
}

TEST(FitProbeTest, IsDeterministic) {
  const auto c = GaussianClusters(10, 3, 2.0, 5);
  EXPECT_EQ(FitProbe(c.x, c.y, 3).weights, FitProbe(c.x, c.y, 3).weights);
}

TEST(FitProbeTest, DegenerateLabelsRejected) {
  const RowMatrix x = oracle::GaussianMatrix(4, 2, 1);
  EXPECT_THROW(FitProbe(x, std::vector<int>{1, 1, 1, 1}, 2), PreconditionError);
  EXPECT_THROW(FitProbe(x, std::vector<int>{0, 1, 5, 1}, 3), PreconditionError);
  EXPECT_THROW(FitProbe(x, std::vector<int>{0, 1}, 2), PreconditionError);
}

TEST(PredictProbeTest, ZeroModelPicksClassZero) {
  ProbeModel m{Matrix::Zero(3, 2), Vector::Zero(3), 0.0};
  const auto pred = PredictProbe(m, oracle::GaussianMatrix(5, 2, 1));
  for (int p : pred) EXPECT_EQ(p, 0);
}

TEST(PredictProbeTest, ShiftInvariant) {
  const auto c = GaussianClusters(10, 3, 2.0, 6);
  ProbeModel m = FitProbe(c.x, c.y, 3);
  const auto before = PredictProbe(m, c.x);
  m.bias.array() += 17.0;
  EXPECT_EQ(PredictProbe(m, c.x), before);
}

TEST(PredictProbeTest, DimensionMismatch) {
  ProbeModel m{Matrix::Zero(2, 3), Vector::Zero(2), 0.0};
  EXPECT_THROW(PredictProbe(m, RowMatrix::Zero(1, 2)), PreconditionError);
}

TEST(SelectL2Test, PicksFromGrid) {
  const auto train = GaussianClusters(15, 2, 1.0, 7);
  const auto dev = GaussianClusters(10, 2, 1.0, 8);
  const double l2 = SelectL2(train.x, train.y, dev.x, dev.y, 2, kDefaultL2Grid);
  EXPECT_NE(std::find(std::begin(kDefaultL2Grid), std::end(kDefaultL2Grid), l2),
            std::end(kDefaultL2Grid));
}

}  // namespace
}  // namespace embcompress
