//
// Copyright 2026 The FRAPPE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "frappe/model_selection.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "frappe/baselines.h"
#include "frappe/random.h"
#include "frappe/synthetic_data.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace frappe {
namespace {

using ::frappe::testing::IsOk;
using ::frappe::testing::MakeDataset;
using ::frappe::testing::RandomDataset;
using ::frappe::testing::RandomVector;
using ::frappe::testing::StatusIs;
using ::testing::ElementsAre;

WeightVector W(std::initializer_list<double> v) {
  Vector out(v.size());
  int i = 0;
  for (double x : v) out[i++] = x;
  return WeightVector(out);
}

TEST(F1ScoreTest, Examples) {
  EXPECT_DOUBLE_EQ(F1Score(W({1, 2, 0}), W({3, 4, 0})).f1, 1.0);
  // Estimated {0, 1}, truth {0, 2}: precision 1/2, recall 1/2.
  EXPECT_DOUBLE_EQ(F1Score(W({1, 1, 0}), W({1, 0, 1})).f1, 0.5);
  // Estimated {0}, truth {0, 1}: precision 1, recall 1/2.
  EXPECT_DOUBLE_EQ(F1Score(W({5, 0, 0}), W({1, 1, 0})).f1, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(F1Score(W({0, 0, 1}), W({1, 1, 0})).f1, 0.0);
  const SupportScores empty = F1Score(W({0, 0, 0}), W({1, 0, 0}));
  EXPECT_EQ(empty.f1, 0.0);
  EXPECT_EQ(empty.precision, 0.0);
  EXPECT_EQ(empty.recall, 0.0);
}

TEST(F1ScoreTest, TinyCoordinatesAreOutsideTheSupport) {
  EXPECT_DOUBLE_EQ(F1Score(W({1, 1e-9, 0}), W({1, 0, 0})).f1, 1.0);
  EXPECT_DOUBLE_EQ(F1Score(W({1, 1e-7, 0}), W({1, 0, 0})).f1, 2.0 / 3.0);
}

TEST(F1ScoreTest, PermutationInvariantAndBounded) {
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    const int p = 12;
    Vector a(p), b(p);
    for (int i = 0; i < p; ++i) {
      a[i] = rng.Uniform() < 0.4 ? rng.Normal() : 0.0;
      b[i] = rng.Uniform() < 0.4 ? rng.Normal() : 0.0;
    }
    std::vector<int> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    Vector pa(p), pb(p);
    for (int i = 0; i < p; ++i) {
      pa[i] = a[perm[i]];
      pb[i] = b[perm[i]];
    }
    const double f = F1Score(WeightVector(a), WeightVector(b)).f1;
    EXPECT_DOUBLE_EQ(f, F1Score(WeightVector(pa), WeightVector(pb)).f1);
    EXPECT_DOUBLE_EQ(f, F1Score(WeightVector(b), WeightVector(a)).f1);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0);
  }
}

TEST(WeightMseTest, ZeroExactlyWhenEqual) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    Vector a = RandomVector(rng, 7);
    EXPECT_EQ(WeightMse(WeightVector(a), WeightVector(a)), 0.0);
    Vector b = a;
    b[trial % 7] += 1e-3;
    EXPECT_GT(WeightMse(WeightVector(a), WeightVector(b)), 0.0);
  }
  EXPECT_DOUBLE_EQ(WeightMse(W({1, 2}), W({0, 0})), 2.5);
}

TEST(EvaluateTest, ReportsFields) {
  const MetricReport r = EvaluateAgainstTruth(W({1, 0, 3}), W({1, 2, 0}));
  EXPECT_DOUBLE_EQ(r.mse_weights, (0.0 + 4.0 + 9.0) / 3.0);
  EXPECT_DOUBLE_EQ(r.mae_weights, 5.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.f1, 0.5);
  EXPECT_EQ(r.sparsity, 2);
  EXPECT_TRUE(std::isnan(r.mse_pred));

  Dataset test = MakeDataset({{1, 0}, {0, 1}}, {2, 0});
  const MetricReport t = EvaluateOnTest(W({1, 1}), test);
  EXPECT_DOUBLE_EQ(t.mse_pred, 1.0);
  EXPECT_DOUBLE_EQ(t.mae_pred, 1.0);
  EXPECT_TRUE(std::isnan(t.f1));
  EXPECT_TRUE(std::isnan(t.mse_weights));
}

TEST(BicTest, Formula) {
  Dataset d = MakeDataset({{1}, {1}, {1}, {1}}, {1, 2, 3, 4});
  const double n = 4.0;
  EXPECT_DOUBLE_EQ(Bic(d, W({2}), LossKind::kAbsolute),
                   n * std::log(1.0) + std::log(n));
  EXPECT_DOUBLE_EQ(Bic(d, W({0}), LossKind::kSquared),
                   n * std::log(7.5));
}

TEST(BicSelectTest, EmptyGridRejected) {
  Dataset d = MakeDataset({{1}}, {1});
  auto fitter = [](double) -> absl::StatusOr<WeightVector> { return W({0}); };
  EXPECT_THAT(BicSelect(d, {}, LossKind::kAbsolute, fitter),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(BicSelectTest, SingletonGrid) {
  Dataset d = MakeDataset({{1}, {2}}, {1, 2});
  auto fitter = [](double c) -> absl::StatusOr<WeightVector> { return W({c}); };
  const std::vector<double> grid = {0.5};
  FRAPPE_ASSERT_OK_AND_ASSIGN(Selection s,
                              BicSelect(d, grid, LossKind::kSquared, fitter));
  EXPECT_EQ(s.selected, 0.5);
  ASSERT_EQ(s.scores.size(), 1u);
  EXPECT_EQ(s.weights, W({0.5}));
}

TEST(BicSelectTest, FitterErrorPropagates) {
  Dataset d = MakeDataset({{1}}, {1});
  auto fitter = [](double) -> absl::StatusOr<WeightVector> {
    return absl::InternalError("boom");
  };
  const std::vector<double> grid = {1.0, 2.0};
  EXPECT_THAT(BicSelect(d, grid, LossKind::kAbsolute, fitter),
              StatusIs(absl::StatusCode::kInternal));
}

TEST(BicSelectTest, TiesBreakTowardSmallerCandidate) {
  // Every candidate returns the same fit, so BIC and support tie.
  Dataset d = MakeDataset({{1, 0}, {0, 1}}, {1, 0});
  auto fitter = [](double) -> absl::StatusOr<WeightVector> {
    return W({1, 0});
  };
  const std::vector<double> grid = {2.0, 1.0, 3.0};
  FRAPPE_ASSERT_OK_AND_ASSIGN(Selection s,
                              BicSelect(d, grid, LossKind::kSquared, fitter));
  EXPECT_EQ(s.selected, 1.0);

}

TEST(BicSelectTest, PrefersSparserExactFit) {
  const std::vector<double> grid = {2.0, 1.0, 3.0};
  auto sparse_or_dense = [](double c) -> absl::StatusOr<WeightVector> {
    return c > 1.5 ? W({1, 0}) : W({1, 1e-3});
  };
  Dataset flat = MakeDataset({{1, 0}, {0, 1}}, {1, 0});
  FRAPPE_ASSERT_OK_AND_ASSIGN(Selection t, BicSelect(flat, grid, LossKind::kAbsolute,
                                                     sparse_or_dense));
  EXPECT_EQ(t.weights, W({1, 0}));
  EXPECT_EQ(t.scores[1].support_size, 2);
}

TEST(BicSelectTest, OrderInvariant) {
  Rng rng(3);
  Dataset d = RandomDataset(rng, 200, 6);
  std::vector<double> grid = DefaultLambdaGrid(d, 12);
  auto fitter = [&](double lambda) -> absl::StatusOr<WeightVector> {
    BaselineConfig cfg;
    cfg.lambda = lambda;
    cfg.clip_row = d.MaxRowNorm();
    auto fit = FitGpLasso(d, cfg, std::nullopt, Rng(0));
    if (!fit.ok()) return fit.status();
    return fit->weights;
  };
  FRAPPE_ASSERT_OK_AND_ASSIGN(Selection a,
                              BicSelect(d, grid, LossKind::kSquared, fitter));
  std::reverse(grid.begin(), grid.end());
  FRAPPE_ASSERT_OK_AND_ASSIGN(Selection b,
                              BicSelect(d, grid, LossKind::kSquared, fitter));
  std::shuffle(grid.begin(), grid.end(), rng.engine());
  FRAPPE_ASSERT_OK_AND_ASSIGN(Selection c,
                              BicSelect(d, grid, LossKind::kSquared, fitter));
  EXPECT_EQ(a.selected, b.selected);
  EXPECT_EQ(a.selected, c.selected);
  EXPECT_EQ(a.weights, c.weights);
}

TEST(BicSelectTest, RecoversSupportOnNormalData) {
  SyntheticSpec spec;
  spec.num_rows = 2000;
  spec.dim = 50;
  spec.sparsity = 5;
  spec.seed = 11;
  FRAPPE_ASSERT_OK_AND_ASSIGN(SyntheticData g, Generate(spec));
  const std::vector<double> grid = DefaultLambdaGrid(g.data, 20);
  auto fitter = [&](double lambda) -> absl::StatusOr<WeightVector> {
    BaselineConfig cfg;
    cfg.lambda = lambda;
    cfg.clip_row = g.data.MaxRowNorm();
    cfg.clip_weight = 100.0;
    cfg.total_iters = 1000;
    auto fit = FitGpLasso(g.data, cfg, std::nullopt, Rng(0));
    if (!fit.ok()) return fit.status();
    return fit->weights;
  };
  FRAPPE_ASSERT_OK_AND_ASSIGN(
      Selection s, BicSelect(g.data, grid, LossKind::kSquared, fitter));
  EXPECT_GE(F1Score(s.weights, g.truth).f1, 0.85);
}

TEST(LambdaGridTest, StrictlyDecreasingFromLambdaMax) {
  Rng rng(4);
  Dataset d = RandomDataset(rng, 100, 8);
  const std::vector<double> grid = DefaultLambdaGrid(d, 20);
  ASSERT_EQ(grid.size(), 20u);
  const double lambda_max =
      (d.features().transpose() * d.responses()).cwiseAbs().maxCoeff() / 100.0;
  EXPECT_DOUBLE_EQ(grid.front(), lambda_max);
  EXPECT_NEAR(grid.back(), lambda_max / 1000.0, 1e-15 * lambda_max);
  for (std::size_t k = 1; k < grid.size(); ++k) EXPECT_LT(grid[k], grid[k - 1]);
}

TEST(LambdaGridTest, ScalesWithResponses) {
  Rng rng(5);
  Dataset d = RandomDataset(rng, 100, 8);
  Dataset scaled = *Dataset::Create(d.features(), 4.0 * d.responses());
  const auto a = DefaultLambdaGrid(d, 10);
  const auto b = DefaultLambdaGrid(scaled, 10);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(b[k], 4.0 * a[k], 1e-12 * b[k]);
}

TEST(SparsityGridTest, Values) {
  const auto grid = DefaultSparsityGrid(100, 20);
  ASSERT_EQ(grid.size(), 20u);
  EXPECT_EQ(grid.front(), 1.0);
  EXPECT_EQ(grid[9], 10.0);
  EXPECT_EQ(grid[10], 12.0);
  EXPECT_EQ(grid.back(), 30.0);
  EXPECT_THAT(DefaultSparsityGrid(5, 20), ElementsAre(1, 2, 3, 4, 5));
  EXPECT_THAT(DefaultSparsityGrid(13, 20),
              ElementsAre(1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12));
}

}  // namespace
}  // namespace frappe
