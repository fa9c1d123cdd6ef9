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

#include <cmath>
#include <set>
#include <vector>

#include <Eigen/Eigenvalues>

#include "frappe/design.h"
#include "frappe/random.h"
#include "frappe/synthetic_data.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace frappe {
namespace {

using ::frappe::testing::MakeDataset;
using ::frappe::testing::RandomDataset;

TEST(RngTest, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Normal(), b.Normal());
  EXPECT_EQ(Rng(7).seed(), 7u);
}

TEST(RngTest, DeriveIsPureAndDistinct) {
  const Rng root(5);
  EXPECT_EQ(root.Derive({1, 2}).seed(), root.Derive({1, 2}).seed());
  std::set<std::uint64_t> seeds;
  for (std::uint64_t a = 0; a < 20; ++a) {
    for (std::uint64_t b = 0; b < 20; ++b) seeds.insert(root.Derive({a, b}).seed());
  }
  EXPECT_EQ(seeds.size(), 400u);
  EXPECT_NE(root.Derive({1, 2}).seed(), root.Derive({2, 1}).seed());
  EXPECT_NE(root.Derive({1}).seed(), root.Derive({1, 0}).seed());
  EXPECT_NE(Rng(5).Derive({1}).seed(), Rng(6).Derive({1}).seed());
}

TEST(RngTest, DeriveIgnoresParentDraws) {
  Rng used(9);
  for (int i = 0; i < 10; ++i) used.Normal();
  EXPECT_EQ(used.Derive({3}).seed(), Rng(9).Derive({3}).seed());
}

TEST(RngTest, UniformAndBelowRanges) {
  Rng rng(1);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    const auto k = rng.Below(7);
    ASSERT_LT(k, 7u);
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
  EXPECT_EQ(rng.Below(1), 0u);
}

TEST(SplitMixTest, KnownValue) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(SplitMix64(0), 0xe220a8397b1dcdafULL);
}

TEST(DesignTest, GramAndEigenvaluesMatchDirectSolve) {
  for (double rho : {0.0, 0.5, 0.9}) {
    SyntheticSpec spec;
    spec.num_rows = 1000;
    spec.dim = 12;
    spec.sparsity = 2;
    spec.rho = rho;
    spec.seed = 3;
    auto g = Generate(spec);
    ASSERT_TRUE(g.ok());
    const DesignSummary s = SummarizeDesign(g->data, 500);
    const Matrix& x = g->data.features();
    const Matrix gram = x.transpose() * x / 1000.0;
    EXPECT_LT((s.gram - gram).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    const double top = eig.eigenvalues().maxCoeff();
    EXPECT_NEAR(s.lipschitz, top, 1e-6 * top) << rho;
    EXPECT_LE(s.lipschitz, top * (1.0 + 1e-12));
    EXPECT_GE(s.strong_convexity, 0.0);
    EXPECT_LE(s.strong_convexity, s.lipschitz);
    // The power-iteration estimate of mu converges slowly, but a Rayleigh
    // quotient can only overestimate it.
    EXPECT_GE(s.strong_convexity, eig.eigenvalues().minCoeff() - 1e-9 * top);
  }
}

TEST(DesignTest, SmallExamples) {
  Dataset d = MakeDataset({{2, 0}, {0, 1}}, {0, 0});
  const DesignSummary s = SummarizeDesign(d);
  EXPECT_NEAR(s.lipschitz, 2.0, 1e-12);
  EXPECT_NEAR(s.strong_convexity, 0.5, 1e-12);
  Matrix zero = Matrix::Zero(3, 3);
  EXPECT_EQ(TopEigenvalue(zero, 10), 0.0);
}

TEST(DesignTest, RankDeficientDesign) {
  Rng rng(8);
  Dataset d = RandomDataset(rng, 3, 10);
  const DesignSummary s = SummarizeDesign(d, 1000);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s.gram);
  EXPECT_NEAR(s.lipschitz, eig.eigenvalues().maxCoeff(), 1e-8);
  EXPECT_NEAR(s.strong_convexity, 0.0, 1e-6);
}

}  // namespace
}  // namespace frappe
