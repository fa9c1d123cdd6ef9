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

#include <benchmark/benchmark.h>

#include <optional>
#include <vector>

#include "frappe/baselines.h"
#include "frappe/core.h"
#include "frappe/design.h"
#include "frappe/dp_mechanisms.h"
#include "frappe/frappe_solver.h"
#include "frappe/kernels.h"
#include "frappe/random.h"
#include "frappe/synthetic_data.h"

namespace frappe {
namespace {

SyntheticData Make(int n, int p, NoiseFamily noise = NoiseFamily::kCauchy) {
  SyntheticSpec spec;
  spec.num_rows = n;
  spec.dim = p;
  spec.sparsity = std::min(10, p);
  spec.noise = noise;
  spec.seed = 1;
  return *Generate(spec);
}

FrappeConfig Config(const Dataset& d) {
  FrappeConfig cfg;
  cfg.clip_row = d.MaxRowNorm();
  cfg.clip_weight = 1.25 * std::sqrt(385.0);
  cfg.lambda = 0.05;
  return cfg;
}

void BM_Generate(benchmark::State& state) {
  SyntheticSpec spec;
  spec.num_rows = static_cast<int>(state.range(0));
  spec.dim = 100;
  for (auto _ : state) {
    auto g = Generate(spec);
    benchmark::DoNotOptimize(g);
    ++spec.seed;
  }
  state.SetItemsProcessed(state.iterations() * spec.num_rows);
}
BENCHMARK(BM_Generate)->Arg(1000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_KdeAtZero(benchmark::State& state) {
  Rng rng(2);
  std::vector<double> r(state.range(0));
  for (double& v : r) v = rng.Normal();
  const Kernel k = Kernel::Make(KernelType::kBiweight);
  for (auto _ : state) benchmark::DoNotOptimize(KdeAtZero(r, k, 0.4));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KdeAtZero)->Arg(5000)->Arg(50000);

void BM_InnerStep(benchmark::State& state) {
  const SyntheticData g = Make(5000, static_cast<int>(state.range(0)));
  const FrappeConfig cfg = Config(g.data);
  const DesignSummary design = SummarizeDesign(g.data);
  auto budget = PrivacyBudget::Create(0.5, 1e-3);
  auto scales = ComputeNoiseScales(*budget, cfg, g.data.num_rows());
  FrappeSolver solver(g.data, cfg, *scales, design, 1.0 / (2 * design.lipschitz));
  solver.set_record_objective(false);
  const Rng rng(3);
  FrappeState s = solver.Initialize(rng);
  solver.BeginOuter(s, rng);
  for (auto _ : state) {
    s = solver.InnerStep(std::move(s), rng);
    s.trace.clear();
  }
}
BENCHMARK(BM_InnerStep)->Arg(100)->Arg(400);

void BM_BeginOuter(benchmark::State& state) {
  const SyntheticData g = Make(static_cast<int>(state.range(0)), 100);
  const FrappeConfig cfg = Config(g.data);
  const DesignSummary design = SummarizeDesign(g.data);
  FrappeSolver solver(g.data, cfg, std::nullopt, design, 0.1);
  const Rng rng(4);
  FrappeState s = solver.Initialize(rng);
  for (auto _ : state) {
    FrappeState copy = s;
    solver.BeginOuter(copy, rng);
    benchmark::DoNotOptimize(copy.pseudo_cross);
  }
}
BENCHMARK(BM_BeginOuter)->Arg(5000)->Arg(20000);

void BM_InitSolve(benchmark::State& state) {
  const SyntheticData g = Make(5000, 100);
  const FrappeConfig cfg = Config(g.data);
  for (auto _ : state) {
    benchmark::DoNotOptimize(InitEstimator(g.data, cfg, nullptr, Rng(5)));
  }
}
BENCHMARK(BM_InitSolve)->Unit(benchmark::kMillisecond);

void BM_FitFrappe(benchmark::State& state) {
  const SyntheticData g = Make(static_cast<int>(state.range(0)), 100);
  const FrappeConfig cfg = Config(g.data);
  auto budget = PrivacyBudget::Create(0.5, 1e-3);
  const DesignSummary design = SummarizeDesign(g.data);
  FitOptions options;
  options.record_objective = false;
  options.design = &design;
  for (auto _ : state) {
    auto fit = FitFrappe(g.data, cfg, *budget, Rng(6), options);
    benchmark::DoNotOptimize(fit);
  }
}
BENCHMARK(BM_FitFrappe)->Arg(2000)->Arg(5000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Baseline(benchmark::State& state) {
  const SyntheticData g = Make(5000, 100);
  BaselineConfig cfg;
  cfg.algorithm = static_cast<BaselineAlgorithm>(state.range(0));
  cfg.clip_row = g.data.MaxRowNorm();
  if (cfg.algorithm == BaselineAlgorithm::kDpIght) {
    cfg.sparsity = 10;
  } else {
    cfg.lambda = 0.05;
  }
  auto budget = PrivacyBudget::Create(0.5, 1e-3);
  const DesignSummary design = SummarizeDesign(g.data);
  FitOptions options;
  options.design = &design;
  for (auto _ : state) {
    auto fit = FitBaseline(g.data, cfg, *budget, Rng(7), options);
    benchmark::DoNotOptimize(fit);
  }
  state.SetLabel(std::string(BaselineName(cfg.algorithm)));
}
BENCHMARK(BM_Baseline)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace frappe

BENCHMARK_MAIN();
