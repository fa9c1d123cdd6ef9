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

#ifndef FRAPPE_HARNESS_PLAN_H_
#define FRAPPE_HARNESS_PLAN_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "frappe/baselines.h"
#include "frappe/core.h"
#include "frappe/synthetic_data.h"

namespace frappe::harness {

enum class Scenario {
  kNoiseTable,
  kSparsitySweep,
  kEpsilonSweep,
  kTimeVsMse,
  kRealData,
};

enum class Algorithm { kFrappe, kFrappeNonPrivate, kSgpLad, kGpLasso, kDpIght };

std::string_view ScenarioName(Scenario s);
absl::StatusOr<Scenario> ScenarioFromName(std::string_view name);
std::string_view AlgorithmName(Algorithm a);
absl::StatusOr<Algorithm> AlgorithmFromName(std::string_view name);

// True for the LAD-loss methods whose BIC uses the mean absolute residual.
bool UsesAbsoluteLoss(Algorithm a);
// True for dp_ight, which selects a sparsity target instead of lambda.
bool SelectsSparsity(Algorithm a);

// One synthetic configuration. Real-data plans use a single cell whose
// N/p are filled in from the loaded file and whose noise is ignored.
struct Cell {
  int num_rows = 5000;
  int dim = 100;
  int sparsity = 10;
  double epsilon = 0.5;
  NoiseFamily noise = NoiseFamily::kNormal;
};

struct DataOptions {
  std::string path;
  int response_column = 0;
  char delimiter = ',';
  bool normalize = true;
  double train_fraction = 0.8;
  // Stand-in for s in the bandwidth schedule when the truth is unknown.
  int bandwidth_sparsity = 10;
};

struct ExperimentPlan {
  Scenario scenario = Scenario::kNoiseTable;
  std::vector<Algorithm> algorithms;
  std::vector<Cell> cells;
  int replications = 10;
  std::uint64_t seed = 0;
  double delta = 1e-3;
  double rho = 0.1;
  int grid_size = 20;
  // Drops every noise stage from every algorithm.
  bool non_private = false;
  // Solver templates; c_x, c_beta, n and s are resolved per task.
  FrappeConfig frappe;
  // Baseline iterations default to V*T and must equal it when set.
  std::optional<int> baseline_iters;
  std::optional<double> baseline_step;
  // Unset c_x means the largest training row norm. Unset c_beta means
  // 1.25 ||beta*||_2 on synthetic data and `real_clip_weight` on real data.
  std::optional<double> clip_row;
  std::optional<double> clip_weight;
  double real_clip_weight = 10.0;
  // Skips BIC and fits this lambda (or sparsity target for dp_ight).
  std::optional<double> fixed_hyperparameter;
  DataOptions data;
  // Fractions of the iteration budget at which time-vs-mse samples the
  // solver path.
  std::vector<double> checkpoints = {0.1, 0.2, 0.3, 0.4, 0.5,
                                     0.6, 0.7, 0.8, 0.9, 1.0};
  int threads = 0;  // 0 uses std::thread::hardware_concurrency()
  std::string out;
  std::string format = "csv";

  absl::Status Validate() const;
};

// Defaults for each scenario: algorithms and the cell grid used in the
// experiments (p = 100, s = 10, eps = 0.5, N = 5000 unless swept).
ExperimentPlan DefaultPlan(Scenario scenario);

// Cartesian product of the listed axis values.
std::vector<Cell> CrossCells(const std::vector<int>& num_rows,
                             const std::vector<int>& dims,
                             const std::vector<int>& sparsities,
                             const std::vector<double>& epsilons,
                             const std::vector<NoiseFamily>& noises);

}  // namespace frappe::harness

#endif  // FRAPPE_HARNESS_PLAN_H_
