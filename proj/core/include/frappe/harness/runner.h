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

#ifndef FRAPPE_HARNESS_RUNNER_H_
#define FRAPPE_HARNESS_RUNNER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "frappe/core.h"
#include "frappe/harness/csv_io.h"
#include "frappe/harness/plan.h"
#include "frappe/harness/results.h"
#include "frappe/model_selection.h"

namespace frappe::harness {

// One (cell, replication, algorithm) unit of work.
struct Task {
  long index = 0;
  int cell_index = 0;
  int replication = 0;
  Algorithm algorithm = Algorithm::kFrappe;
};

// Tasks in output order: cell-major, then replication, then algorithm.
std::vector<Task> EnumerateTasks(const ExperimentPlan& plan);

// The data seed depends on (cell, replication) only, so every algorithm in a
// replication sees the same dataset.
std::uint64_t DataSeed(const ExperimentPlan& plan, const Task& task);
std::uint64_t AlgorithmSeed(const ExperimentPlan& plan, const Task& task);

// Resolved inputs for fitting one algorithm on one training set.
struct FitContext {
  const Dataset* train = nullptr;
  const DesignSummary* design = nullptr;
  Algorithm algorithm = Algorithm::kFrappe;
  std::optional<PrivacyBudget> budget;  // nullopt: non-private
  FrappeConfig frappe;
  BaselineConfig baseline;
  std::uint64_t seed = 0;
};

// Builds the solver configurations from the plan for the given training set.
// `sparsity` feeds the bandwidth schedule; `truth_norm`, when set, defines
// the default c_beta.
absl::StatusOr<FitContext> MakeFitContext(const ExperimentPlan& plan,
                                          Algorithm algorithm, double epsilon,
                                          const Dataset& train,
                                          const DesignSummary& design,
                                          int sparsity,
                                          std::optional<double> truth_norm,
                                          std::uint64_t seed);

// A single fit with the given lambda (or sparsity target for dp_ight).
// The random stream is derived from the hyperparameter value.
absl::StatusOr<WeightVector> FitOnce(const FitContext& ctx,
                                     double hyperparameter,
                                     const IterationObserver* observer = nullptr);

// Candidate grid for the context's algorithm.
std::vector<double> HyperparameterGrid(const FitContext& ctx, int grid_size);

// BIC selection over the grid, or a single fit when `fixed` is set.
absl::StatusOr<Selection> SelectAndFit(const FitContext& ctx, int grid_size,
                                       std::optional<double> fixed);

// Training data for one task: a synthetic draw with its truth, or a
// train/test split of the loaded real data. `cell` has N and p filled in.
struct TaskData {
  Cell cell;
  Dataset train;
  std::optional<Dataset> test;
  std::optional<WeightVector> truth;
};

absl::StatusOr<TaskData> PrepareTaskData(const ExperimentPlan& plan,
                                         const Task& task,
                                         const Dataset* real_data);

// MakeFitContext with the task's bandwidth sparsity, truth norm and seed.
absl::StatusOr<FitContext> MakeTaskContext(const ExperimentPlan& plan,
                                           const Task& task,
                                           const TaskData& data,
                                           const DesignSummary& design);

// Loads the plan's real-data file, or returns nullopt for synthetic plans.
absl::StatusOr<std::optional<Dataset>> LoadPlanData(const ExperimentPlan& plan);

// Executes one task. time-vs-mse tasks yield one row per checkpoint; every
// other scenario yields exactly one row. Failures become error rows.
std::vector<ExperimentResult> RunTask(const ExperimentPlan& plan,
                                      const Task& task,
                                      const Dataset* real_data = nullptr);

// Runs every task on a worker pool. Rows reach `sink` (when given) in task
// order as soon as all earlier tasks finished. Per-task failures are error
// rows; only an invalid plan, unreadable real data or a sink failure make
// the call fail.
absl::StatusOr<std::vector<ExperimentResult>> RunPlan(
    const ExperimentPlan& plan, ResultSink* sink = nullptr);

}  // namespace frappe::harness

#endif  // FRAPPE_HARNESS_RUNNER_H_
