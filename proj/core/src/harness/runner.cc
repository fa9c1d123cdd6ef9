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

#include "frappe/harness/runner.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>

#include "absl/strings/str_cat.h"
#include "frappe/baselines.h"
#include "frappe/design.h"
#include "frappe/frappe_solver.h"
#include "frappe/kernels.h"
#include "frappe/random.h"
#include "frappe/synthetic_data.h"
#include "json.hpp"

namespace frappe::harness {
namespace {

using Clock = std::chrono::steady_clock;
using Json = nlohmann::ordered_json;

constexpr std::uint64_t kDataTag = 0xda7a;
constexpr std::uint64_t kAlgorithmTag = 0xa160;
constexpr double kInf = std::numeric_limits<double>::infinity();

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool IsPrivate(const ExperimentPlan& plan, Algorithm a) {
  return !plan.non_private && a != Algorithm::kFrappeNonPrivate;
}

BaselineAlgorithm ToBaseline(Algorithm a) {
  switch (a) {
    case Algorithm::kSgpLad:
      return BaselineAlgorithm::kSgpLad;
    case Algorithm::kGpLasso:
      return BaselineAlgorithm::kGpLasso;
    default:
      return BaselineAlgorithm::kDpIght;
  }
}

bool IsFrappe(Algorithm a) {
  return a == Algorithm::kFrappe || a == Algorithm::kFrappeNonPrivate;
}

int TotalIters(const FitContext& ctx) {
  return IsFrappe(ctx.algorithm) ? ctx.frappe.outer_iters * ctx.frappe.inner_iters
                                 : ctx.baseline.total_iters;
}

Json ConfigSnapshot(const ExperimentPlan& plan, const FitContext& ctx,
                    std::uint64_t data_seed) {
  Json j;
  j["algorithm"] = std::string(AlgorithmName(ctx.algorithm));
  j["private"] = ctx.budget.has_value();
  if (ctx.budget.has_value()) {
    j["epsilon"] = ctx.budget->epsilon();
    j["delta"] = ctx.budget->delta();
  }
  j["data_seed"] = data_seed;
  j["algorithm_seed"] = ctx.seed;
  j["rho"] = plan.rho;
  j["grid_size"] = plan.grid_size;
  j["replications"] = plan.replications;
  if (IsFrappe(ctx.algorithm)) {
    const FrappeConfig& c = ctx.frappe;
    j["outer_iters"] = c.outer_iters;
    j["inner_iters"] = c.inner_iters;
    if (c.step_size.has_value()) j["step_size"] = *c.step_size;
    j["subsample_size"] = c.subsample_size;
    j["lambda_l1_init"] = c.lambda_l1_init;
    j["lambda_l2_init"] = c.lambda_l2_init;
    j["init_max_iters"] = c.init_max_iters;
    j["clip_row"] = c.clip_row;
    j["clip_weight"] = c.clip_weight;
    j["density_constant"] = c.density_constant;
    j["density_floor"] = c.density_floor;
    j["kernel"] = std::string(KernelName(c.kernel));
    if (c.bandwidth.kind == BandwidthSchedule::Kind::kFixed) {
      j["bandwidth"] = c.bandwidth.fixed;
    } else {
      j["bandwidth"] = "decaying";
      j["bandwidth_sparsity"] = c.bandwidth.sparsity;
    }
  } else {
    const BaselineConfig& c = ctx.baseline;
    j["total_iters"] = c.total_iters;
    if (c.step_size.has_value()) j["step_size"] = *c.step_size;
    j["clip_row"] = c.clip_row;
    j["clip_weight"] = c.clip_weight;
  }
  return j;
}

ExperimentResult Skeleton(const ExperimentPlan& plan, const Task& task,
                          const Cell& cell, double epsilon) {
  ExperimentResult r;
  r.scenario = std::string(ScenarioName(plan.scenario));
  r.algorithm = std::string(AlgorithmName(task.algorithm));
  r.num_rows = cell.num_rows;
  r.dim = cell.dim;
  r.sparsity_level = cell.sparsity;
  r.epsilon = epsilon;
  r.noise = plan.scenario == Scenario::kRealData
                ? "real"
                : std::string(NoiseFamilyName(cell.noise));
  r.replication = task.replication;
  r.seed = AlgorithmSeed(plan, task);
  r.task_index = task.index;
  return r;
}

void FillMetrics(const MetricReport& m, bool real, ExperimentResult& r) {
  r.mse = real ? m.mse_pred : m.mse_weights;
  r.mae = real ? m.mae_pred : m.mae_weights;
  r.f1 = real ? kNaN : m.f1;
  r.sparsity = m.sparsity;
}

}  // namespace

std::vector<Task> EnumerateTasks(const ExperimentPlan& plan) {
  std::vector<Task> tasks;
  long index = 0;
  for (int c = 0; c < static_cast<int>(plan.cells.size()); ++c) {
    for (int rep = 0; rep < plan.replications; ++rep) {
      for (Algorithm a : plan.algorithms) {
        tasks.push_back(Task{index++, c, rep, a});
      }
    }
  }
  return tasks;
}

std::uint64_t DataSeed(const ExperimentPlan& plan, const Task& task) {
  return Rng(plan.seed)
      .Derive({kDataTag, static_cast<std::uint64_t>(task.cell_index),
               static_cast<std::uint64_t>(task.replication)})
      .seed();
}

std::uint64_t AlgorithmSeed(const ExperimentPlan& plan, const Task& task) {
  return Rng(plan.seed)
      .Derive({kAlgorithmTag, static_cast<std::uint64_t>(task.cell_index),
               static_cast<std::uint64_t>(task.replication),
               static_cast<std::uint64_t>(task.algorithm)})
      .seed();
}

absl::StatusOr<FitContext> MakeFitContext(const ExperimentPlan& plan,
                                          Algorithm algorithm, double epsilon,
                                          const Dataset& train,
                                          const DesignSummary& design,
                                          int sparsity,
                                          std::optional<double> truth_norm,
                                          std::uint64_t seed) {
  FitContext ctx;
  ctx.train = &train;
  ctx.design = &design;
  ctx.algorithm = algorithm;
  ctx.seed = seed;
  if (IsPrivate(plan, algorithm)) {
    auto budget = PrivacyBudget::Create(epsilon, plan.delta);
    if (!budget.ok()) return budget.status();
    ctx.budget = *budget;
  }
  const double c_x = plan.clip_row.value_or(train.MaxRowNorm());
  double c_beta = plan.real_clip_weight;
  if (plan.clip_weight.has_value()) {
    c_beta = *plan.clip_weight;
  } else if (truth_norm.has_value()) {
    c_beta = 1.25 * *truth_norm;
  }
  if (!(c_x > 0.0) || !(c_beta > 0.0)) {
    return absl::InvalidArgumentError("clip radii must be positive");
  }

  ctx.frappe = plan.frappe;
  ctx.frappe.clip_row = c_x;
  ctx.frappe.clip_weight = c_beta;
  ctx.frappe.subsample_size =
      std::min(plan.frappe.subsample_size, train.num_rows());
  if (ctx.frappe.bandwidth.kind == BandwidthSchedule::Kind::kDecaying) {
    ctx.frappe.bandwidth.sparsity = std::max(sparsity, 1);
  }
  ctx.frappe.seed = seed;

  const int budget_iters = plan.frappe.outer_iters * plan.frappe.inner_iters;
  ctx.baseline.algorithm = ToBaseline(algorithm);
  ctx.baseline.total_iters = plan.baseline_iters.value_or(budget_iters);
  ctx.baseline.step_size = plan.baseline_step;
  ctx.baseline.clip_row = c_x;
  ctx.baseline.clip_weight = c_beta;
  ctx.baseline.seed = seed;
  return ctx;
}

absl::StatusOr<WeightVector> FitOnce(const FitContext& ctx,
                                     double hyperparameter,
                                     const IterationObserver* observer) {
  const Rng rng =
      Rng(ctx.seed).Derive({std::bit_cast<std::uint64_t>(hyperparameter)});
  FitOptions options;
  options.record_objective = false;
  options.design = ctx.design;
  options.observer = observer;
  if (IsFrappe(ctx.algorithm)) {
    FrappeConfig cfg = ctx.frappe;
    cfg.lambda = hyperparameter;
    auto fit = FitFrappe(*ctx.train, cfg, ctx.budget, rng, options);
    if (!fit.ok()) return fit.status();
    return std::move(fit->weights);
  }
  BaselineConfig cfg = ctx.baseline;
  if (SelectsSparsity(ctx.algorithm)) {
    cfg.sparsity = static_cast<int>(std::lround(hyperparameter));
  } else {
    cfg.lambda = hyperparameter;
  }
  auto fit = FitBaseline(*ctx.train, cfg, ctx.budget, rng, options);
  if (!fit.ok()) return fit.status();
  return std::move(fit->weights);
}

std::vector<double> HyperparameterGrid(const FitContext& ctx, int grid_size) {
  if (SelectsSparsity(ctx.algorithm)) {
    return DefaultSparsityGrid(ctx.train->num_features(), grid_size);
  }
  return DefaultLambdaGrid(*ctx.train, grid_size);
}

absl::StatusOr<Selection> SelectAndFit(const FitContext& ctx, int grid_size,
                                       std::optional<double> fixed) {
  const LossKind loss =
      UsesAbsoluteLoss(ctx.algorithm) ? LossKind::kAbsolute : LossKind::kSquared;
  std::vector<double> grid = fixed.has_value()
                                 ? std::vector<double>{*fixed}
                                 : HyperparameterGrid(ctx, grid_size);
  return BicSelect(*ctx.train, grid, loss,
                   [&ctx](double h) { return FitOnce(ctx, h); });
}

absl::StatusOr<TaskData> PrepareTaskData(const ExperimentPlan& plan,
                                         const Task& task,
                                         const Dataset* real_data) {
  Cell cell = plan.cells.at(task.cell_index);
  const std::uint64_t data_seed = DataSeed(plan, task);
  if (plan.scenario == Scenario::kRealData) {
    if (real_data == nullptr) {
      return absl::FailedPreconditionError("real data not loaded");
    }
    auto split = PrepareRealData(*real_data, plan.data.train_fraction,
                                 plan.data.normalize, data_seed);
    if (!split.ok()) return split.status();
    cell.num_rows = split->train.num_rows();
    cell.dim = split->train.num_features();
    cell.sparsity = 0;
    return TaskData{cell, std::move(split->train), std::move(split->test),
                    std::nullopt};
  }
  SyntheticSpec spec;
  spec.num_rows = cell.num_rows;
  spec.dim = cell.dim;
  spec.sparsity = cell.sparsity;
  spec.noise = cell.noise;
  spec.rho = plan.rho;
  spec.seed = data_seed;
  auto data = Generate(spec);
  if (!data.ok()) return data.status();
  return TaskData{cell, std::move(data->data), std::nullopt,
                  std::move(data->truth)};
}

absl::StatusOr<FitContext> MakeTaskContext(const ExperimentPlan& plan,
                                           const Task& task,
                                           const TaskData& data,
                                           const DesignSummary& design) {
  const bool real = plan.scenario == Scenario::kRealData;
  std::optional<double> truth_norm;
  if (data.truth.has_value()) truth_norm = data.truth->values().norm();
  return MakeFitContext(
      plan, task.algorithm, plan.cells.at(task.cell_index).epsilon, data.train,
      design, real ? plan.data.bandwidth_sparsity : data.cell.sparsity,
      truth_norm, AlgorithmSeed(plan, task));
}

absl::StatusOr<std::optional<Dataset>> LoadPlanData(const ExperimentPlan& plan) {
  if (plan.scenario != Scenario::kRealData) return std::optional<Dataset>();
  CsvOptions options;
  options.response_column = plan.data.response_column;
  options.delimiter = plan.data.delimiter;
  auto loaded = LoadCsv(plan.data.path, options);
  if (!loaded.ok()) return loaded.status();
  return std::optional<Dataset>(*std::move(loaded));
}

std::vector<ExperimentResult> RunTask(const ExperimentPlan& plan,
                                      const Task& task,
                                      const Dataset* real_data) {
  const Clock::time_point start = Clock::now();
  const bool real = plan.scenario == Scenario::kRealData;
  Cell cell = plan.cells.at(task.cell_index);
  const double epsilon = IsPrivate(plan, task.algorithm) ? cell.epsilon : kInf;
  const std::uint64_t data_seed = DataSeed(plan, task);

  auto error_row = [&](const absl::Status& status) {
    ExperimentResult r = Skeleton(plan, task, cell, epsilon);
    r.error = std::string(status.message());
    if (r.error.empty()) r.error = status.ToString();
    r.seconds = Seconds(start);
    return std::vector<ExperimentResult>{std::move(r)};
  };

  auto data = PrepareTaskData(plan, task, real_data);
  if (!data.ok()) return error_row(data.status());
  cell = data->cell;
  const DesignSummary design = SummarizeDesign(data->train);
  auto ctx = MakeTaskContext(plan, task, *data, design);
  if (!ctx.ok()) return error_row(ctx.status());

  auto evaluate = [&](const WeightVector& w) {
    return real ? EvaluateOnTest(w, *data->test)
                : EvaluateAgainstTruth(w, *data->truth);
  };
  Json config = ConfigSnapshot(plan, *ctx, data_seed);

  auto selection = SelectAndFit(*ctx, plan.grid_size, plan.fixed_hyperparameter);
  if (!selection.ok()) return error_row(selection.status());

  if (plan.scenario != Scenario::kTimeVsMse) {
    ExperimentResult r = Skeleton(plan, task, cell, epsilon);
    FillMetrics(evaluate(selection->weights), real, r);
    r.hyperparameter = selection->selected;
    r.seconds = Seconds(start);
    r.config_json = config.dump();
    return {std::move(r)};
  }

  // Replays the selected fit and samples its path at budget fractions.
  const int total = TotalIters(*ctx);
  std::vector<int> marks;
  for (double f : plan.checkpoints) {
    marks.push_back(std::clamp(static_cast<int>(std::ceil(f * total - 1e-9)),
                               1, total));
  }
  std::vector<ExperimentResult> rows(marks.size());
  const Clock::time_point fit_start = Clock::now();
  IterationObserver observer = [&](int iteration, const Vector& w) {
    for (std::size_t k = 0; k < marks.size(); ++k) {
      if (marks[k] != iteration) continue;
      ExperimentResult& r = rows[k];
      r = Skeleton(plan, task, cell, epsilon);
      r.seconds = Seconds(fit_start);
      FillMetrics(evaluate(WeightVector(w)), real, r);
      r.hyperparameter = selection->selected;
      Json c = config;
      c["checkpoint"] = plan.checkpoints[k];
      c["iteration"] = iteration;
      r.config_json = c.dump();
    }
  };
  auto replay = FitOnce(*ctx, selection->selected, &observer);
  if (!replay.ok()) return error_row(replay.status());
  return rows;
}

absl::StatusOr<std::vector<ExperimentResult>> RunPlan(
    const ExperimentPlan& plan, ResultSink* sink) {
  if (absl::Status s = plan.Validate(); !s.ok()) return s;
  auto real_data = LoadPlanData(plan);
  if (!real_data.ok()) return real_data.status();
  const std::vector<Task> tasks = EnumerateTasks(plan);
  const Dataset* real = real_data->has_value() ? &**real_data : nullptr;

  int workers = plan.threads > 0
                    ? plan.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max<int>(1, tasks.size()));

  std::vector<std::optional<std::vector<ExperimentResult>>> done(tasks.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      std::vector<ExperimentResult> rows = RunTask(plan, tasks[i], real);
      std::lock_guard<std::mutex> lock(mu);
      done[i] = std::move(rows);
      ready.notify_one();
    }
  };
  std::vector<std::thread> pool;
  if (workers > 1) {
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  // Collector: emits rows strictly in task order.
  std::vector<ExperimentResult> results;
  absl::Status sink_status;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::vector<ExperimentResult> rows;
    if (workers > 1) {
      std::unique_lock<std::mutex> lock(mu);
      ready.wait(lock, [&] { return done[i].has_value(); });
      rows = std::move(*done[i]);
      done[i].reset();
    } else {
      rows = RunTask(plan, tasks[i], real);
    }
    for (ExperimentResult& r : rows) {
      if (sink != nullptr && sink_status.ok()) sink_status = sink->Append(r);
      results.push_back(std::move(r));
    }
  }
  for (std::thread& t : pool) t.join();
  if (!sink_status.ok()) return sink_status;
  return results;
}

}  // namespace frappe::harness
