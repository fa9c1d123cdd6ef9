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

#include "frappe/harness/plan.h"
#include "harness/string_view.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace frappe::harness {
namespace {

constexpr std::pair<Scenario, std::string_view> kScenarioNames[] = {
    {Scenario::kNoiseTable, "noise-table"},
    {Scenario::kSparsitySweep, "sparsity-sweep"},
    {Scenario::kEpsilonSweep, "epsilon-sweep"},
    {Scenario::kTimeVsMse, "time-vs-mse"},
    {Scenario::kRealData, "real-data"},
};

constexpr std::pair<Algorithm, std::string_view> kAlgorithmNames[] = {
    {Algorithm::kFrappe, "frappe"},
    {Algorithm::kFrappeNonPrivate, "frappe-nonprivate"},
    {Algorithm::kSgpLad, "sgp_lad"},
    {Algorithm::kGpLasso, "gp_lasso"},
    {Algorithm::kDpIght, "dp_ight"},
};

}  // namespace

std::string_view ScenarioName(Scenario s) {
  for (const auto& [value, name] : kScenarioNames) {
    if (value == s) return name;
  }
  return "unknown";
}

absl::StatusOr<Scenario> ScenarioFromName(std::string_view name) {
  for (const auto& [value, n] : kScenarioNames) {
    if (n == name) return value;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown scenario '", AsAbsl(name), "'"));
}

std::string_view AlgorithmName(Algorithm a) {
  for (const auto& [value, name] : kAlgorithmNames) {
    if (value == a) return name;
  }
  return "unknown";
}

absl::StatusOr<Algorithm> AlgorithmFromName(std::string_view name) {
  for (const auto& [value, n] : kAlgorithmNames) {
    if (n == name) return value;
  }
  // Accept dashes for the baseline names.
  if (name == "sgp-lad") return Algorithm::kSgpLad;
  if (name == "gp-lasso") return Algorithm::kGpLasso;
  if (name == "dp-ight") return Algorithm::kDpIght;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown algorithm '", AsAbsl(name), "'"));
}

bool UsesAbsoluteLoss(Algorithm a) {
  return a == Algorithm::kFrappe || a == Algorithm::kFrappeNonPrivate ||
         a == Algorithm::kSgpLad;
}

bool SelectsSparsity(Algorithm a) { return a == Algorithm::kDpIght; }

std::vector<Cell> CrossCells(const std::vector<int>& num_rows,
                             const std::vector<int>& dims,
                             const std::vector<int>& sparsities,
                             const std::vector<double>& epsilons,
                             const std::vector<NoiseFamily>& noises) {
  std::vector<Cell> cells;
  for (NoiseFamily noise : noises) {
    for (int n : num_rows) {
      for (int p : dims) {
        for (int s : sparsities) {
          for (double eps : epsilons) cells.push_back({n, p, s, eps, noise});
        }
      }
    }
  }
  return cells;
}

ExperimentPlan DefaultPlan(Scenario scenario) {
  ExperimentPlan plan;
  plan.scenario = scenario;
  plan.algorithms = {Algorithm::kFrappe, Algorithm::kSgpLad,
                     Algorithm::kGpLasso, Algorithm::kDpIght};
  const std::vector<NoiseFamily> all_noise = {
      NoiseFamily::kNormal, NoiseFamily::kStudentT2, NoiseFamily::kCauchy};
  switch (scenario) {
    case Scenario::kNoiseTable:
      plan.cells = CrossCells({2000, 5000, 10000}, {100}, {10}, {0.5}, all_noise);
      break;
    case Scenario::kSparsitySweep:
      plan.cells = CrossCells({5000}, {100}, {1, 5, 10, 20, 30}, {0.5}, all_noise);
      break;
    case Scenario::kEpsilonSweep:
      plan.cells = CrossCells({5000}, {100}, {10}, {0.1, 0.25, 0.5, 1.0},
                              {NoiseFamily::kCauchy});
      break;
    case Scenario::kTimeVsMse:
      plan.cells = CrossCells({5000}, {100}, {10}, {0.5}, {NoiseFamily::kCauchy});
      plan.replications = 1;
      break;
    case Scenario::kRealData:
      plan.cells = {Cell{0, 0, 10, 0.5, NoiseFamily::kNormal}};
      break;
  }
  return plan;
}

absl::Status ExperimentPlan::Validate() const {
  if (replications < 1) {
    return absl::InvalidArgumentError("replications must be >= 1");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError("delta must lie in (0, 1)");
  }
  if (grid_size < 2) return absl::InvalidArgumentError("grid_size must be >= 2");
  if (format != "csv" && format != "json") {
    return absl::InvalidArgumentError(
        absl::StrCat("format must be csv or json, got '", format, "'"));
  }
  const int total = frappe.outer_iters * frappe.inner_iters;
  if (baseline_iters.has_value() && *baseline_iters != total) {
    return absl::InvalidArgumentError(absl::StrCat(
        "baseline total_iters = ", *baseline_iters,
        " must equal the solver's V * T = ", total));
  }
  if (scenario == Scenario::kRealData) {
    if (data.path.empty()) {
      return absl::InvalidArgumentError("real-data plans need data.path");
    }
    if (!(data.train_fraction > 0.0 && data.train_fraction < 1.0)) {
      return absl::InvalidArgumentError("train_fraction must lie in (0, 1)");
    }
    for (const Cell& c : cells) {
      if (!(c.epsilon > 0.0)) {
        return absl::InvalidArgumentError("epsilon must be positive");
      }
    }
    return absl::OkStatus();
  }
  for (const Cell& c : cells) {
    if (c.num_rows < 2 || c.dim < 1 || c.sparsity < 1 || c.sparsity > c.dim) {
      return absl::InvalidArgumentError(absl::StrCat(
          "malformed cell N=", c.num_rows, " p=", c.dim, " s=", c.sparsity));
    }
    if (!(c.epsilon > 0.0)) {
      return absl::InvalidArgumentError("epsilon must be positive");
    }
  }
  for (double f : checkpoints) {
    if (!(f > 0.0 && f <= 1.0)) {
      return absl::InvalidArgumentError("checkpoints must lie in (0, 1]");
    }
  }
  return absl::OkStatus();
}

}  // namespace frappe::harness
