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

#include "frappe/dp_mechanisms.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "frappe/kernels.h"

namespace frappe {

double GradientBound(double clip_row, double clip_weight,
                     double density_constant) {
  return 4.0 * clip_row * clip_row * clip_weight + density_constant;
}

double GradientPerturbationVariance(double epsilon, double delta,
                                    double gradient_bound, int iters,
                                    int num_rows) {
  const double n = static_cast<double>(num_rows);
  return 6.0 * gradient_bound * gradient_bound * std::log(1.0 / delta) *
         static_cast<double>(iters) / (epsilon * epsilon * n * n);
}

absl::StatusOr<NoiseScales> ComputeNoiseScales(const PrivacyBudget& budget,
                                               const FrappeConfig& cfg,
                                               int num_rows) {
  if (num_rows < 1) return absl::InvalidArgumentError("N must be >= 1");
  const double eps = budget.epsilon();
  const double delta = budget.delta();
  const double n_total = static_cast<double>(num_rows);
  const double init_log_arg =
      static_cast<double>(cfg.subsample_size) / (n_total * delta);
  if (!(init_log_arg > 1.0)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "infeasible budget: n / (N delta) = ", init_log_arg,
        " <= 1 makes the initializer noise variance non-positive"));
  }

  NoiseScales scales;
  const double c_x = cfg.clip_row;
  const double eps2_n2 = eps * eps * n_total * n_total;
  scales.init_variance = 24.0 * c_x * c_x * std::log(init_log_arg) /
                         (eps2_n2 * cfg.lambda_l2_init * cfg.lambda_l2_init);

  const double b = Kernel::Make(cfg.kernel).sup_bound();
  const double log_inv_delta = std::log(1.0 / delta);
  scales.kde_variance.reserve(cfg.outer_iters);
  for (int v = 1; v <= cfg.outer_iters; ++v) {
    const double h = BandwidthAt(v, num_rows, cfg.bandwidth);
    scales.kde_variance.push_back(24.0 * b * b * log_inv_delta *
                                  cfg.outer_iters / (eps2_n2 * h * h));
  }

  scales.gradient_bound =
      GradientBound(cfg.clip_row, cfg.clip_weight, cfg.density_constant);
  scales.grad_variance = GradientPerturbationVariance(
      eps, delta, scales.gradient_bound, cfg.inner_iters * cfg.outer_iters,
      num_rows);
  return scales;
}

Vector GaussianNoise(Rng& rng, int dim, double variance) {
  const double sd = std::sqrt(variance);
  Vector out(dim);
  for (int i = 0; i < dim; ++i) out[i] = sd * rng.Normal();
  return out;
}

std::pair<double, double> EffectiveStageBudget(const PrivacyBudget& budget,
                                               NoiseStage stage) {
  const double share = budget.stage_split()[static_cast<int>(stage)];
  return {share * budget.epsilon(), share * budget.delta()};
}

void NoiseLedger::Record(NoiseStage stage, int coordinates) {
  const int k = static_cast<int>(stage);
  calls_[k] += 1;
  coordinates_[k] += coordinates;
}

long long NoiseLedger::TotalDraws() const {
  return calls(NoiseStage::kInit) + calls(NoiseStage::kKde) +
         coordinates(NoiseStage::kGrad);
}

}  // namespace frappe
