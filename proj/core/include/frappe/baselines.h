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

#ifndef FRAPPE_BASELINES_H_
#define FRAPPE_BASELINES_H_

#include <optional>
#include <string_view>

#include "absl/status/statusor.h"
#include "frappe/core.h"
#include "frappe/design.h"
#include "frappe/dp_mechanisms.h"
#include "frappe/frappe_solver.h"
#include "frappe/random.h"

namespace frappe {

enum class BaselineAlgorithm { kSgpLad, kGpLasso, kDpIght };

std::string_view BaselineName(BaselineAlgorithm algorithm);

struct BaselineConfig {
  BaselineAlgorithm algorithm = BaselineAlgorithm::kGpLasso;
  int total_iters = 500;
  // Unset means 1/(2L). SgpLAD decays it as step / sqrt(t).
  std::optional<double> step_size;
  // Exactly one selector is used: lambda for sgp_lad and gp_lasso, sparsity
  // for dp_ight.
  std::optional<double> lambda;
  std::optional<int> sparsity;
  double clip_weight = 20.0;  // c_beta
  double clip_row = 1.0;      // c_x
  // Responses are clipped to [-c_y, c_y] in private square-loss fits so the
  // per-record gradient is bounded. Unset means c_x * c_beta.
  std::optional<double> clip_response;
  std::uint64_t seed = 0;

  absl::Status Validate(int dim) const;
};

struct BaselineFit {
  WeightVector weights;
  NoiseLedger noise;
  double step_size = 0.0;
  double noise_variance = 0.0;
  double gradient_bound = 0.0;
  bool rows_rescaled = false;
};

// Keeps the s largest-magnitude coordinates; equal magnitudes keep the lower
// index.
Vector HardThreshold(const Vector& w, int s);

// Subgradient of |r| with the convention d|r| = 0 at r = 0.
double AbsSubgradient(double r);

// Noisy subgradient descent on (1/N)||y - X b||_1 + lambda ||b||_1 with step
// eta / sqrt(t) and l2 clipping. Sensitivity bound c_x + lambda sqrt(p).
absl::StatusOr<BaselineFit> FitSgpLad(const Dataset& d,
                                      const BaselineConfig& cfg,
                                      const std::optional<PrivacyBudget>& budget,
                                      const Rng& rng,
                                      const FitOptions& options = {});

// Noisy proximal gradient (ISTA) on (1/2N)||y - X b||_2^2 + lambda ||b||_1.
absl::StatusOr<BaselineFit> FitGpLasso(
    const Dataset& d, const BaselineConfig& cfg,
    const std::optional<PrivacyBudget>& budget, const Rng& rng,
    const FitOptions& options = {});

// Noisy gradient step on the squared loss followed by hard thresholding to
// the configured sparsity.
absl::StatusOr<BaselineFit> FitDpIght(
    const Dataset& d, const BaselineConfig& cfg,
    const std::optional<PrivacyBudget>& budget, const Rng& rng,
    const FitOptions& options = {});

absl::StatusOr<BaselineFit> FitBaseline(
    const Dataset& d, const BaselineConfig& cfg,
    const std::optional<PrivacyBudget>& budget, const Rng& rng,
    const FitOptions& options = {});

}  // namespace frappe

#endif  // FRAPPE_BASELINES_H_
