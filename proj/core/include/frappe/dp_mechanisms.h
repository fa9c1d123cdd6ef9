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

#ifndef FRAPPE_DP_MECHANISMS_H_
#define FRAPPE_DP_MECHANISMS_H_

#include <array>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "frappe/core.h"
#include "frappe/random.h"

namespace frappe {

// Gaussian-mechanism variances for the three noise stages of the solver.
//
//   init: 24 c_x^2 log(n / (N delta)) / (eps^2 lambda_02^2 N^2)
//   kde:  24 B^2 log(1 / delta) V / (eps^2 N^2 h_v^2)
//   grad: 6 G^2 log(1 / delta) T V / (eps^2 N^2),  G = 4 c_x^2 c_beta + c_f0
//
// These use the total (eps, delta); the even three-way split is already
// folded into the constants.
struct NoiseScales {
  double init_variance = 0.0;
  std::vector<double> kde_variance;  // kde_variance[v - 1] for v = 1..V
  double grad_variance = 0.0;
  double gradient_bound = 0.0;  // G

  double KdeVariance(int v) const { return kde_variance.at(v - 1); }
};

// Errors when log(n / (N delta)) <= 0, i.e. the subsample is too small for
// the initializer's output perturbation to be calibrated.
absl::StatusOr<NoiseScales> ComputeNoiseScales(const PrivacyBudget& budget,
                                               const FrappeConfig& cfg,
                                               int num_rows);

double GradientBound(double clip_row, double clip_weight,
                     double density_constant);

// Variance 6 G^2 log(1/delta) iters / (eps^2 N^2) for a gradient-perturbed
// solver that releases `iters` noisy gradients with sensitivity bound G.
double GradientPerturbationVariance(double epsilon, double delta,
                                    double gradient_bound, int iters,
                                    int num_rows);

// dim i.i.d. N(0, variance) draws. Requires variance > 0.
Vector GaussianNoise(Rng& rng, int dim, double variance);

// (split[stage] * eps, split[stage] * delta).
std::pair<double, double> EffectiveStageBudget(const PrivacyBudget& budget,
                                               NoiseStage stage);

// Counts mechanism releases. Scalar and initializer releases count once per
// call; gradient releases count once per coordinate, so a full solver run
// totals 1 + V + V*T*p.
class NoiseLedger {
 public:
  void Record(NoiseStage stage, int coordinates);

  int calls(NoiseStage stage) const {
    return calls_[static_cast<int>(stage)];
  }
  long long coordinates(NoiseStage stage) const {
    return coordinates_[static_cast<int>(stage)];
  }
  long long TotalDraws() const;

 private:
  std::array<int, 3> calls_{};
  std::array<long long, 3> coordinates_{};
};

}  // namespace frappe

#endif  // FRAPPE_DP_MECHANISMS_H_
