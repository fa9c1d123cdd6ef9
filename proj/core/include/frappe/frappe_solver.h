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

#ifndef FRAPPE_FRAPPE_SOLVER_H_
#define FRAPPE_FRAPPE_SOLVER_H_

#include <functional>
#include <ostream>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "frappe/core.h"
#include "frappe/design.h"
#include "frappe/dp_mechanisms.h"
#include "frappe/kernels.h"
#include "frappe/random.h"

namespace frappe {

// One row of the solver trace, written after every inner step.
struct TraceRecord {
  int outer = 0;  // v, 1-based
  int inner = 0;  // t, 1-based
  // (1/N) ||y - X b||_1 + lambda ||b||_1; NaN when objective recording is off.
  double objective = 0.0;
  double weight_change = 0.0;  // ||b_{v,t} - b_{v,t-1}||_2
  double density_estimate = 0.0;
  double weight_norm = 0.0;
};

// Writes "v,t,objective,weight_change,density_estimate" rows with
// round-trip precision.
void WriteTraceCsv(const std::vector<TraceRecord>& trace, std::ostream& out);

struct FrappeState {
  WeightVector weights;
  int outer_index = 0;
  int inner_index = 0;
  double noisy_density = 0.0;
  Vector pseudo_responses;
  Vector pseudo_cross;  // X^T pseudo_responses / N
  double lambda = 0.0;
  std::vector<TraceRecord> trace;
};

// Called with the 1-based global inner iteration and the clipped iterate.
using IterationObserver = std::function<void(int, const Vector&)>;

struct FitOptions {
  // The objective costs one O(Np) pass per inner step.
  bool record_objective = true;
  // Precomputed summary of the (row-scaled) design; computed when null.
  const DesignSummary* design = nullptr;
  const IterationObserver* observer = nullptr;
};

// Result of the elastic-net LAD initializer solve.
struct LadSolve {
  WeightVector weights;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct FrappeDiagnostics {
  double step_size = 0.0;
  double lipschitz = 0.0;
  double strong_convexity = 0.0;
  double clip_row = 0.0;
  bool rows_rescaled = false;
  LadSolve init;
  std::optional<int> theoretical_outer_iters;
  std::optional<NoiseScales> scales;
};

struct FrappeFit {
  WeightVector weights;
  std::vector<TraceRecord> trace;
  NoiseLedger noise;
  FrappeDiagnostics diagnostics;
};

// Proximal subgradient descent on
//   (1/n) sum |y_i - x_i^T b| + l1 ||b||_1 + (l2 / 2) ||b||_2^2
// with step `step / sqrt(t)`. Returns the iterate with the lowest objective.
// converged is false when the best objective was still improving by more
// than 1e-6 (relative) over the final tenth of the iterations.
LadSolve SolveElasticNetLad(const Dataset& d, double l1, double l2,
                            double step, int max_iters);

// Subsamples n rows without replacement, solves the elastic-net LAD problem
// on them, then adds N(0, init_variance I_p) when `scales` is set.
WeightVector InitEstimator(const Dataset& d, const FrappeConfig& cfg,
                           const NoiseScales* scales, const Rng& rng,
                           NoiseLedger* ledger = nullptr,
                           LadSolve* solve_info = nullptr);

// x_i^T b - (1{y_i <= x_i^T b} - 1/2) / density.
Vector PseudoResponses(const Dataset& d, const WeightVector& beta,
                       double noisy_density);

// (1/N) sum_i x_i (x_i^T b - pseudo_i), the gradient of
// H(b) = (1/2N) sum_i (pseudo_i - x_i^T b)^2.
Vector InnerGradient(const Dataset& d, const WeightVector& beta,
                     const Vector& pseudo);

double SurrogateLoss(const Dataset& d, const WeightVector& beta,
                     const Vector& pseudo);

// (1/N) ||y - X b||_1 + lambda ||b||_1.
double PenalizedLadObjective(const Dataset& d, const Vector& beta,
                             double lambda);

// ceil(2 log(N / log p) / log(n / (s log p))). Requires p >= 2,
// n > s log p and N > log p.
absl::StatusOr<int> TheoreticalOuterIters(int num_rows, int subsample_size,
                                          int sparsity, int dim);

// One run of the double loop over a fixed dataset. The dataset must already
// satisfy ||x_i||_2 <= clip_row; FitFrappe takes care of that.
class FrappeSolver {
 public:
  // scales == nullopt runs the loop with every noise stage disabled.
  FrappeSolver(const Dataset& d, const FrappeConfig& cfg,
               std::optional<NoiseScales> scales, const DesignSummary& design,
               double step_size);

  FrappeState Initialize(const Rng& rng, LadSolve* solve_info = nullptr);
  // KDE, density noise and pseudo responses for the next outer index.
  void BeginOuter(FrappeState& state, const Rng& rng);
  // Perturbed soft-threshold step followed by l2 clipping.
  FrappeState InnerStep(FrappeState state, const Rng& rng);

  const NoiseLedger& ledger() const { return ledger_; }
  void set_record_objective(bool on) { record_objective_ = on; }

 private:
  const Dataset& data_;
  const FrappeConfig& cfg_;
  std::optional<NoiseScales> scales_;
  const DesignSummary& design_;
  double step_size_;
  Kernel kernel_;
  NoiseLedger ledger_;
  bool record_objective_ = true;
};

// Full solver: row scaling to clip_row, initialization, then V outer loops
// of T inner steps. budget == nullopt is the non-private variant.
absl::StatusOr<FrappeFit> FitFrappe(const Dataset& d, const FrappeConfig& cfg,
                                    const std::optional<PrivacyBudget>& budget,
                                    const Rng& rng,
                                    const FitOptions& options = {});

}  // namespace frappe

#endif  // FRAPPE_FRAPPE_SOLVER_H_
