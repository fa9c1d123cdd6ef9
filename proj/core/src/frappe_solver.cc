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

#include "frappe/frappe_solver.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/strings/str_cat.h"

namespace frappe {
namespace {

// Stream tags for Rng::Derive. A draw at (stage, v, t) always comes from the
// same child stream.
enum StreamTag : std::uint64_t {
  kSubsampleStream = 1,
  kInitNoiseStream = 2,
  kKdeNoiseStream = 3,
  kGradNoiseStream = 4,
};

double Sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

double ElasticNetLadObjective(const Dataset& d, const Vector& beta, double l1,
                              double l2) {
  const Vector r = d.responses() - d.features() * beta;
  return r.lpNorm<1>() / d.num_rows() + l1 * beta.lpNorm<1>() +
         0.5 * l2 * beta.squaredNorm();
}

// First n entries of a Fisher-Yates shuffle of 0..N-1, sorted.
std::vector<int> SampleWithoutReplacement(int num_rows, int n, Rng& rng) {
  std::vector<int> idx(num_rows);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < n; ++i) {
    const int j = i + static_cast<int>(rng.Below(num_rows - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

void WriteTraceCsv(const std::vector<TraceRecord>& trace, std::ostream& out) {
  auto put = [&out](double v) {
    if (std::isnan(v)) {
      out << "nan";
      return;
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
  };
  out << "v,t,objective,weight_change,density_estimate\n";
  for (const TraceRecord& r : trace) {
    out << r.outer << ',' << r.inner << ',';
    put(r.objective);
    out << ',';
    put(r.weight_change);
    out << ',';
    put(r.density_estimate);
    out << '\n';
  }
}

LadSolve SolveElasticNetLad(const Dataset& d, double l1, double l2,
                            double step, int max_iters) {
  const Matrix& x = d.features();
  const Vector& y = d.responses();
  const double inv_n = 1.0 / d.num_rows();

  Vector beta = Vector::Zero(d.num_features());
  LadSolve best{WeightVector(beta), ElasticNetLadObjective(d, beta, l1, l2), 0,
                false};
  const int tail = std::max(1, max_iters / 10);
  double best_before_tail = best.objective;

  Vector signs(d.num_rows());
  for (int t = 1; t <= max_iters; ++t) {
    const Vector r = y - x * beta;
    for (Eigen::Index i = 0; i < r.size(); ++i) signs[i] = Sign(r[i]);
    const Vector subgrad = -inv_n * (x.transpose() * signs);
    const double eta = step / std::sqrt(static_cast<double>(t));
    // prox of eta * (l1 ||.||_1 + l2/2 ||.||^2)
    beta = SoftThreshold(beta - eta * subgrad, eta * l1) / (1.0 + eta * l2);

    const double obj = ElasticNetLadObjective(d, beta, l1, l2);
    if (obj < best.objective) {
      best.weights = WeightVector(beta);
      best.objective = obj;
    }
    best.iterations = t;
    if (t == max_iters - tail) best_before_tail = best.objective;
    if (subgrad.squaredNorm() == 0.0 && l1 == 0.0 && l2 == 0.0) {
      // Exact stationary point of an unpenalized fit.
      best.converged = true;
      return best;
    }
  }
  best.converged = (best_before_tail - best.objective) <=
                   1e-6 * (1.0 + std::abs(best.objective));
  return best;
}

WeightVector InitEstimator(const Dataset& d, const FrappeConfig& cfg,
                           const NoiseScales* scales, const Rng& rng,
                           NoiseLedger* ledger, LadSolve* solve_info) {
  const int n = std::min(cfg.subsample_size, d.num_rows());
  Rng subsample_rng = rng.Derive({kSubsampleStream});
  const std::vector<int> rows =
      SampleWithoutReplacement(d.num_rows(), n, subsample_rng);
  const Dataset sub = d.Subset(rows);

  double step = 0.0;
  if (cfg.init_step.has_value()) {
    step = *cfg.init_step;
  } else {
    const double mean_norm = sub.features().rowwise().norm().mean();
    step = mean_norm > 0.0 ? cfg.clip_weight / mean_norm : cfg.clip_weight;
  }
  LadSolve solve = SolveElasticNetLad(sub, cfg.lambda_l1_init,
                                      cfg.lambda_l2_init, step,
                                      cfg.init_max_iters);
  Vector beta = solve.weights.values();
  if (scales != nullptr) {
    Rng noise_rng = rng.Derive({kInitNoiseStream});
    beta += GaussianNoise(noise_rng, d.num_features(), scales->init_variance);
    if (ledger != nullptr) ledger->Record(NoiseStage::kInit, d.num_features());
  }
  if (solve_info != nullptr) *solve_info = std::move(solve);
  return WeightVector(std::move(beta));
}

Vector PseudoResponses(const Dataset& d, const WeightVector& beta,
                       double noisy_density) {
  const Vector fitted = d.features() * beta.values();
  const double scale = 1.0 / noisy_density;
  Vector out(fitted.size());
  for (Eigen::Index i = 0; i < fitted.size(); ++i) {
    const double indicator = d.responses()[i] <= fitted[i] ? 1.0 : 0.0;
    out[i] = fitted[i] - scale * (indicator - 0.5);
  }
  return out;
}

Vector InnerGradient(const Dataset& d, const WeightVector& beta,
                     const Vector& pseudo) {
  const Vector r = d.features() * beta.values() - pseudo;
  return d.features().transpose() * r / static_cast<double>(d.num_rows());
}

double SurrogateLoss(const Dataset& d, const WeightVector& beta,
                     const Vector& pseudo) {
  return (pseudo - d.features() * beta.values()).squaredNorm() /
         (2.0 * d.num_rows());
}

double PenalizedLadObjective(const Dataset& d, const Vector& beta,
                             double lambda) {
  const Vector r = d.responses() - d.features() * beta;
  return r.lpNorm<1>() / d.num_rows() + lambda * beta.lpNorm<1>();
}

absl::StatusOr<int> TheoreticalOuterIters(int num_rows, int subsample_size,
                                          int sparsity, int dim) {
  if (dim < 2) {
    return absl::InvalidArgumentError("outer-iteration bound needs p >= 2");
  }
  const double log_p = std::log(static_cast<double>(dim));
  const double s_log_p = sparsity * log_p;
  if (!(subsample_size > s_log_p)) {
    return absl::FailedPreconditionError(absl::StrCat(
        "subsample n = ", subsample_size, " <= s log p = ", s_log_p,
        "; the outer-iteration bound does not apply"));
  }
  if (!(num_rows > log_p)) {
    return absl::FailedPreconditionError("N must exceed log p");
  }
  const double bound = 2.0 * std::log(num_rows / log_p) /
                       std::log(subsample_size / s_log_p);
  // Round away float noise before the ceiling so exact integers stay put.
  return static_cast<int>(std::ceil(bound - 1e-12));
}

FrappeSolver::FrappeSolver(const Dataset& d, const FrappeConfig& cfg,
                           std::optional<NoiseScales> scales,
                           const DesignSummary& design, double step_size)
    : data_(d),
      cfg_(cfg),
      scales_(std::move(scales)),
      design_(design),
      step_size_(step_size),
      kernel_(Kernel::Make(cfg.kernel)) {}

FrappeState FrappeSolver::Initialize(const Rng& rng, LadSolve* solve_info) {
  FrappeState state;
  state.weights = InitEstimator(data_, cfg_, scales_ ? &*scales_ : nullptr,
                                rng, &ledger_, solve_info);
  state.lambda = cfg_.lambda;
  return state;
}

void FrappeSolver::BeginOuter(FrappeState& state, const Rng& rng) {
  state.outer_index += 1;
  state.inner_index = 0;
  const int v = state.outer_index;
  const double h = BandwidthAt(v, data_.num_rows(), cfg_.bandwidth);
  const Vector residuals =
      data_.responses() - data_.features() * state.weights.values();
  const double variance = scales_ ? scales_->KdeVariance(v) : 0.0;
  Rng kde_rng = rng.Derive({kKdeNoiseStream, static_cast<std::uint64_t>(v)});
  state.noisy_density =
      PrivateKdeAtZero({residuals.data(), static_cast<std::size_t>(residuals.size())},
                       kernel_, h, variance, cfg_.density_floor, kde_rng);
  if (scales_) ledger_.Record(NoiseStage::kKde, 1);
  state.pseudo_responses =
      PseudoResponses(data_, state.weights, state.noisy_density);
  state.pseudo_cross = data_.features().transpose() * state.pseudo_responses /
                       static_cast<double>(data_.num_rows());
}

FrappeState FrappeSolver::InnerStep(FrappeState state, const Rng& rng) {
  FrappeState next = std::move(state);
  next.inner_index += 1;
  const Vector beta = next.weights.values();
  Vector grad = design_.gram * beta - next.pseudo_cross;
  if (scales_) {
    Rng grad_rng =
        rng.Derive({kGradNoiseStream, static_cast<std::uint64_t>(next.outer_index),
                    static_cast<std::uint64_t>(next.inner_index)});
    grad += GaussianNoise(grad_rng, data_.num_features(), scales_->grad_variance);
    ledger_.Record(NoiseStage::kGrad, data_.num_features());
  }
  Vector updated = ClipL2(
      SoftThreshold(beta - step_size_ * grad, next.lambda * step_size_),
      cfg_.clip_weight);

  TraceRecord rec;
  rec.outer = next.outer_index;
  rec.inner = next.inner_index;
  rec.objective = record_objective_
                      ? PenalizedLadObjective(data_, updated, next.lambda)
                      : std::numeric_limits<double>::quiet_NaN();
  rec.weight_change = (updated - beta).norm();
  rec.density_estimate = next.noisy_density;
  rec.weight_norm = updated.norm();
  next.trace.push_back(rec);
  next.weights = WeightVector(std::move(updated));
  return next;
}

absl::StatusOr<FrappeFit> FitFrappe(const Dataset& d, const FrappeConfig& cfg,
                                    const std::optional<PrivacyBudget>& budget,
                                    const Rng& rng, const FitOptions& options) {
  if (absl::Status st = cfg.Validate(d.num_rows()); !st.ok()) return st;

  FrappeFit fit;
  const bool rescale = d.MaxRowNorm() > cfg.clip_row;
  const Dataset scaled = rescale ? ScaleRows(d, cfg.clip_row) : d;
  DesignSummary own_design;
  const DesignSummary* design = options.design;
  if (design == nullptr || rescale) {
    own_design = SummarizeDesign(scaled);
    design = &own_design;
  }

  std::optional<NoiseScales> scales;
  if (budget.has_value()) {
    auto computed = ComputeNoiseScales(*budget, cfg, scaled.num_rows());
    if (!computed.ok()) return computed.status();
    scales = *std::move(computed);
  }

  const double step = cfg.step_size.has_value()
                          ? *cfg.step_size
                          : 1.0 / (2.0 * std::max(design->lipschitz, 1e-300));
  fit.diagnostics.step_size = step;
  fit.diagnostics.lipschitz = design->lipschitz;
  fit.diagnostics.strong_convexity = design->strong_convexity;
  fit.diagnostics.clip_row = cfg.clip_row;
  fit.diagnostics.rows_rescaled = rescale;
  fit.diagnostics.scales = scales;
  if (auto bound = TheoreticalOuterIters(scaled.num_rows(), cfg.subsample_size,
                                         cfg.bandwidth.sparsity,
                                         scaled.num_features());
      bound.ok()) {
    fit.diagnostics.theoretical_outer_iters = *bound;
  }

  FrappeSolver solver(scaled, cfg, scales, *design, step);
  solver.set_record_objective(options.record_objective);
  FrappeState state = solver.Initialize(rng, &fit.diagnostics.init);
  int iteration = 0;
  for (int v = 1; v <= cfg.outer_iters; ++v) {
    solver.BeginOuter(state, rng);
    for (int t = 1; t <= cfg.inner_iters; ++t) {
      state = solver.InnerStep(std::move(state), rng);
      ++iteration;
      if (options.observer != nullptr && *options.observer) {
        (*options.observer)(iteration, state.weights.values());
      }
    }
  }
  fit.weights = state.weights;
  fit.trace = std::move(state.trace);
  fit.noise = solver.ledger();
  return fit;
}

}  // namespace frappe
