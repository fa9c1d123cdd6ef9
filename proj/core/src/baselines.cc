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

#include "frappe/baselines.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "absl/strings/str_cat.h"

namespace frappe {
namespace {

constexpr std::uint64_t kBaselineGradStream = 11;

// Shared setup: row scaling, design summary and step size.
struct Prepared {
  Dataset data;
  DesignSummary own;
  const DesignSummary* external;
  double step;
  bool rescaled;

  const DesignSummary& design() const {
    return external != nullptr ? *external : own;
  }
};

Prepared Prepare(const Dataset& d, const BaselineConfig& cfg,
                 const FitOptions& options) {
  const bool rescale = d.MaxRowNorm() > cfg.clip_row;
  Prepared out{rescale ? ScaleRows(d, cfg.clip_row) : d, {}, options.design, 0.0,
               rescale};
  if (out.external == nullptr || rescale) {
    out.own = SummarizeDesign(out.data);
    out.external = nullptr;
  }
  out.step = cfg.step_size.has_value()
                 ? *cfg.step_size
                 : 1.0 / (2.0 * std::max(out.design().lipschitz, 1e-300));
  return out;
}

void Observe(const FitOptions& options, int iteration, const Vector& w) {
  if (options.observer != nullptr && *options.observer) {
    (*options.observer)(iteration, w);
  }
}

// Squared-loss gradient perturbation shared by gp_lasso and dp_ight. The
// `project` callback maps the noisy gradient step onto the feasible set.
template <typename Project>
absl::StatusOr<BaselineFit> SquareLossDescent(
    const Dataset& d, const BaselineConfig& cfg,
    const std::optional<PrivacyBudget>& budget, const Rng& rng,
    const FitOptions& options, Project project) {
  if (absl::Status st = cfg.Validate(d.num_features()); !st.ok()) return st;
  Prepared prep = Prepare(d, cfg, options);
  const Dataset& data = prep.data;
  const int p = data.num_features();

  BaselineFit fit;
  fit.step_size = prep.step;
  fit.rows_rescaled = prep.rescaled;

  Vector y = data.responses();
  if (budget.has_value()) {
    const double c_y = cfg.clip_response.value_or(cfg.clip_row * cfg.clip_weight);
    y = y.cwiseMax(-c_y).cwiseMin(c_y);
    // Per-record gradient x (x^T b - y) has norm <= c_x (c_x c_beta + c_y);
    // replacing one record moves the average by twice that over N.
    fit.gradient_bound =
        2.0 * cfg.clip_row * (cfg.clip_row * cfg.clip_weight + c_y);
    fit.noise_variance = GradientPerturbationVariance(
        budget->epsilon(), budget->delta(), fit.gradient_bound,
        cfg.total_iters, data.num_rows());
  }
  const Vector cross =
      data.features().transpose() * y / static_cast<double>(data.num_rows());

  Vector beta = Vector::Zero(p);
  for (int t = 1; t <= cfg.total_iters; ++t) {
    Vector grad = prep.design().gram * beta - cross;
    if (budget.has_value()) {
      Rng noise_rng =
          rng.Derive({kBaselineGradStream, static_cast<std::uint64_t>(t)});
      grad += GaussianNoise(noise_rng, p, fit.noise_variance);
      fit.noise.Record(NoiseStage::kGrad, p);
    }
    beta = ClipL2(project(beta - prep.step * grad, prep.step), cfg.clip_weight);
    Observe(options, t, beta);
  }
  fit.weights = WeightVector(std::move(beta));
  return fit;
}

}  // namespace

std::string_view BaselineName(BaselineAlgorithm algorithm) {
  switch (algorithm) {
    case BaselineAlgorithm::kSgpLad:
      return "sgp_lad";
    case BaselineAlgorithm::kGpLasso:
      return "gp_lasso";
    case BaselineAlgorithm::kDpIght:
      return "dp_ight";
  }
  return "unknown";
}

absl::Status BaselineConfig::Validate(int dim) const {
  if (total_iters < 1) {
    return absl::InvalidArgumentError("total_iters must be >= 1");
  }
  if (step_size.has_value() && !(*step_size > 0.0)) {
    return absl::InvalidArgumentError("step_size must be positive");
  }
  if (!(clip_weight > 0.0) || !(clip_row > 0.0)) {
    return absl::InvalidArgumentError("clip constants must be positive");
  }
  if (clip_response.has_value() && !(*clip_response > 0.0)) {
    return absl::InvalidArgumentError("clip_response must be positive");
  }
  const bool wants_sparsity = algorithm == BaselineAlgorithm::kDpIght;
  if (wants_sparsity) {
    if (!sparsity.has_value() || lambda.has_value()) {
      return absl::InvalidArgumentError(
          "dp_ight takes a sparsity target and no lambda");
    }
    if (*sparsity < 1 || *sparsity > dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("sparsity target ", *sparsity, " outside [1, ", dim, "]"));
    }
  } else {
    if (!lambda.has_value() || sparsity.has_value()) {
      return absl::InvalidArgumentError(absl::StrCat(
          std::string(BaselineName(algorithm)), " takes a lambda and no sparsity target"));
    }
    if (!(*lambda >= 0.0)) {
      return absl::InvalidArgumentError("lambda must be nonnegative");
    }
  }
  return absl::OkStatus();
}

Vector HardThreshold(const Vector& w, int s) {
  const int p = static_cast<int>(w.size());
  if (s >= p) return w;
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(w[a]) > std::abs(w[b]);
  });
  Vector out = Vector::Zero(p);
  for (int k = 0; k < std::max(s, 0); ++k) out[order[k]] = w[order[k]];
  return out;
}

double AbsSubgradient(double r) {
  return r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
}

absl::StatusOr<BaselineFit> FitSgpLad(const Dataset& d,
                                      const BaselineConfig& cfg,
                                      const std::optional<PrivacyBudget>& budget,
                                      const Rng& rng,
                                      const FitOptions& options) {
  if (absl::Status st = cfg.Validate(d.num_features()); !st.ok()) return st;
  Prepared prep = Prepare(d, cfg, options);
  const Dataset& data = prep.data;
  const int p = data.num_features();
  const double lambda = *cfg.lambda;

  BaselineFit fit;
  fit.step_size = prep.step;
  fit.rows_rescaled = prep.rescaled;
  if (budget.has_value()) {
    fit.gradient_bound = cfg.clip_row + lambda * std::sqrt(static_cast<double>(p));
    fit.noise_variance = GradientPerturbationVariance(
        budget->epsilon(), budget->delta(), fit.gradient_bound,
        cfg.total_iters, data.num_rows());
  }

  const double inv_n = 1.0 / data.num_rows();
  Vector beta = Vector::Zero(p);
  Vector signs(data.num_rows());
  for (int t = 1; t <= cfg.total_iters; ++t) {
    const Vector r = data.responses() - data.features() * beta;
    for (Eigen::Index i = 0; i < r.size(); ++i) signs[i] = AbsSubgradient(r[i]);
    Vector g = -inv_n * (data.features().transpose() * signs);
    for (int j = 0; j < p; ++j) g[j] += lambda * AbsSubgradient(beta[j]);
    if (budget.has_value()) {
      Rng noise_rng =
          rng.Derive({kBaselineGradStream, static_cast<std::uint64_t>(t)});
      g += GaussianNoise(noise_rng, p, fit.noise_variance);
      fit.noise.Record(NoiseStage::kGrad, p);
    }
    const double eta = prep.step / std::sqrt(static_cast<double>(t));
    beta = ClipL2(beta - eta * g, cfg.clip_weight);
    Observe(options, t, beta);
  }
  fit.weights = WeightVector(std::move(beta));
  return fit;
}

absl::StatusOr<BaselineFit> FitGpLasso(
    const Dataset& d, const BaselineConfig& cfg,
    const std::optional<PrivacyBudget>& budget, const Rng& rng,
    const FitOptions& options) {
  const double lambda = cfg.lambda.value_or(0.0);
  return SquareLossDescent(
      d, cfg, budget, rng, options,
      [lambda](const Vector& z, double step) {
        return SoftThreshold(z, lambda * step);
      });
}

absl::StatusOr<BaselineFit> FitDpIght(
    const Dataset& d, const BaselineConfig& cfg,
    const std::optional<PrivacyBudget>& budget, const Rng& rng,
    const FitOptions& options) {
  const int s = cfg.sparsity.value_or(d.num_features());
  return SquareLossDescent(
      d, cfg, budget, rng, options,
      [s](const Vector& z, double) { return HardThreshold(z, s); });
}

absl::StatusOr<BaselineFit> FitBaseline(
    const Dataset& d, const BaselineConfig& cfg,
    const std::optional<PrivacyBudget>& budget, const Rng& rng,
    const FitOptions& options) {
  switch (cfg.algorithm) {
    case BaselineAlgorithm::kSgpLad:
      return FitSgpLad(d, cfg, budget, rng, options);
    case BaselineAlgorithm::kGpLasso:
      return FitGpLasso(d, cfg, budget, rng, options);
    case BaselineAlgorithm::kDpIght:
      return FitDpIght(d, cfg, budget, rng, options);
  }
  return absl::InvalidArgumentError("unknown baseline");
}

}  // namespace frappe
