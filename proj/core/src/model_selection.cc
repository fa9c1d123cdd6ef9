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

#include "frappe/model_selection.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>

namespace frappe {

SupportScores F1Score(const WeightVector& estimated,
                      const WeightVector& truth) {
  int true_positive = 0;
  int estimated_size = 0;
  int truth_size = 0;
  for (int i = 0; i < estimated.dim(); ++i) {
    const bool in_est = std::abs(estimated[i]) > kSupportTolerance;
    const bool in_truth = std::abs(truth[i]) > kSupportTolerance;
    estimated_size += in_est;
    truth_size += in_truth;
    true_positive += in_est && in_truth;
  }
  SupportScores out;
  out.precision =
      estimated_size > 0 ? static_cast<double>(true_positive) / estimated_size
                         : 0.0;
  out.recall =
      truth_size > 0 ? static_cast<double>(true_positive) / truth_size : 0.0;
  if (out.precision + out.recall > 0.0 && out.precision > 0.0 &&
      out.recall > 0.0) {
    out.f1 = 1.0 / ((1.0 / out.recall + 1.0 / out.precision) / 2.0);
  }
  return out;
}

double WeightMse(const WeightVector& estimated, const WeightVector& truth) {
  return (estimated.values() - truth.values()).squaredNorm() / estimated.dim();
}

PredictionErrors Predict(const Dataset& d, const WeightVector& w) {
  const Vector r = d.responses() - d.features() * w.values();
  return {r.squaredNorm() / d.num_rows(), r.lpNorm<1>() / d.num_rows()};
}

MetricReport EvaluateAgainstTruth(const WeightVector& estimated,
                                  const WeightVector& truth) {
  MetricReport out;
  out.mse_weights = WeightMse(estimated, truth);
  out.mae_weights =
      (estimated.values() - truth.values()).lpNorm<1>() / estimated.dim();
  const SupportScores scores = F1Score(estimated, truth);
  out.f1 = scores.f1;
  out.precision = scores.precision;
  out.recall = scores.recall;
  out.sparsity = estimated.SupportSize(kSupportTolerance);
  return out;
}

MetricReport EvaluateOnTest(const WeightVector& estimated,
                            const Dataset& test) {
  MetricReport out;
  const PredictionErrors errors = Predict(test, estimated);
  out.mse_pred = errors.mse;
  out.mae_pred = errors.mae;
  out.sparsity = estimated.SupportSize(kSupportTolerance);
  return out;
}

double TrainingLoss(const Dataset& d, const WeightVector& w, LossKind loss) {
  const PredictionErrors errors = Predict(d, w);
  return loss == LossKind::kAbsolute ? errors.mae : errors.mse;
}

double Bic(const Dataset& d, const WeightVector& w, LossKind loss) {
  const double n = static_cast<double>(d.num_rows());
  const double fit = std::max(TrainingLoss(d, w, loss), 1e-300);
  return n * std::log(fit) + w.SupportSize(kSupportTolerance) * std::log(n);
}

absl::StatusOr<Selection> BicSelect(const Dataset& d,
                                    std::span<const double> candidates,
                                    LossKind loss,
                                    const CandidateFitter& fitter) {
  if (candidates.empty()) {
    return absl::InvalidArgumentError("BIC selection needs candidates");
  }
  Selection out;
  out.scores.reserve(candidates.size());
  std::optional<std::size_t> best;
  std::vector<WeightVector> fits;
  fits.reserve(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    auto w = fitter(candidates[k]);
    if (!w.ok()) return w.status();
    CandidateScore score{candidates[k], Bic(d, *w, loss),
                         w->SupportSize(kSupportTolerance)};
    fits.push_back(*std::move(w));
    out.scores.push_back(score);
    auto key = [](const CandidateScore& s) {
      // NaN BIC sorts last.
      const double bic = std::isnan(s.bic) ? HUGE_VAL : s.bic;
      return std::make_tuple(bic, s.support_size, s.candidate);
    };
    if (!best.has_value() || key(score) < key(out.scores[*best])) best = k;
  }
  out.selected = out.scores[*best].candidate;
  out.weights = std::move(fits[*best]);
  return out;
}

std::vector<double> DefaultLambdaGrid(const Dataset& d, int count) {
  const Vector corr = d.features().transpose() * d.responses();
  const double lambda_max =
      corr.cwiseAbs().maxCoeff() / static_cast<double>(d.num_rows());
  std::vector<double> grid(std::max(count, 2));
  const int last = static_cast<int>(grid.size()) - 1;
  for (int k = 0; k <= last; ++k) {
    grid[k] = lambda_max * std::pow(10.0, -3.0 * k / last);
  }
  return grid;
}

std::vector<double> DefaultSparsityGrid(int dim, int count) {
  std::vector<double> grid;
  const int head = std::max(1, count / 2);
  for (int s = 1; s <= head && s <= dim; ++s) grid.push_back(s);
  for (int k = 1; static_cast<int>(grid.size()) < count; ++k) {
    const int s = head + 2 * k;
    if (s > dim) break;
    grid.push_back(s);
  }
  return grid;
}

}  // namespace frappe
