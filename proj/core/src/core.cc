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

#include "frappe/core.h"

#include <cmath>
#include <string>

#include "absl/strings/str_cat.h"

namespace frappe {

absl::StatusOr<Dataset> Dataset::Create(Matrix features, Vector responses) {
  if (features.rows() < 1 || features.cols() < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("Dataset needs N >= 1 and p >= 1, got ", features.rows(),
                     "x", features.cols()));
  }
  if (responses.size() != features.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Dataset has ", features.rows(), " rows but ",
                     responses.size(), " responses"));
  }
  if (!features.allFinite() || !responses.allFinite()) {
    return absl::InvalidArgumentError("Dataset contains non-finite values");
  }
  return Dataset(std::move(features), std::move(responses));
}

Dataset Dataset::Subset(std::span<const int> rows) const {
  Matrix x(static_cast<Eigen::Index>(rows.size()), features_.cols());
  Vector y(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) {
    x.row(static_cast<Eigen::Index>(k)) = features_.row(rows[k]);
    y[static_cast<Eigen::Index>(k)] = responses_[rows[k]];
  }
  return Dataset(std::move(x), std::move(y));
}

double Dataset::MaxRowNorm() const {
  return features_.rowwise().norm().maxCoeff();
}

std::vector<int> WeightVector::support(double tolerance) const {
  std::vector<int> out;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    if (std::abs(values_[i]) > tolerance) out.push_back(static_cast<int>(i));
  }
  return out;
}

int WeightVector::SupportSize(double tolerance) const {
  return static_cast<int>((values_.array().abs() > tolerance).count());
}

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(
    double epsilon, double delta, std::array<double, 3> stage_split) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  double total = 0.0;
  for (double part : stage_split) {
    if (!(part > 0.0)) {
      return absl::InvalidArgumentError("stage split entries must be positive");
    }
    total += part;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    return absl::InvalidArgumentError(
        absl::StrCat("stage split must sum to 1, sums to ", total));
  }
  return PrivacyBudget(epsilon, delta, stage_split);
}

absl::Status FrappeConfig::Validate(int num_rows) const {
  auto positive = [](double x) { return x > 0.0 && std::isfinite(x); };
  if (outer_iters < 1 || inner_iters < 1) {
    return absl::InvalidArgumentError("outer_iters and inner_iters must be >= 1");
  }
  if (step_size.has_value() && !positive(*step_size)) {
    return absl::InvalidArgumentError("step_size must be positive");
  }
  if (subsample_size < 1 || subsample_size > num_rows) {
    return absl::InvalidArgumentError(
        absl::StrCat("subsample size n = ", subsample_size,
                     " must lie in [1, N = ", num_rows, "]"));
  }
  if (!(lambda >= 0.0) || lambda_l1_init < 0.0 || !positive(lambda_l2_init)) {
    return absl::InvalidArgumentError(
        "lambda and lambda_01 must be nonnegative, lambda_02 positive");
  }
  for (double l : lambda_grid) {
    if (!positive(l)) return absl::InvalidArgumentError("lambda grid entries must be positive");
  }
  if (init_step.has_value() && !positive(*init_step)) {
    return absl::InvalidArgumentError("init_step must be positive");
  }
  if (init_max_iters < 1) {
    return absl::InvalidArgumentError("init_max_iters must be >= 1");
  }
  if (!positive(clip_weight) || !positive(clip_row) ||
      !positive(density_constant) || !positive(density_floor)) {
    return absl::InvalidArgumentError(
        "clip_weight, clip_row, density_constant and density_floor must be "
        "positive");
  }
  if (bandwidth.kind == BandwidthSchedule::Kind::kDecaying) {
    if (bandwidth.sparsity < 1) {
      return absl::InvalidArgumentError("bandwidth sparsity must be >= 1");
    }
    if (num_rows < 2) {
      return absl::InvalidArgumentError("decaying bandwidth needs N >= 2");
    }
  } else if (!positive(bandwidth.fixed)) {
    return absl::InvalidArgumentError("fixed bandwidth must be positive");
  }
  return absl::OkStatus();
}

Vector SoftThreshold(const Vector& g, double tau) {
  Vector out(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double shrunk = std::abs(g[i]) - tau;
    out[i] = shrunk > 0.0 ? std::copysign(shrunk, g[i]) : 0.0;
  }
  return out;
}

Vector ClipL2(const Vector& w, double c) {
  const double norm = w.norm();
  if (norm <= c) return w;
  Vector out = w * (c / norm);
  // Rounding can leave ||out|| a few ulps above c; shrink until inside so a
  // second clip is the identity.
  while (out.norm() > c) out *= 1.0 - 0x1p-52;
  return out;
}

Dataset ScaleRows(const Dataset& d, double c_x) {
  Matrix x = d.features();
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = x.row(i).norm();
    if (norm <= c_x) continue;
    x.row(i) *= c_x / norm;
    while (x.row(i).norm() > c_x) x.row(i) *= 1.0 - 0x1p-52;
  }
  return *Dataset::Create(std::move(x), d.responses());
}

}  // namespace frappe
