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

#ifndef FRAPPE_CORE_H_
#define FRAPPE_CORE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace frappe {

// Dense double-precision storage. Rows of the design matrix are contiguous.
using Vector = Eigen::VectorXd;
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// An immutable design matrix X (N x p) with its response vector y.
class Dataset {
 public:
  // Fails unless N >= 1, p >= 1 and responses.size() == N.
  static absl::StatusOr<Dataset> Create(Matrix features, Vector responses);

  const Matrix& features() const { return features_; }
  const Vector& responses() const { return responses_; }
  int num_rows() const { return static_cast<int>(features_.rows()); }
  int num_features() const { return static_cast<int>(features_.cols()); }

  // The i-th covariate vector x_i as a column view.
  auto row(int i) const { return features_.row(i).transpose(); }
  double response(int i) const { return responses_[i]; }

  // A new dataset holding the given rows in the given order.
  Dataset Subset(std::span<const int> rows) const;

  // Largest row l2 norm, max_i ||x_i||_2.
  double MaxRowNorm() const;

 private:
  Dataset(Matrix features, Vector responses)
      : features_(std::move(features)), responses_(std::move(responses)) {}

  Matrix features_;
  Vector responses_;
};

// A p-dimensional regression weight.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(Vector values) : values_(std::move(values)) {}
  static WeightVector Zero(int dim) { return WeightVector(Vector::Zero(dim)); }

  const Vector& values() const { return values_; }
  int dim() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }

  // Indices with |values[i]| > tolerance. The default returns exactly the
  // nonzero coordinates.
  std::vector<int> support(double tolerance = 0.0) const;
  int SupportSize(double tolerance = 0.0) const;

  bool operator==(const WeightVector& other) const {
    return values_.size() == other.values_.size() && values_ == other.values_;
  }

 private:
  Vector values_;
};

// The three places where the solver touches private data.
enum class NoiseStage { kInit = 0, kKde = 1, kGrad = 2 };

// Total (epsilon, delta) budget and its split over the three noise stages.
class PrivacyBudget {
 public:
  static constexpr std::array<double, 3> kEvenSplit = {1.0 / 3, 1.0 / 3,
                                                       1.0 / 3};

  // Fails unless epsilon > 0, 0 < delta < 1, every split component is
  // positive and the split sums to 1 within 1e-12.
  static absl::StatusOr<PrivacyBudget> Create(
      double epsilon, double delta,
      std::array<double, 3> stage_split = kEvenSplit);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  const std::array<double, 3>& stage_split() const { return stage_split_; }

 private:
  PrivacyBudget(double epsilon, double delta, std::array<double, 3> split)
      : epsilon_(epsilon), delta_(delta), stage_split_(split) {}

  double epsilon_;
  double delta_;
  std::array<double, 3> stage_split_;
};

enum class KernelType { kBiweight, kUniform, kEpanechnikov, kTriweight };

// Bandwidth rule for the outer loop. kDecaying is
// h_v = sqrt(s log N / N) + s^{-1/2} 0.9^{(v+1)/2}; kFixed returns `fixed`.
struct BandwidthSchedule {
  enum class Kind { kDecaying, kFixed };
  Kind kind = Kind::kDecaying;
  int sparsity = 10;
  double fixed = 0.0;
};

// Hyperparameters of the private LAD solver.
struct FrappeConfig {
  int outer_iters = 10;   // V
  int inner_iters = 50;   // T
  // Inner gradient step. Unset means 1/(2L) with L the top eigenvalue of
  // X^T X / N.
  std::optional<double> step_size;
  int subsample_size = 200;  // n, clamped to N by the harness
  // Penalty used by a single fit; BIC selection sweeps lambda_grid.
  double lambda = 0.1;
  std::vector<double> lambda_grid;
  double lambda_l1_init = 0.01;  // lambda_01
  double lambda_l2_init = 0.1;   // lambda_02
  // Initializer subgradient schedule: step init_step / sqrt(t), at most
  // init_max_iters iterations. Unset init_step means c_beta / mean ||x_i||.
  std::optional<double> init_step;
  int init_max_iters = 2000;
  double clip_weight = 20.0;  // c_beta
  double clip_row = 1.0;      // c_x
  // c_{f(0)}: the density lower-bound constant entering the gradient
  // sensitivity G = 4 c_x^2 c_beta + c_{f(0)}.
  double density_constant = 0.01;
  // Lower clamp applied to the noisy density estimate. Kept separate from
  // density_constant; see README for why.
  double density_floor = 0.01;
  KernelType kernel = KernelType::kBiweight;
  BandwidthSchedule bandwidth;
  std::uint64_t seed = 0;

  // Checks scale parameters and n <= num_rows.
  absl::Status Validate(int num_rows) const;
};

// Elementwise sign(g) * max(|g| - tau, 0). Requires tau >= 0.
Vector SoftThreshold(const Vector& g, double tau);

// w * c / max(c, ||w||_2). Requires c > 0.
Vector ClipL2(const Vector& w, double c);

// Rescales each row with ||x_i||_2 > c_x onto the sphere of radius c_x.
// Rows inside the ball and the responses are untouched.
Dataset ScaleRows(const Dataset& d, double c_x);

// Solvers treat |w_i| <= kSupportTolerance as zero when extracting supports.
inline constexpr double kSupportTolerance = 1e-8;

}  // namespace frappe

#endif  // FRAPPE_CORE_H_
