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

#include "frappe/synthetic_data.h"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>

#include "absl/strings/str_cat.h"

namespace frappe {
namespace {

constexpr std::uint64_t kCovariateStream = 21;
constexpr std::uint64_t kNoiseStream = 22;

}  // namespace

std::string_view NoiseFamilyName(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::kNormal:
      return "normal";
    case NoiseFamily::kStudentT2:
      return "student_t";
    case NoiseFamily::kCauchy:
      return "cauchy";
  }
  return "unknown";
}

absl::StatusOr<NoiseFamily> NoiseFamilyFromName(std::string_view name) {
  if (name == "normal") return NoiseFamily::kNormal;
  if (name == "student_t" || name == "t2" || name == "student-t") {
    return NoiseFamily::kStudentT2;
  }
  if (name == "cauchy") return NoiseFamily::kCauchy;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown noise family '", std::string(name), "'"));
}

absl::Status SyntheticSpec::Validate() const {
  if (num_rows < 1 || dim < 1) {
    return absl::InvalidArgumentError("N and p must be positive");
  }
  if (sparsity < 1 || sparsity > dim) {
    return absl::InvalidArgumentError(
        absl::StrCat("sparsity s = ", sparsity, " must lie in [1, p = ", dim,
                     "]"));
  }
  if (!(std::abs(rho) < 1.0)) {
    return absl::InvalidArgumentError("|rho| must be < 1");
  }
  return absl::OkStatus();
}

WeightVector TrueWeights(int dim, int sparsity) {
  Vector beta = Vector::Zero(dim);
  for (int j = 0; j < sparsity; ++j) {
    beta[j] = 10.0 * (j + 1) / sparsity;
  }
  return WeightVector(std::move(beta));
}

Matrix ArCovariance(int dim, double rho) {
  Matrix sigma(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) sigma(i, j) = std::pow(rho, std::abs(i - j));
  }
  return sigma;
}

std::shared_ptr<const Matrix> CovarianceFactor(int dim, double rho) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, std::shared_ptr<const Matrix>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{dim, rho}];
  if (!slot) {
    Eigen::LLT<Matrix> llt(ArCovariance(dim, rho));
    slot = std::make_shared<const Matrix>(llt.matrixL());
  }
  return slot;
}

Vector SampleNoise(NoiseFamily family, int count, Rng& rng) {
  Vector out(count);
  for (int i = 0; i < count; ++i) {
    switch (family) {
      case NoiseFamily::kNormal:
        out[i] = rng.Normal();
        break;
      case NoiseFamily::kStudentT2: {
        const double z = rng.Normal();
        const double a = rng.Normal();
        const double b = rng.Normal();
        out[i] = z / std::sqrt((a * a + b * b) / 2.0);
        break;
      }
      case NoiseFamily::kCauchy:
        out[i] = std::tan(std::numbers::pi * (rng.Uniform() - 0.5));
        break;
    }
  }
  return out;
}

absl::StatusOr<SyntheticData> Generate(const SyntheticSpec& spec) {
  if (absl::Status st = spec.Validate(); !st.ok()) return st;
  const Rng root(spec.seed);
  Rng cov_rng = root.Derive({kCovariateStream});
  Rng noise_rng = root.Derive({kNoiseStream});

  const auto factor = CovarianceFactor(spec.dim, spec.rho);
  Matrix z(spec.num_rows, spec.dim);
  for (int i = 0; i < spec.num_rows; ++i) {
    for (int j = 0; j < spec.dim; ++j) z(i, j) = cov_rng.Normal();
  }
  // Row i of X is L z_i, i.e. X = Z L^T.
  Matrix x = z * factor->transpose();

  WeightVector truth = TrueWeights(spec.dim, spec.sparsity);
  Vector noise = SampleNoise(spec.noise, spec.num_rows, noise_rng);
  Vector y = x * truth.values() + noise;
  auto data = Dataset::Create(std::move(x), std::move(y));
  if (!data.ok()) return data.status();
  return SyntheticData{*std::move(data), std::move(truth), std::move(noise)};
}

}  // namespace frappe
