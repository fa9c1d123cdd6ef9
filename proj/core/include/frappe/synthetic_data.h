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

#ifndef FRAPPE_SYNTHETIC_DATA_H_
#define FRAPPE_SYNTHETIC_DATA_H_

#include <cstdint>
#include <memory>
#include <string_view>

#include "absl/status/statusor.h"
#include "frappe/core.h"
#include "frappe/random.h"

namespace frappe {

enum class NoiseFamily { kNormal, kStudentT2, kCauchy };

std::string_view NoiseFamilyName(NoiseFamily family);
// Accepts "normal", "student_t" (or "t2"), "cauchy".
absl::StatusOr<NoiseFamily> NoiseFamilyFromName(std::string_view name);

struct SyntheticSpec {
  int num_rows = 5000;  // N
  int dim = 100;        // p
  int sparsity = 10;    // s
  NoiseFamily noise = NoiseFamily::kNormal;
  double rho = 0.1;  // Sigma_ij = rho^|i-j|
  std::uint64_t seed = 0;

  absl::Status Validate() const;
};

struct SyntheticData {
  Dataset data;
  WeightVector truth;
  Vector noise;  // e = y - X beta*
};

// beta* = (10 / s) * (1, 2, ..., s, 0, ..., 0).
WeightVector TrueWeights(int dim, int sparsity);

// Sigma_ij = rho^|i-j|.
Matrix ArCovariance(int dim, double rho);

// Lower Cholesky factor of ArCovariance(dim, rho), cached per (dim, rho).
std::shared_ptr<const Matrix> CovarianceFactor(int dim, double rho);

// N(0,1), Student t(2) as Z / sqrt(chi^2_2 / 2), Cauchy as tan(pi (U - 1/2)).
Vector SampleNoise(NoiseFamily family, int count, Rng& rng);

// x_i ~ N(0, Sigma) i.i.d. via the cached factor, y_i = x_i^T beta* + e_i.
absl::StatusOr<SyntheticData> Generate(const SyntheticSpec& spec);

}  // namespace frappe

#endif  // FRAPPE_SYNTHETIC_DATA_H_
