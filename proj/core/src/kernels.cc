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

#include "frappe/kernels.h"

#include <cmath>
#include <string>

#include "absl/strings/str_cat.h"
#include "frappe/dp_mechanisms.h"

namespace frappe {

absl::StatusOr<Kernel> Kernel::FromName(std::string_view name) {
  for (KernelType t : {KernelType::kBiweight, KernelType::kUniform,
                       KernelType::kEpanechnikov, KernelType::kTriweight}) {
    if (name == KernelName(t)) return Kernel(t);
  }
  return absl::InvalidArgumentError(absl::StrCat("unknown kernel '", std::string(name),
                                                 "'"));
}

std::string_view KernelName(KernelType type) {
  switch (type) {
    case KernelType::kBiweight:
      return "biweight";
    case KernelType::kUniform:
      return "uniform";
    case KernelType::kEpanechnikov:
      return "epanechnikov";
    case KernelType::kTriweight:
      return "triweight";
  }
  return "unknown";
}

std::string_view Kernel::name() const { return KernelName(type_); }

double Kernel::operator()(double u) const {
  if (std::abs(u) > 1.0) return 0.0;
  const double u2 = u * u;
  switch (type_) {
    case KernelType::kBiweight:
      return ((-315.0 * u2 + 735.0) * u2 - 525.0) * u2 / 64.0 + 105.0 / 64.0;
    case KernelType::kUniform:
      return 0.5;
    case KernelType::kEpanechnikov:
      return 0.75 * (1.0 - u2);
    case KernelType::kTriweight: {
      const double w = 1.0 - u2;
      return 35.0 / 32.0 * w * w * w;
    }
  }
  return 0.0;
}

double Kernel::sup_bound() const {
  switch (type_) {
    case KernelType::kBiweight:
      return 105.0 / 64.0;
    case KernelType::kUniform:
      return 0.5;
    case KernelType::kEpanechnikov:
      return 0.75;
    case KernelType::kTriweight:
      return 35.0 / 32.0;
  }
  return 0.0;
}

double KdeAtZero(std::span<const double> residuals, const Kernel& kernel,
                 double h) {
  double sum = 0.0;
  for (double r : residuals) sum += kernel(r / h);
  return sum / (static_cast<double>(residuals.size()) * h);
}

double FlooredDensity(double estimate, double noise, double floor) {
  return std::max(estimate + noise, floor);
}

double PrivateKdeAtZero(std::span<const double> residuals,
                        const Kernel& kernel, double h, double noise_variance,
                        double floor, Rng& rng) {
  const double estimate = KdeAtZero(residuals, kernel, h);
  const double noise =
      noise_variance > 0.0 ? GaussianNoise(rng, 1, noise_variance)[0] : 0.0;
  return FlooredDensity(estimate, noise, floor);
}

double BandwidthAt(int v, int num_rows, const BandwidthSchedule& schedule) {
  if (schedule.kind == BandwidthSchedule::Kind::kFixed) return schedule.fixed;
  const double s = static_cast<double>(schedule.sparsity);
  const double n = static_cast<double>(num_rows);
  return std::sqrt(s * std::log(n) / n) +
         std::pow(0.9, (v + 1) / 2.0) / std::sqrt(s);
}

}  // namespace frappe
