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

#ifndef FRAPPE_KERNELS_H_
#define FRAPPE_KERNELS_H_

#include <span>
#include <string_view>

#include "absl/status/statusor.h"
#include "frappe/core.h"
#include "frappe/random.h"

namespace frappe {

// A compactly supported smoothing kernel: K(u) = 0 for |u| > 1, integrating
// to one, with |K(u)| <= sup_bound().
//
// kBiweight is the sixth-degree polynomial
//   K(u) = -(315/64) u^6 + (735/64) u^4 - (525/64) u^2 + 105/64
//        = (105/64) (1 - u^2)^2 (1 - 3 u^2),
// a fourth-order kernel that dips below zero for 1/3 < u^2 < 1. Its sup
// bound is K(0) = 105/64.
class Kernel {
 public:
  static Kernel Make(KernelType type) { return Kernel(type); }
  // Accepts "biweight", "uniform", "epanechnikov", "triweight".
  static absl::StatusOr<Kernel> FromName(std::string_view name);

  double operator()(double u) const;
  double sup_bound() const;
  KernelType type() const { return type_; }
  std::string_view name() const;

 private:
  explicit Kernel(KernelType type) : type_(type) {}
  KernelType type_;
};

std::string_view KernelName(KernelType type);

// (1 / (N h)) sum_i K(r_i / h), summed in index order.
double KdeAtZero(std::span<const double> residuals, const Kernel& kernel,
                 double h);

// max(estimate + noise, floor).
double FlooredDensity(double estimate, double noise, double floor);

// Noisy, floored density at zero. A zero noise_variance skips the draw.
double PrivateKdeAtZero(std::span<const double> residuals,
                        const Kernel& kernel, double h, double noise_variance,
                        double floor, Rng& rng);

// h_v for v >= 1 under the given schedule with N data rows.
double BandwidthAt(int v, int num_rows, const BandwidthSchedule& schedule);

}  // namespace frappe

#endif  // FRAPPE_KERNELS_H_
