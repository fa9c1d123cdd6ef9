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

#ifndef FRAPPE_DESIGN_H_
#define FRAPPE_DESIGN_H_

#include "frappe/core.h"

namespace frappe {

// Second-moment summary of a design matrix shared by the gradient solvers.
// With gram = X^T X / N, the least-squares gradient (1/N) X^T (X b - z)
// equals gram * b - X^T z / N, which costs O(p^2) per step instead of O(Np).
struct DesignSummary {
  Matrix gram;
  double lipschitz = 0.0;         // top eigenvalue L of gram
  double strong_convexity = 0.0;  // smallest eigenvalue mu, diagnostic only
};

DesignSummary SummarizeDesign(const Dataset& d, int power_iters = 100);

// Largest eigenvalue of a symmetric PSD matrix by power iteration from the
// normalized all-ones vector.
double TopEigenvalue(const Matrix& sym, int iters);

}  // namespace frappe

#endif  // FRAPPE_DESIGN_H_
