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

#include "frappe/design.h"

#include <algorithm>
#include <cmath>

namespace frappe {

double TopEigenvalue(const Matrix& sym, int iters) {
  const Eigen::Index p = sym.rows();
  Vector v = Vector::Constant(p, 1.0 / std::sqrt(static_cast<double>(p)));
  double eig = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vector w = sym * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    v = w / norm;
    eig = v.dot(sym * v);
  }
  return eig;
}

DesignSummary SummarizeDesign(const Dataset& d, int power_iters) {
  DesignSummary out;
  const Matrix& x = d.features();
  out.gram = x.transpose() * x / static_cast<double>(d.num_rows());
  out.lipschitz = TopEigenvalue(out.gram, power_iters);
  // mu = L - top eigenvalue of (L I - gram).
  Matrix shifted = -out.gram;
  shifted.diagonal().array() += out.lipschitz;
  out.strong_convexity =
      std::max(0.0, out.lipschitz - TopEigenvalue(shifted, power_iters));
  return out;
}

}  // namespace frappe
