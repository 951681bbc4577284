// Copyright 2026 The vaqclab Authors
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

#include <numbers>

#include "vaqclab/optimizers.hpp"

namespace vaqclab {

namespace {
constexpr double kShift = std::numbers::pi / 2;
}

Vector parameter_shift_gradient(ObjectiveOracle& oracle, const Vector& theta) {
  const Eigen::Index p = theta.size();
  Vector g(p);
  Vector shifted = theta;
  for (Eigen::Index i = 0; i < p; ++i) {
    shifted(i) = theta(i) + kShift;
    const double plus = oracle(shifted).mean;
    shifted(i) = theta(i) - kShift;
    const double minus = oracle(shifted).mean;
    shifted(i) = theta(i);
    g(i) = (plus - minus) / 2;
  }
  return g;
}

Matrix parameter_shift_hessian(ObjectiveOracle& oracle, const Vector& theta) {
  const Eigen::Index p = theta.size();
  Matrix h(p, p);
  Vector shifted = theta;
  auto at = [&](Eigen::Index i, double si, Eigen::Index j, double sj) {
    shifted = theta;
    shifted(i) += si;
    shifted(j) += sj;
    return oracle(shifted).mean;
  };
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i; j < p; ++j) {
      const double pp = at(i, kShift, j, kShift);
      const double pm = at(i, kShift, j, -kShift);
      const double mp = at(i, -kShift, j, kShift);
      const double mm = at(i, -kShift, j, -kShift);
      h(i, j) = (pp - pm - mp + mm) / 4;
      h(j, i) = h(i, j);
    }
  }
  return h;
}

}  // namespace vaqclab
