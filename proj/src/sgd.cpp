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

#include "vaqclab/optimizers.hpp"

namespace vaqclab {

double sgd_step_length(int k) {
  if (k < 1) throw std::invalid_argument("SGD iteration counter starts at 1");
  return k <= 10 ? 1.0 : 1.0 / static_cast<double>(k - 10);
}

OptimizerRun run_sgd(ObjectiveOracle& oracle, Vector theta0, int max_iter,
                     const std::optional<TerminationConfig>& termination) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  OptimizerRun run;
  Vector theta = std::move(theta0);
  for (int k = 1; k <= max_iter; ++k) {
    const EnergyEstimate f = oracle(theta);
    const Vector g = parameter_shift_gradient(oracle, theta);
    run.history.push_back({theta, f.mean, f.variance, oracle.evaluations(), oracle.samples(), oracle.unique_points()});
    run.iterations = k;
    if (termination) {
      if (auto stop = termination_check(run.history, *termination)) {
        run.stop_reason = *stop;
        run.theta_final = theta;
        return run;
      }
    }
    theta -= sgd_step_length(k) * g;
  }
  run.stop_reason = StopReason::max_iter;
  run.theta_final = std::move(theta);
  return run;
}

}  // namespace vaqclab
