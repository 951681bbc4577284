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

#include <cmath>

#include "vaqclab/optimizers.hpp"

namespace vaqclab {

namespace {

Vector rademacher(Eigen::Index p, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  Vector d(p);
  for (Eigen::Index i = 0; i < p; ++i) d(i) = coin(rng) ? 1.0 : -1.0;
  return d;
}

// First-step calibration: average |f(x + c d) - f(x - c d)| / 2c over random
// directions, scaled so the first update has the requested magnitude.
double calibrate_learning_rate(ObjectiveOracle& oracle, const Vector& theta, Rng& rng, const SpsaOptions& o) {
  double avg = 0.0;
  for (int i = 0; i < o.calibration_probes; ++i) {
    const Vector d = rademacher(theta.size(), rng);
    const double plus = oracle(theta + o.perturbation * d).mean;
    const double minus = oracle(theta - o.perturbation * d).mean;
    avg += std::abs(plus - minus) / (2 * o.perturbation);
  }
  avg /= o.calibration_probes;
  const double scale = std::pow(o.stability + 1.0, o.alpha);
  return avg > 1e-12 ? o.initial_step * scale / avg : o.initial_step * scale;
}

}  // namespace

int spsa_calibration_evaluations(const SpsaOptions& options) {
  return options.learning_rate ? 0 : 2 * options.calibration_probes;
}

OptimizerRun run_spsa(ObjectiveOracle& oracle, Vector theta0, int max_iter, Rng& rng, const SpsaOptions& options,
                      const std::optional<TerminationConfig>& termination) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  if (!options.learning_rate && options.calibration_probes < 1) {
    throw std::invalid_argument("SPSA calibration needs at least one probe");
  }
  OptimizerRun run;
  Vector theta = std::move(theta0);
  const double a = options.learning_rate ? *options.learning_rate : calibrate_learning_rate(oracle, theta, rng, options);
  for (int k = 1; k <= max_iter; ++k) {
    const double ak = a / std::pow(k + options.stability, options.alpha);
    const double ck = options.perturbation / std::pow(static_cast<double>(k), options.gamma);
    const Vector d = rademacher(theta.size(), rng);
    const EnergyEstimate plus = oracle(theta + ck * d);
    const EnergyEstimate minus = oracle(theta - ck * d);
    run.history.push_back({theta, 0.5 * (plus.mean + minus.mean), 0.25 * (plus.variance + minus.variance),
                           oracle.evaluations(), oracle.samples(), oracle.unique_points()});
    run.iterations = k;
    if (termination) {
      if (auto stop = termination_check(run.history, *termination)) {
        run.stop_reason = *stop;
        run.theta_final = theta;
        return run;
      }
    }
    const Vector g = ((plus.mean - minus.mean) / (2 * ck)) * d;
    theta -= ak * g;
  }
  run.stop_reason = StopReason::max_iter;
  run.theta_final = std::move(theta);
  return run;
}

}  // namespace vaqclab
