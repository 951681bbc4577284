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
#include <numbers>

#include "vaqclab/optimizers.hpp"

namespace vaqclab {

namespace {
constexpr double kFlatAmplitude = 1e-12;
}

double SinusoidFit::minimizer() const { return offset + std::numbers::pi; }

bool SinusoidFit::degenerate() const { return amplitude < kFlatAmplitude; }

SinusoidFit fit_sinusoid(double x0, double f0, double f_plus, double f_minus) {
  const double c = 0.5 * (f_plus + f_minus);
  const double cos_part = f0 - c;
  const double sin_part = 0.5 * (f_plus - f_minus);
  return {x0 + std::atan2(sin_part, cos_part), std::hypot(cos_part, sin_part), c};
}

OptimizerRun run_nft(ObjectiveOracle& oracle, Vector theta0, int max_iter, const NftOptions& options,
                     const std::optional<TerminationConfig>& termination) {
  if (max_iter < 1) throw std::invalid_argument("max_iter must be at least 1");
  const Eigen::Index p = theta0.size();
  if (p < 1) throw std::invalid_argument("NFT needs at least one parameter");
  const int reset = options.reset_interval > 0 ? options.reset_interval : static_cast<int>(p);

  OptimizerRun run;
  Vector theta = std::move(theta0);
  double baseline = 0.0;
  double baseline_variance = 0.0;
  for (int k = 1; k <= max_iter; ++k) {
    if ((k - 1) % reset == 0) {
      const EnergyEstimate e = oracle(theta);
      baseline = e.mean;
      baseline_variance = e.variance;
    }
    const auto i = static_cast<Eigen::Index>((k - 1) % p);
    Vector shifted = theta;
    shifted(i) = theta(i) + std::numbers::pi / 2;
    const double plus = oracle(shifted).mean;
    shifted(i) = theta(i) - std::numbers::pi / 2;
    const double minus = oracle(shifted).mean;

    run.history.push_back({theta, baseline, baseline_variance, oracle.evaluations(), oracle.samples(),
                           oracle.unique_points()});
    run.iterations = k;
    if (termination) {
      if (auto stop = termination_check(run.history, *termination)) {
        run.stop_reason = *stop;
        run.theta_final = theta;
        return run;
      }
    }

    const SinusoidFit fit = fit_sinusoid(theta(i), baseline, plus, minus);
    if (fit.degenerate()) {
      ++run.degenerate_updates;
      continue;
    }
    theta(i) = fit.minimizer();
    // The fitted minimum becomes the cached baseline until the next refresh.
    baseline = fit.constant - fit.amplitude;
  }
  run.stop_reason = StopReason::max_iter;
  run.theta_final = std::move(theta);
  return run;
}

}  // namespace vaqclab
