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


#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>

#include "vaqclab/parallel.hpp"
#include "vaqclab/vaqc.hpp"

namespace vaqclab {

RestartRecord run_vqe_from(const PauliSum& h, const AnsatzCircuit& ansatz, const Vector& theta0,
                           const StepSettings& settings, std::optional<double> eps_r, const EstimatorConfig& est,
                           Rng& rng) {
  RestartRecord rec;
  rec.theta0 = theta0;
  ObjectiveOracle oracle = make_energy_oracle(ansatz, h, est, rng);
  rec.run = run_optimizer(oracle, theta0, settings, rng);
  if (settings.method.resample && eps_r) {
    rec.energy = oracle.resample(rec.run.theta_final, *eps_r);
  } else if (!rec.run.history.empty() && rec.run.history.back().theta == rec.run.theta_final) {
    const Iterate& last = rec.run.history.back();
    rec.energy = {last.value, last.variance, est.m, false};
  } else {
    rec.energy = oracle(rec.run.theta_final);
  }
  rec.error = rec.energy.mean - exact_eigen(h).ground_energy;
  rec.samples = oracle.samples();
  rec.optimization_samples = oracle.optimization_samples();
  rec.evaluations = oracle.evaluations();
  rec.optimization_evaluations = oracle.evaluations() - oracle.resampling_evaluations();
  rec.unique_points = oracle.unique_points();
  return rec;
}

RestartReport run_random_restart_vqe(const PauliSum& h, const AnsatzCircuit& ansatz, const RestartConfig& cfg,
                                     const EstimatorConfig& est) {
  if (cfg.min_restarts < 1) throw std::invalid_argument("at least one restart is required");
  RestartReport report;
  report.exact_ground = exact_eigen(h).ground_energy;

  auto one = [&](std::size_t i) {
    const std::uint64_t seed = cfg.base_seed + i;
    Rng rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    Vector theta0(ansatz.num_parameters());
    for (Eigen::Index j = 0; j < theta0.size(); ++j) theta0(j) = angle(rng);
    RestartRecord rec = run_vqe_from(h, ansatz, theta0, cfg.settings, cfg.eps_r, est, rng);
    rec.index = static_cast<int>(i);
    rec.seed = seed;
    return rec;
  };

  auto want_more = [&] {
    const auto n = static_cast<int>(report.restarts.size());
    if (n >= cfg.max_restarts) return false;
    if (n < cfg.min_restarts) return true;
    return cfg.iteration_budget && report.total_iterations < *cfg.iteration_budget;
  };

  // Waves of independent restarts; results are accepted in index order so
  // the selection does not depend on the worker count.
  std::size_t next = 0;
  while (want_more()) {
    const auto missing = static_cast<std::size_t>(std::max(1, cfg.min_restarts - static_cast<int>(report.restarts.size())));
    const std::size_t wave = std::max<std::size_t>(missing, static_cast<std::size_t>(std::max(1, cfg.jobs)));
    auto batch = parallel_map(wave, cfg.jobs, [&](std::size_t j) { return one(next + j); });
    next += wave;
    for (auto& rec : batch) {
      if (!want_more()) break;
      report.total_iterations += rec.run.iterations;
      report.restarts.push_back(std::move(rec));
    }
  }

  double sum = 0.0;
  report.min_error = std::numeric_limits<double>::infinity();
  report.max_error = 0.0;
  report.best_energy = std::numeric_limits<double>::infinity();
  for (const auto& r : report.restarts) {
    const double e = std::abs(r.error);
    sum += e;
    report.min_error = std::min(report.min_error, e);
    report.max_error = std::max(report.max_error, e);
    report.best_energy = std::min(report.best_energy, r.energy.mean);
  }
  report.mean_error = sum / static_cast<double>(report.restarts.size());
  report.mean_iterations =
      static_cast<double>(report.total_iterations) / static_cast<double>(report.restarts.size());
  return report;
}

}  // namespace vaqclab
