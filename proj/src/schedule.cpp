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
#include <cctype>
#include <cmath>

#include "vaqclab/vaqc.hpp"

namespace vaqclab {

Schedule make_schedule(ScheduleKind kind, double step, double exponent) {
  if (!(step > 0.0 && step < 1.0)) throw std::invalid_argument("schedule step must lie in (0, 1)");
  const double count = std::round(1.0 / step);
  if (std::abs(count * step - 1.0) > 1e-9) throw std::invalid_argument("1/step must be an integer");
  double a = exponent;
  switch (kind) {
    case ScheduleKind::cubic: a = 3.0; break;
    case ScheduleKind::linear: a = 1.0; break;
    case ScheduleKind::power:
      if (!(exponent > 0.0)) throw std::invalid_argument("schedule exponent must be positive");
      break;
  }
  const int k_max = static_cast<int>(count);
  Schedule s;
  s.points.reserve(static_cast<std::size_t>(k_max));
  for (int k = 1; k < k_max; ++k) s.points.push_back(1.0 - std::pow(1.0 - k * step, a));
  s.points.push_back(1.0);
  return s;
}

std::vector<double> uniform_grid(int n) {
  if (n < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
  return g;
}

Method Method::parse(const std::string& name) {
  const auto dash = name.find('-');
  std::string base = name.substr(0, dash);
  std::transform(base.begin(), base.end(), base.begin(), [](unsigned char c) { return std::toupper(c); });
  Method m;
  if (base == "SGD") m.optimizer = OptimizerKind::sgd;
  else if (base == "SPSA") m.optimizer = OptimizerKind::spsa;
  else if (base == "NFT") m.optimizer = OptimizerKind::nft;
  else throw std::invalid_argument("unknown optimizer '" + base + "' in method '" + name + "'");
  if (dash == std::string::npos) return m;
  const std::string flags = name.substr(dash + 1);
  if (flags.empty()) throw std::invalid_argument("empty augmentation suffix in method '" + name + "'");
  for (char c : flags) {
    bool* flag = nullptr;
    switch (std::toupper(static_cast<unsigned char>(c))) {
      case 'A': flag = &m.adaptive_termination; break;
      case 'B': flag = &m.bootstrap; break;
      case 'R': flag = &m.resample; break;
      default: throw std::invalid_argument("unknown augmentation '" + std::string(1, c) + "' in method '" + name + "'");
    }
    if (*flag) throw std::invalid_argument("repeated augmentation in method '" + name + "'");
    *flag = true;
  }
  return m;
}

std::string Method::name() const {
  std::string s = optimizer == OptimizerKind::sgd ? "SGD" : optimizer == OptimizerKind::spsa ? "SPSA" : "NFT";
  std::string flags;
  if (adaptive_termination) flags += 'A';
  if (bootstrap) flags += 'B';
  if (resample) flags += 'R';
  return flags.empty() ? s : s + "-" + flags;
}

std::int64_t evaluations_for_iterations(OptimizerKind kind, int num_parameters, int iterations,
                                        const SpsaOptions& spsa, const NftOptions& nft) {
  const std::int64_t l = iterations;
  switch (kind) {
    case OptimizerKind::sgd: return l * (2 * num_parameters + 1);
    case OptimizerKind::spsa: return spsa_calibration_evaluations(spsa) + 2 * l;
    case OptimizerKind::nft: {
      const std::int64_t r = nft.reset_interval > 0 ? nft.reset_interval : num_parameters;
      return 2 * l + (l + r - 1) / r;
    }
  }
  return 0;
}

int iterations_for_budget(OptimizerKind kind, int num_parameters, std::int64_t evaluations, const SpsaOptions& spsa,
                          const NftOptions& nft) {
  int lo = 0, hi = 1;
  while (evaluations_for_iterations(kind, num_parameters, hi, spsa, nft) <= evaluations) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (evaluations_for_iterations(kind, num_parameters, mid, spsa, nft) <= evaluations) lo = mid;
    else hi = mid;
  }
  return lo;
}

OptimizerRun run_optimizer(ObjectiveOracle& oracle, const Vector& theta0, const StepSettings& settings, Rng& rng) {
  std::optional<TerminationConfig> term;
  if (settings.method.adaptive_termination) term = settings.termination;
  switch (settings.method.optimizer) {
    case OptimizerKind::sgd: return run_sgd(oracle, theta0, settings.max_iter, term);
    case OptimizerKind::spsa: return run_spsa(oracle, theta0, settings.max_iter, rng, settings.spsa, term);
    case OptimizerKind::nft: return run_nft(oracle, theta0, settings.max_iter, settings.nft, term);
  }
  throw std::logic_error("unhandled optimizer kind");
}

}  // namespace vaqclab
