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

#include "vaqclab/estimator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <random>
#include <string>

namespace vaqclab {

namespace {

// Rotates each measured qubit so its basis becomes Z (X: H, Y: S^dagger then H).
void rotate_to_z(ComplexVector& a, std::uint32_t x_mask, std::uint32_t y_mask) {
  const auto dim = static_cast<std::uint32_t>(a.size());
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::uint32_t bit = 1; bit < dim; bit <<= 1) {
    if (!((x_mask | y_mask) & bit)) continue;
    if (y_mask & bit) {
      for (std::uint32_t x = 0; x < dim; ++x) {
        if (x & bit) a(x) *= std::complex<double>(0.0, -1.0);
      }
    }
    for (std::uint32_t x = 0; x < dim; ++x) {
      if (x & bit) continue;
      const auto a0 = a(x);
      const auto a1 = a(x | bit);
      a(x) = (a0 + a1) * inv_sqrt2;
      a(x | bit) = (a0 - a1) * inv_sqrt2;
    }
  }
}

EnergyEstimate estimate_grouped(const StateVector& state, const PauliSum& h, std::int64_t samples, Rng& rng) {
  EnergyEstimate e;
  e.samples_used = samples;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (h.masks()[j].is_identity()) e.mean += h.terms()[j].coefficient;
  }
  for (const auto& g : qubit_wise_groups(h)) {
    const auto s = sample_group(g, state, samples, rng);
    e.mean += s.mean;
    e.variance += s.sample_variance / static_cast<double>(samples);
  }
  return e;
}

}  // namespace

Grouping parse_grouping(const std::string& name) {
  if (name == "per-term" || name == "none") return Grouping::per_term;
  if (name == "qubit-wise") return Grouping::qubit_wise;
  throw std::invalid_argument("unknown measurement grouping '" + name + "'");
}

std::string to_string(Grouping g) { return g == Grouping::per_term ? "per-term" : "qubit-wise"; }

std::vector<MeasurementGroup> qubit_wise_groups(const PauliSum& h) {
  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < h.size(); ++j) {
    if (!h.masks()[j].is_identity()) order.push_back(j);
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(h.terms()[a].coefficient) > std::abs(h.terms()[b].coefficient);
  });
  std::vector<MeasurementGroup> groups;
  for (std::size_t j : order) {
    const PauliMasks& pm = h.masks()[j];
    const std::uint32_t x = pm.flip_mask & ~pm.phase_mask;
    const std::uint32_t y = pm.flip_mask & pm.phase_mask;
    const std::uint32_t z = pm.phase_mask & ~pm.flip_mask;
    auto fits = [&](const MeasurementGroup& g) {
      return !(x & (g.y_mask | g.z_mask)) && !(y & (g.x_mask | g.z_mask)) && !(z & (g.x_mask | g.y_mask));
    };
    auto it = std::find_if(groups.begin(), groups.end(), fits);
    if (it == groups.end()) it = groups.insert(groups.end(), MeasurementGroup{});
    it->x_mask |= x;
    it->y_mask |= y;
    it->z_mask |= z;
    it->coefficients.push_back(h.terms()[j].coefficient);
    it->supports.push_back(pm.flip_mask | pm.phase_mask);
  }
  return groups;
}

TermSample sample_group(const MeasurementGroup& group, const StateVector& state, std::int64_t shots, Rng& rng) {
  if (shots < 1) throw std::invalid_argument("sample count must be positive");
  ComplexVector a = state.amplitudes();
  rotate_to_z(a, group.x_mask, group.y_mask);
  const auto dim = static_cast<std::uint32_t>(a.size());

  // Multinomial outcome counts by sequential conditional binomials.
  std::int64_t left = shots;
  double mass = 1.0;
  double sum = 0.0;
  std::vector<std::pair<double, std::int64_t>> outcomes;
  for (std::uint32_t x = 0; x < dim && left > 0; ++x) {
    const double p = std::norm(a(x));
    std::int64_t count = left;
    if (x + 1 < dim) {
      const double q = mass > 0.0 ? std::clamp(p / mass, 0.0, 1.0) : 1.0;
      count = std::binomial_distribution<std::int64_t>(left, q)(rng);
    }
    mass -= p;
    left -= count;
    if (count == 0) continue;
    double value = 0.0;
    for (std::size_t j = 0; j < group.coefficients.size(); ++j) {
      value += (std::popcount(x & group.supports[j]) & 1) ? -group.coefficients[j] : group.coefficients[j];
    }
    outcomes.emplace_back(value, count);
    sum += value * static_cast<double>(count);
  }
  const double n = static_cast<double>(shots);
  const double mean = sum / n;
  double ss = 0.0;
  for (const auto& [value, count] : outcomes) ss += static_cast<double>(count) * (value - mean) * (value - mean);
  return {mean, shots > 1 ? ss / (n - 1.0) : 0.0};
}

double plus_probability(const PauliMasks& masks, const StateVector& state) {
  ComplexVector a = state.amplitudes();
  const auto dim = static_cast<std::uint32_t>(a.size());
  rotate_to_z(a, masks.flip_mask & ~masks.phase_mask, masks.flip_mask & masks.phase_mask);
  const std::uint32_t support = masks.flip_mask | masks.phase_mask;
  double plus = 0.0;
  for (std::uint32_t x = 0; x < dim; ++x) {
    if (!(std::popcount(x & support) & 1)) plus += std::norm(a(x));
  }
  return std::clamp(plus, 0.0, 1.0);
}

TermSample sample_term_mean(const PauliMasks& masks, const StateVector& state, std::int64_t m, Rng& rng) {
  if (masks.is_identity()) throw std::invalid_argument("identity terms are evaluated exactly, not sampled");
  if (m < 1) throw std::invalid_argument("sample count must be positive");
  const double p = plus_probability(masks, state);
  std::binomial_distribution<std::int64_t> draw(m, p);
  const std::int64_t plus = draw(rng);
  const double md = static_cast<double>(m);
  const double mean = static_cast<double>(2 * plus - m) / md;
  const double variance =
      m > 1 ? 4.0 * static_cast<double>(plus) * static_cast<double>(m - plus) / (md * (md - 1.0)) : 0.0;
  return {mean, variance};
}

EnergyEstimate estimate_energy(const StateVector& state, const PauliSum& h, std::int64_t samples, bool noiseless,
                               Rng& rng, Grouping grouping) {
  if (h.n_qubits() != state.n_qubits()) throw std::invalid_argument("Hamiltonian and state qubit counts differ");
  if (samples < 1) throw std::invalid_argument("sample count must be positive");
  EnergyEstimate e;
  e.samples_used = samples;
  if (noiseless) {
    e.mean = exact_expectation(h, state);
    return e;
  }
  if (grouping == Grouping::qubit_wise) return estimate_grouped(state, h, samples, rng);
  for (std::size_t j = 0; j < h.size(); ++j) {
    const double c = h.terms()[j].coefficient;
    const auto& masks = h.masks()[j];
    if (masks.is_identity()) {
      e.mean += c;
      continue;
    }
    const auto s = sample_term_mean(masks, state, samples, rng);
    e.mean += c * s.mean;
    e.variance += c * c * s.sample_variance / static_cast<double>(samples);
  }
  return e;
}

EnergyEstimate estimate_energy(const AnsatzCircuit& ansatz, const Vector& theta, const PauliSum& h,
                               const EstimatorConfig& cfg, Rng& rng) {
  return estimate_energy(prepare_state(ansatz, theta), h, cfg.m, cfg.noiseless, rng, cfg.grouping);
}

std::int64_t resample_count(double pilot_variance, int m, double eps_r) {
  if (!(eps_r > 0.0)) throw std::invalid_argument("resampling tolerance must be positive");
  if (pilot_variance < 0.0) throw std::invalid_argument("variance must be non-negative");
  const double needed = std::ceil(static_cast<double>(m) * pilot_variance / (eps_r * eps_r));
  return std::max<std::int64_t>(m, static_cast<std::int64_t>(needed));
}

ResampleResult resample_state(const StateVector& state, const PauliSum& h, const EstimatorConfig& cfg, double eps_r,
                              Rng& rng) {
  if (!(eps_r > 0.0)) throw std::invalid_argument("resampling tolerance must be positive");
  ResampleResult r;
  r.pilot = estimate_energy(state, h, cfg.m, cfg.noiseless, rng, cfg.grouping);
  r.n_r = resample_count(r.pilot.variance, cfg.m, eps_r);
  r.estimate = estimate_energy(state, h, r.n_r, cfg.noiseless, rng, cfg.grouping);
  return r;
}

EnergyEstimate resample_to_tolerance(const AnsatzCircuit& ansatz, const Vector& theta, const PauliSum& h,
                                     const EstimatorConfig& cfg, double eps_r, Rng& rng) {
  return resample_state(prepare_state(ansatz, theta), h, cfg, eps_r, rng).estimate;
}

}  // namespace vaqclab
