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

#ifndef VAQCLAB_ESTIMATOR_HPP
#define VAQCLAB_ESTIMATOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "vaqclab/hamiltonian.hpp"
#include "vaqclab/simulator.hpp"
#include "vaqclab/types.hpp"

namespace vaqclab {

/// One evaluation of the sampled objective.
struct EnergyEstimate {
  double mean = 0.0;
  double variance = 0.0;          // variance of `mean`, not per shot
  std::int64_t samples_used = 1;  // draws per non-identity term
  bool unique_circuit = false;    // first visit of this parameter point
};

/// per_term: every non-identity term gets its own m draws. qubit_wise: terms
/// that agree on every shared qubit's basis are read off the same m shots.
enum class Grouping { per_term, qubit_wise };

struct EstimatorConfig {
  int m = 64;
  std::uint64_t rng_seed = 0;
  bool noiseless = false;
  Grouping grouping = Grouping::per_term;
};

Grouping parse_grouping(const std::string& name);
std::string to_string(Grouping g);

struct TermSample {
  double mean;
  double sample_variance;  // unbiased, of the individual +-1 draws
};

/// Probability of the +1 outcome when measuring the Pauli word. The state is
/// rotated so the word becomes diagonal (X: H, Y: S^dagger then H) and the
/// even-parity weight on the support is summed.
double plus_probability(const PauliMasks& masks, const StateVector& state);

/// m i.i.d. +-1 draws of a (non-identity) Pauli measurement.
TermSample sample_term_mean(const PauliMasks& masks, const StateVector& state, std::int64_t m, Rng& rng);

/// Terms sharing one measurement basis. Bit masks follow PauliMasks.
struct MeasurementGroup {
  std::uint32_t x_mask = 0;
  std::uint32_t y_mask = 0;
  std::uint32_t z_mask = 0;
  std::vector<double> coefficients;
  std::vector<std::uint32_t> supports;
};

/// Greedy qubit-wise commuting partition of the non-identity terms, largest
/// |c| first (ties in file order).
std::vector<MeasurementGroup> qubit_wise_groups(const PauliSum& h);

/// `shots` measurements in the group's basis; mean and unbiased variance of
/// the per-shot value sum_j c_j (+-1)_j.
TermSample sample_group(const MeasurementGroup& group, const StateVector& state, std::int64_t shots, Rng& rng);

/// Per-term independent sampling: mean = sum_j c_j mean_j (identity terms
/// exact), variance = sum_j c_j^2 s_j^2 / samples. Noiseless mode returns the
/// exact expectation with zero variance.
EnergyEstimate estimate_energy(const StateVector& state, const PauliSum& h, std::int64_t samples, bool noiseless,
                               Rng& rng, Grouping grouping = Grouping::per_term);

EnergyEstimate estimate_energy(const AnsatzCircuit& ansatz, const Vector& theta, const PauliSum& h,
                               const EstimatorConfig& cfg, Rng& rng);

/// N_r = max(m, ceil(m * pilot_variance / eps_r^2)).
std::int64_t resample_count(double pilot_variance, int m, double eps_r);

struct ResampleResult {
  EnergyEstimate pilot;     // m-sample estimate used to size the rerun
  EnergyEstimate estimate;  // fresh estimate with N_r samples per term
  std::int64_t n_r = 0;
};

ResampleResult resample_state(const StateVector& state, const PauliSum& h, const EstimatorConfig& cfg, double eps_r,
                              Rng& rng);

/// Pilot with m samples, then a fresh estimator with N_r samples per term so
/// that its standard deviation is about eps_r.
EnergyEstimate resample_to_tolerance(const AnsatzCircuit& ansatz, const Vector& theta, const PauliSum& h,
                                     const EstimatorConfig& cfg, double eps_r, Rng& rng);

}  // namespace vaqclab

#endif  // VAQCLAB_ESTIMATOR_HPP
