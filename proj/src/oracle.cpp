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

ObjectiveOracle::ObjectiveOracle(Function f, int num_parameters, int samples_per_evaluation)
    : f_(std::move(f)), num_parameters_(num_parameters), samples_(samples_per_evaluation) {
  if (samples_ < 1) throw std::invalid_argument("samples per evaluation must be positive");
}

bool ObjectiveOracle::visit(const Vector& theta) {
  std::string key(reinterpret_cast<const char*>(theta.data()), sizeof(double) * static_cast<std::size_t>(theta.size()));
  return seen_.insert(std::move(key)).second;
}

EnergyEstimate ObjectiveOracle::operator()(const Vector& theta) {
  if (theta.size() != num_parameters_) throw std::invalid_argument("oracle called with wrong parameter count");
  const bool fresh = visit(theta);
  EnergyEstimate e = f_(theta, samples_);
  e.unique_circuit = fresh;
  ++evaluations_;
  optimization_samples_ += e.samples_used;
  return e;
}

EnergyEstimate ObjectiveOracle::resample(const Vector& theta, double eps_r) {
  if (!(eps_r > 0.0)) throw std::invalid_argument("resampling tolerance must be positive");
  if (theta.size() != num_parameters_) throw std::invalid_argument("oracle called with wrong parameter count");
  const bool fresh = visit(theta);
  const EnergyEstimate pilot = f_(theta, samples_);
  const std::int64_t n_r = resample_count(pilot.variance, samples_, eps_r);
  EnergyEstimate e = f_(theta, n_r);
  e.unique_circuit = fresh;
  evaluations_ += 2;
  resampling_evaluations_ += 2;
  resampling_samples_ += pilot.samples_used + e.samples_used;
  return e;
}

ObjectiveOracle make_energy_oracle(const AnsatzCircuit& ansatz, PauliSum h, const EstimatorConfig& cfg, Rng& rng) {
  if (h.n_qubits() != ansatz.n_qubits()) throw std::invalid_argument("Hamiltonian and ansatz qubit counts differ");
  const bool noiseless = cfg.noiseless;
  const Grouping grouping = cfg.grouping;
  auto f = [ansatz, h = std::move(h), noiseless, grouping, &rng](const Vector& theta, std::int64_t samples) {
    return estimate_energy(prepare_state(ansatz, theta), h, samples, noiseless, rng, grouping);
  };
  return ObjectiveOracle(std::move(f), ansatz.num_parameters(), cfg.m);
}

}  // namespace vaqclab
