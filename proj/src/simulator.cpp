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

#include "vaqclab/simulator.hpp"

#include <algorithm>
#include <map>

namespace vaqclab {

AnsatzCircuit::AnsatzCircuit(int n_qubits, std::vector<GateOp> gates) : n_qubits_(n_qubits), gates_(std::move(gates)) {
  if (n_qubits_ < 1 || n_qubits_ > kMaxQubits) {
    throw std::invalid_argument("ansatz n_qubits must lie in [1, " + std::to_string(kMaxQubits) + "]");
  }
  std::map<int, int> uses;
  for (const auto& g : gates_) {
    if (g.target < 1 || g.target > n_qubits_) throw std::invalid_argument("gate target outside register");
    switch (g.kind) {
      case GateKind::CNOT:
        if (!g.control || *g.control < 1 || *g.control > n_qubits_ || *g.control == g.target) {
          throw std::invalid_argument("CNOT needs a control in range and distinct from its target");
        }
        if (!std::holds_alternative<std::monostate>(g.angle)) throw std::invalid_argument("CNOT takes no angle");
        break;
      case GateKind::X:
        if (g.control) throw std::invalid_argument("X gate takes no control");
        if (!std::holds_alternative<std::monostate>(g.angle)) throw std::invalid_argument("X gate takes no angle");
        break;
      case GateKind::RY:
        if (g.control) throw std::invalid_argument("RY gate takes no control");
        if (std::holds_alternative<std::monostate>(g.angle)) throw std::invalid_argument("RY gate needs an angle");
        break;
    }
    if (auto p = g.parameter()) {
      if (*p < 1) throw std::invalid_argument("parameter indices are 1-based");
      ++uses[*p];
    }
  }
  num_parameters_ = uses.empty() ? 0 : uses.rbegin()->first;
  if (static_cast<int>(uses.size()) != num_parameters_) {
    throw std::invalid_argument("parameter indices must cover 1..p without gaps");
  }
  shift_rule_compatible_ = std::all_of(uses.begin(), uses.end(), [](const auto& kv) { return kv.second == 1; });
}

AnsatzCircuit build_layered_ry_ansatz(int n_qubits, int layers, const std::set<int>& x_prefix,
                                      const std::set<int>& x_suffix) {
  if (layers < 0) throw std::invalid_argument("layers must be non-negative");
  std::vector<GateOp> gates;
  int next = 1;
  for (int q : x_prefix) gates.push_back(GateOp::x(q));
  for (int q = 1; q <= n_qubits; ++q) gates.push_back(GateOp::ry(q, next++));
  for (int layer = 0; layer < layers; ++layer) {
    for (int q = 1; q < n_qubits; ++q) gates.push_back(GateOp::cnot(q, q + 1));
    for (int q = 1; q <= n_qubits; ++q) gates.push_back(GateOp::ry(q, next++));
  }
  for (int q : x_suffix) gates.push_back(GateOp::x(q));
  return AnsatzCircuit(n_qubits, std::move(gates));
}

AnsatzCircuit build_layered_ry_ansatz(const LayeredAnsatzSpec& spec) {
  return build_layered_ry_ansatz(spec.n_qubits, spec.layers, spec.x_prefix, spec.x_suffix);
}

AnsatzCircuit lih_ansatz() { return build_layered_ry_ansatz(4, 4, {}, {2, 3}); }

AnsatzCircuit h2_ansatz() { return build_layered_ry_ansatz(2, 1, {1}, {}); }

}  // namespace vaqclab
