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

#ifndef VAQCLAB_SIMULATOR_HPP
#define VAQCLAB_SIMULATOR_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vaqclab/types.hpp"

namespace vaqclab {

// Qubits are numbered 1..n. Basis label |b1 b2 ... bn> lists q1 leftmost and
// maps to amplitude index sum_i b_i * 2^(n-i), so q1 is the most significant
// bit of the index.
inline std::size_t qubit_mask(int n_qubits, int qubit) {
  return std::size_t{1} << (n_qubits - qubit);
}

/// Dense n-qubit wavefunction. Immutable after construction; gate
/// application returns a new state.
template <typename Real>
class StateVectorT {
 public:
  using Amplitudes = ComplexVectorT<Real>;

  /// |0...0> on n qubits.
  explicit StateVectorT(int n_qubits) : n_qubits_(checked(n_qubits)) {
    amplitudes_ = Amplitudes::Zero(Eigen::Index{1} << n_qubits_);
    amplitudes_(0) = Real(1);
  }

  StateVectorT(int n_qubits, Amplitudes amplitudes)
      : n_qubits_(checked(n_qubits)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != (Eigen::Index{1} << n_qubits_)) {
      throw std::invalid_argument("state vector length must equal 2^n_qubits");
    }
  }

  /// Computational basis state from a label such as "0110" (q1 leftmost).
  static StateVectorT basis(const std::string& label) {
    StateVectorT s(static_cast<int>(label.size()));
    std::size_t index = 0;
    for (char c : label) {
      if (c != '0' && c != '1') throw std::invalid_argument("basis label must be a bit string");
      index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    s.amplitudes_.setZero();
    s.amplitudes_(static_cast<Eigen::Index>(index)) = Real(1);
    return s;
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dimension() const { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Real norm() const { return amplitudes_.norm(); }

  /// Mutable access for in-place gate kernels.
  Amplitudes& mutable_amplitudes() { return amplitudes_; }

 private:
  static int checked(int n) {
    if (n < 1 || n > kMaxQubits) {
      throw std::invalid_argument("n_qubits must lie in [1, " + std::to_string(kMaxQubits) + "]");
    }
    return n;
  }

  int n_qubits_;
  Amplitudes amplitudes_;
};

using StateVector = StateVectorT<double>;

enum class GateKind { RY, X, CNOT };

/// 1-based index into the circuit parameter vector.
struct ParameterRef {
  int index;
  friend bool operator==(const ParameterRef&, const ParameterRef&) = default;
};

/// Rotation angle of a gate: none (X, CNOT), a fixed angle, or a parameter.
using AngleSource = std::variant<std::monostate, double, ParameterRef>;

struct GateOp {
  GateKind kind;
  int target;
  std::optional<int> control;
  AngleSource angle;

  static GateOp ry(int target, int parameter) { return {GateKind::RY, target, std::nullopt, ParameterRef{parameter}}; }
  static GateOp ry_fixed(int target, double angle) { return {GateKind::RY, target, std::nullopt, angle}; }
  static GateOp x(int target) { return {GateKind::X, target, std::nullopt, std::monostate{}}; }
  static GateOp cnot(int control, int target) { return {GateKind::CNOT, target, control, std::monostate{}}; }

  std::optional<int> parameter() const {
    if (const auto* p = std::get_if<ParameterRef>(&angle)) return p->index;
    return std::nullopt;
  }
};

/// Ordered gate list acting on |0...0>. The parameter indices referenced by
/// the gates are exactly {1..p}.
class AnsatzCircuit {
 public:
  AnsatzCircuit(int n_qubits, std::vector<GateOp> gates);

  int n_qubits() const { return n_qubits_; }
  int num_parameters() const { return num_parameters_; }
  const std::vector<GateOp>& gates() const { return gates_; }

  /// True when every parameterized gate is an RY and each parameter drives
  /// exactly one gate, so the +-pi/2 shift rule is exact.
  bool shift_rule_compatible() const { return shift_rule_compatible_; }

 private:
  int n_qubits_;
  std::vector<GateOp> gates_;
  int num_parameters_ = 0;
  bool shift_rule_compatible_ = true;
};

/// Declarative description of a layered RY ansatz.
struct LayeredAnsatzSpec {
  int n_qubits = 1;
  int layers = 0;
  std::set<int> x_prefix;
  std::set<int> x_suffix;
};

/// X gates on x_prefix, one RY per qubit, `layers` repetitions of
/// [CNOT ladder q1->q2 ... q(n-1)->qn, one RY per qubit], X gates on x_suffix.
/// p = n_qubits * (layers + 1).
AnsatzCircuit build_layered_ry_ansatz(int n_qubits, int layers, const std::set<int>& x_prefix,
                                      const std::set<int>& x_suffix);
AnsatzCircuit build_layered_ry_ansatz(const LayeredAnsatzSpec& spec);

/// Four-qubit, four-layer ansatz used for LiH, X on q2 and q3 appended (p = 20).
AnsatzCircuit lih_ansatz();
/// Two-qubit one-layer ansatz with a prepended X on q1 (p = 4).
AnsatzCircuit h2_ansatz();

namespace detail {

template <typename Real>
void apply_in_place(StateVectorT<Real>& state, const GateOp& gate, const VectorT<Real>& theta) {
  const int n = state.n_qubits();
  auto check_qubit = [n](int q) {
    if (q < 1 || q > n) throw std::out_of_range("qubit index " + std::to_string(q) + " outside 1.." + std::to_string(n));
  };
  check_qubit(gate.target);
  if (gate.control) check_qubit(*gate.control);

  auto& a = state.mutable_amplitudes();
  const auto dim = static_cast<std::size_t>(a.size());
  const std::size_t t = qubit_mask(n, gate.target);

  switch (gate.kind) {
    case GateKind::RY: {
      Real angle{};
      if (const auto* fixed = std::get_if<double>(&gate.angle)) {
        angle = static_cast<Real>(*fixed);
      } else if (const auto* p = std::get_if<ParameterRef>(&gate.angle)) {
        if (p->index < 1 || p->index > theta.size()) {
          throw std::out_of_range("parameter index " + std::to_string(p->index) + " beyond parameter vector");
        }
        angle = theta(p->index - 1);
      } else {
        throw std::invalid_argument("RY gate without an angle source");
      }
      const Real c = std::cos(angle / 2);
      const Real s = std::sin(angle / 2);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & t) continue;
        const auto a0 = a(static_cast<Eigen::Index>(i));
        const auto a1 = a(static_cast<Eigen::Index>(i | t));
        a(static_cast<Eigen::Index>(i)) = c * a0 - s * a1;
        a(static_cast<Eigen::Index>(i | t)) = s * a0 + c * a1;
      }
      break;
    }
    case GateKind::X:
      for (std::size_t i = 0; i < dim; ++i) {
        if (!(i & t)) std::swap(a(static_cast<Eigen::Index>(i)), a(static_cast<Eigen::Index>(i | t)));
      }
      break;
    case GateKind::CNOT: {
      if (!gate.control || *gate.control == gate.target) {
        throw std::invalid_argument("CNOT needs a control distinct from its target");
      }
      const std::size_t c = qubit_mask(n, *gate.control);
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & c) && !(i & t)) std::swap(a(static_cast<Eigen::Index>(i)), a(static_cast<Eigen::Index>(i | t)));
      }
      break;
    }
  }
}

}  // namespace detail

/// Applies one gate and returns the transformed state.
template <typename Real>
StateVectorT<Real> apply_gate(StateVectorT<Real> state, const GateOp& gate, const VectorT<Real>& theta) {
  detail::apply_in_place(state, gate, theta);
  return state;
}

template <typename Real>
StateVectorT<Real> apply_gate(StateVectorT<Real> state, const GateOp& gate) {
  detail::apply_in_place(state, gate, VectorT<Real>{});
  return state;
}

/// psi(theta): all gates of the ansatz applied in order to |0...0>.
template <typename Real>
StateVectorT<Real> prepare_state(const AnsatzCircuit& ansatz, const VectorT<Real>& theta) {
  if (theta.size() != ansatz.num_parameters()) {
    throw std::invalid_argument("parameter vector has length " + std::to_string(theta.size()) + ", ansatz expects " +
                                std::to_string(ansatz.num_parameters()));
  }
  StateVectorT<Real> state(ansatz.n_qubits());
  for (const auto& gate : ansatz.gates()) detail::apply_in_place(state, gate, theta);
  return state;
}

}  // namespace vaqclab

#endif  // VAQCLAB_SIMULATOR_HPP
