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

#ifndef VAQCLAB_HAMILTONIAN_HPP
#define VAQCLAB_HAMILTONIAN_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "vaqclab/simulator.hpp"
#include "vaqclab/types.hpp"

namespace vaqclab {

/// Coefficients whose magnitude falls below this after merging are dropped.
inline constexpr double kDropTolerance = 1e-12;

/// coefficient * P, P a word over {I,X,Y,Z}. Word character i (1-based from
/// the left) acts on qubit n + 1 - i, i.e. the rightmost character acts on
/// q1.
struct PauliTerm {
  double coefficient = 0.0;
  std::string word;
};

/// Bit masks of a Pauli word in amplitude-index space. P|x> = i^{n_y}
/// (-1)^{popcount(x & phase_mask)} |x ^ flip_mask>.
struct PauliMasks {
  std::uint32_t flip_mask = 0;   // X or Y
  std::uint32_t phase_mask = 0;  // Y or Z
  int y_count = 0;

  static PauliMasks of(std::string_view word);
  bool is_identity() const { return flip_mask == 0 && phase_mask == 0; }
};

/// Weighted sum of n-qubit Pauli words with real coefficients (hence
/// self-adjoint). Duplicate words are merged on construction and
/// near-zero coefficients dropped; insertion order of first occurrence is
/// kept.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}
  PauliSum(int n_qubits, const std::vector<PauliTerm>& terms);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }
  const std::vector<PauliMasks>& masks() const { return masks_; }

  /// Coefficient of `word`, 0 if absent.
  double coefficient(std::string_view word) const;

  /// Order-insensitive exact comparison of the term sets.
  friend bool operator==(const PauliSum& a, const PauliSum& b);

 private:
  int n_qubits_;
  std::vector<PauliTerm> terms_;
  std::vector<PauliMasks> masks_;
};

PauliSum operator*(double scale, const PauliSum& h);
PauliSum operator+(const PauliSum& a, const PauliSum& b);

/// Parses `<coefficient> <word>` lines; `#` starts a comment, blank lines are
/// skipped. Throws ConfigError naming the offending line.
PauliSum parse_pauli_sum(std::string_view text);
PauliSum load_pauli_sum(const std::string& path);

/// Canonical text form: one `<coefficient> <word>` per line, shortest
/// round-trip decimal coefficients.
std::string serialize(const PauliSum& h);

/// <phi| P |phi> for a single word.
template <typename Real>
Real pauli_expectation(const PauliMasks& masks, const StateVectorT<Real>& state) {
  const auto& a = state.amplitudes();
  std::complex<Real> acc{};
  const auto dim = static_cast<std::uint32_t>(a.size());
  for (std::uint32_t x = 0; x < dim; ++x) {
    const auto term = std::conj(a(x ^ masks.flip_mask)) * a(x);
    acc += (std::popcount(x & masks.phase_mask) & 1) ? -term : term;
  }
  // i^{n_y}
  switch (masks.y_count & 3) {
    case 1: acc = {-acc.imag(), acc.real()}; break;
    case 2: acc = -acc; break;
    case 3: acc = {acc.imag(), -acc.real()}; break;
    default: break;
  }
  if (std::abs(acc.imag()) > Real(1e-10)) {
    throw NumericalError("Pauli expectation has imaginary part " + std::to_string(double(acc.imag())));
  }
  return acc.real();
}

/// <phi| H |phi>.
template <typename Real>
Real exact_expectation(const PauliSum& h, const StateVectorT<Real>& state) {
  if (h.n_qubits() != state.n_qubits()) throw std::invalid_argument("Hamiltonian and state qubit counts differ");
  Real total{};
  for (std::size_t j = 0; j < h.size(); ++j) {
    total += static_cast<Real>(h.terms()[j].coefficient) * pauli_expectation(h.masks()[j], state);
  }
  return total;
}

/// Dense 2^n x 2^n matrix of h.
ComplexMatrix to_dense_matrix(const PauliSum& h);

struct EigenResult {
  double ground_energy;   // lambda0
  double excited_energy;  // lambda1, with multiplicity
  StateVector ground;     // any normalized ground eigenvector
  double gap() const { return excited_energy - ground_energy; }
};

/// Two smallest eigenvalues and a ground eigenvector by dense
/// diagonalization.
EigenResult exact_eigen(const PauliSum& h);

/// H(t) = (1 - t) H_I + t H_T.
struct HomotopyHamiltonian {
  PauliSum initial;
  PauliSum target;

  HomotopyHamiltonian(PauliSum initial_hamiltonian, PauliSum target_hamiltonian);
  int n_qubits() const { return target.n_qubits(); }
};

PauliSum homotopy_at(const HomotopyHamiltonian& hh, double t);

/// The identity term plus every weight-one Z term of h.
PauliSum extract_initial_hamiltonian(const PauliSum& h);

}  // namespace vaqclab

#endif  // VAQCLAB_HAMILTONIAN_HPP
