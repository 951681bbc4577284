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

#include "vaqclab/hamiltonian.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace vaqclab {

PauliMasks PauliMasks::of(std::string_view word) {
  PauliMasks m;
  for (std::size_t j = 0; j < word.size(); ++j) {
    const std::uint32_t bit = std::uint32_t{1} << j;
    switch (word[j]) {
      case 'I': break;
      case 'X': m.flip_mask |= bit; break;
      case 'Y': m.flip_mask |= bit; m.phase_mask |= bit; ++m.y_count; break;
      case 'Z': m.phase_mask |= bit; break;
      default: throw std::invalid_argument(std::string("illegal Pauli character '") + word[j] + "'");
    }
  }
  return m;
}

PauliSum::PauliSum(int n_qubits, const std::vector<PauliTerm>& terms) : n_qubits_(n_qubits) {
  if (n_qubits_ < 1 || n_qubits_ > kMaxQubits) {
    throw std::invalid_argument("n_qubits must lie in [1, " + std::to_string(kMaxQubits) + "]");
  }
  std::unordered_map<std::string, std::size_t> position;
  std::vector<PauliTerm> merged;
  for (const auto& t : terms) {
    if (static_cast<int>(t.word.size()) != n_qubits_) {
      throw std::invalid_argument("Pauli word '" + t.word + "' has length " + std::to_string(t.word.size()) +
                                  ", expected " + std::to_string(n_qubits_));
    }
    PauliMasks::of(t.word);
    auto [it, inserted] = position.emplace(t.word, merged.size());
    if (inserted) {
      merged.push_back(t);
    } else {
      merged[it->second].coefficient += t.coefficient;
    }
  }
  for (auto& t : merged) {
    if (std::abs(t.coefficient) < kDropTolerance) continue;
    masks_.push_back(PauliMasks::of(t.word));
    terms_.push_back(std::move(t));
  }
}

double PauliSum::coefficient(std::string_view word) const {
  for (const auto& t : terms_) {
    if (t.word == word) return t.coefficient;
  }
  return 0.0;
}

bool operator==(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits_ != b.n_qubits_ || a.size() != b.size()) return false;
  for (const auto& t : a.terms_) {
    bool found = false;
    for (const auto& u : b.terms_) {
      if (u.word == t.word) {
        if (u.coefficient != t.coefficient) return false;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

PauliSum operator*(double scale, const PauliSum& h) {
  std::vector<PauliTerm> terms = h.terms();
  for (auto& t : terms) t.coefficient *= scale;
  return PauliSum(h.n_qubits(), terms);
}

PauliSum operator+(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("cannot add Pauli sums of different qubit counts");
  std::vector<PauliTerm> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return PauliSum(a.n_qubits(), terms);
}

PauliSum parse_pauli_sum(std::string_view text) {
  std::vector<PauliTerm> terms;
  int n_qubits = -1;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = "line " + std::to_string(line_no);
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string coef_text, word, extra;
    if (!(fields >> coef_text)) continue;
    if (!(fields >> word)) throw ConfigError(where + ": expected '<coefficient> <word>'");
    if (fields >> extra) throw ConfigError(where + ": unexpected trailing token '" + extra + "'");

    std::string_view digits = coef_text;
    if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
    double coef = 0.0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), coef);
    if (ec != std::errc{} || end != digits.data() + digits.size() || !std::isfinite(coef)) {
      throw ConfigError(where + ": malformed coefficient '" + coef_text + "'");
    }
    for (char c : word) {
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
        throw ConfigError(where + ": illegal character '" + std::string(1, c) + "' in Pauli word '" + word + "'");
      }
    }
    if (n_qubits < 0) {
      n_qubits = static_cast<int>(word.size());
      if (n_qubits > kMaxQubits) throw ConfigError(where + ": word longer than " + std::to_string(kMaxQubits));
    } else if (static_cast<int>(word.size()) != n_qubits) {
      throw ConfigError(where + ": word '" + word + "' has length " + std::to_string(word.size()) + ", expected " +
                        std::to_string(n_qubits));
    }
    terms.push_back({coef, word});
  }
  if (n_qubits < 0) throw ConfigError("no Pauli terms found");
  return PauliSum(n_qubits, terms);
}

PauliSum load_pauli_sum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open Hamiltonian file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_pauli_sum(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize(const PauliSum& h) {
  std::string out;
  char buf[64];
  for (const auto& t : h.terms()) {
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), t.coefficient);
    out.append(buf, end);
    out += ' ';
    out += t.word;
    out += '\n';
  }
  return out;
}

ComplexMatrix to_dense_matrix(const PauliSum& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  static constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (std::size_t j = 0; j < h.size(); ++j) {
    const auto& mk = h.masks()[j];
    const std::complex<double> scale = h.terms()[j].coefficient * kIPow[mk.y_count & 3];
    for (std::uint32_t x = 0; x < static_cast<std::uint32_t>(dim); ++x) {
      const double sign = (std::popcount(x & mk.phase_mask) & 1) ? -1.0 : 1.0;
      m(x ^ mk.flip_mask, x) += sign * scale;
    }
  }
  return m;
}

EigenResult exact_eigen(const PauliSum& h) {
  if (h.n_qubits() > kMaxQubits) throw std::invalid_argument("exact_eigen: qubit count above dense cap");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(to_dense_matrix(h));
  if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  ComplexVector ground = solver.eigenvectors().col(0);
  ground.normalize();
  return {values(0), values(1), StateVector(h.n_qubits(), std::move(ground))};
}

HomotopyHamiltonian::HomotopyHamiltonian(PauliSum initial_hamiltonian, PauliSum target_hamiltonian)
    : initial(std::move(initial_hamiltonian)), target(std::move(target_hamiltonian)) {
  if (initial.n_qubits() != target.n_qubits()) {
    throw std::invalid_argument("initial and target Hamiltonians act on different qubit counts");
  }
}

PauliSum homotopy_at(const HomotopyHamiltonian& hh, double t) {
  if (hh.initial.n_qubits() != hh.target.n_qubits()) throw std::invalid_argument("homotopy qubit-count mismatch");
  std::vector<PauliTerm> terms;
  terms.reserve(hh.initial.size() + hh.target.size());
  for (const auto& u : hh.initial.terms()) terms.push_back({(1.0 - t) * u.coefficient, u.word});
  for (const auto& u : hh.target.terms()) terms.push_back({t * u.coefficient, u.word});
  return PauliSum(hh.n_qubits(), terms);
}

PauliSum extract_initial_hamiltonian(const PauliSum& h) {
  std::vector<PauliTerm> kept;
  for (const auto& t : h.terms()) {
    int z = 0, other = 0;
    for (char c : t.word) {
      if (c == 'Z') ++z;
      else if (c != 'I') ++other;
    }
    if (other == 0 && z <= 1) kept.push_back(t);
  }
  return PauliSum(h.n_qubits(), kept);
}

}  // namespace vaqclab
