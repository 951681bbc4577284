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
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "vaqclab/hamiltonian.hpp"
#include "vaqclab/vaqc.hpp"

namespace vaqclab {
namespace {

using testing::kLihLambda0;
using testing::kLihLambda1;

// Independent dense construction via Kronecker products; the leftmost word
// character is the leftmost factor.
ComplexMatrix kron_word(const std::string& word) {
  using C = std::complex<double>;
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (char ch : word) {
    ComplexMatrix p(2, 2);
    switch (ch) {
      case 'I': p << 1, 0, 0, 1; break;
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, C(0, -1), C(0, 1), 0; break;
      default: p << 1, 0, 0, -1; break;
    }
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = out(i, j) * p;
    out = next;
  }
  return out;
}

PauliSum random_sum(int n, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coef;
  std::vector<PauliTerm> t;
  for (int j = 0; j < terms; ++j) {
    std::string w;
    for (int q = 0; q < n; ++q) w += "IXYZ"[letter(rng)];
    t.push_back({coef(rng), w});
  }
  return PauliSum(n, t);
}

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexVector a(Eigen::Index{1} << n);
  for (auto& z : a) z = {g(rng), g(rng)};
  a.normalize();
  return StateVector(n, a);
}

TEST(PauliSum, ParsesAndMerges) {
  const PauliSum h = parse_pauli_sum("0.567662 IIII\n0.245088 IIZI\n");
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h.n_qubits(), 4);
  const PauliSum z = parse_pauli_sum("1.0 Z\n2.0 Z\n");
  ASSERT_EQ(z.size(), 1u);
  EXPECT_DOUBLE_EQ(z.coefficient("Z"), 3.0);
}

TEST(PauliSum, DropsCancelledTermsAndSkipsComments) {
  const PauliSum h = parse_pauli_sum("# comment\n\n1.0 XZ\n-1.0 XZ\n0.5 ZZ  # trailing\n");
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.terms()[0].word, "ZZ");
}

TEST(PauliSum, ParseErrorsAreConfigErrors) {
  EXPECT_THROW(parse_pauli_sum("1.0 XQ\n"), ConfigError);
  EXPECT_THROW(parse_pauli_sum("abc XZ\n"), ConfigError);
  EXPECT_THROW(parse_pauli_sum("1.0 XZ\n2.0 XZZ\n"), ConfigError);
  EXPECT_THROW(parse_pauli_sum("1.0\n"), ConfigError);
  EXPECT_THROW(load_pauli_sum("/nonexistent/h.ham"), ConfigError);
}

TEST(PauliSum, SerializeRoundTrips) {
  std::mt19937_64 rng(3);
  const PauliSum h = random_sum(3, 12, rng);
  EXPECT_EQ(parse_pauli_sum(serialize(h)), h);
}

TEST(PauliSum, LihFileHasHundredTerms) { EXPECT_EQ(testing::lih_target().size(), 100u); }

TEST(Masks, Convention) {
  // Rightmost character acts on q1, the most significant index bit.
  const PauliMasks m = PauliMasks::of("XIY");
  EXPECT_EQ(m.flip_mask, 0b101u);
  EXPECT_EQ(m.phase_mask, 0b100u);
  EXPECT_EQ(m.y_count, 1);
}

TEST(Expectation, MatchesDenseOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 4;
    const PauliSum h = random_sum(n, 8, rng);
    const StateVector s = random_state(n, rng);
    ComplexMatrix dense = ComplexMatrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto& t : h.terms()) {
      // Reverse the word: its rightmost character acts on q1, the leftmost
      // Kronecker factor.
      dense += t.coefficient * kron_word(std::string(t.word.rbegin(), t.word.rend()));
    }
    const double want = (s.amplitudes().adjoint() * dense * s.amplitudes())(0).real();
    EXPECT_NEAR(exact_expectation(h, s), want, 1e-12);
    EXPECT_NEAR((to_dense_matrix(h) - dense).norm(), 0.0, 1e-12);
  }
}

TEST(Expectation, SimpleCases) {
  const PauliSum id = parse_pauli_sum("0.7 II");
  std::mt19937_64 rng(5);
  EXPECT_NEAR(exact_expectation(id, random_state(2, rng)), 0.7, 1e-14);
  const PauliSum z = parse_pauli_sum("1 Z");
  for (double phi : {0.0, std::numbers::pi / 2, std::numbers::pi}) {
    const StateVector s = apply_gate(StateVector(1), GateOp::ry_fixed(1, phi));
    EXPECT_NEAR(exact_expectation(z, s), std::cos(phi), 1e-15);
  }
  EXPECT_THROW(exact_expectation(z, StateVector(2)), std::invalid_argument);
}

TEST(Eigen, SingleZ) {
  const EigenResult r = exact_eigen(parse_pauli_sum("1 Z"));
  EXPECT_NEAR(r.ground_energy, -1.0, 1e-14);
  EXPECT_NEAR(r.excited_energy, 1.0, 1e-14);
  EXPECT_NEAR(std::abs(r.ground.amplitudes()(1)), 1.0, 1e-14);
}

TEST(Eigen, LihPinned) {
  const EigenResult r = exact_eigen(testing::lih_target());
  EXPECT_NEAR(r.ground_energy, kLihLambda0, 1e-12);
  EXPECT_NEAR(r.excited_energy, kLihLambda1, 1e-12);
}

TEST(Homotopy, InitialExtraction) {
  const PauliSum target = testing::lih_target();
  const PauliSum hi = extract_initial_hamiltonian(target);
  EXPECT_EQ(hi, load_pauli_sum(testing::data_path("lih_initial.ham")));
  ASSERT_EQ(hi.size(), 5u);
  EXPECT_DOUBLE_EQ(hi.coefficient("ZIII"), -0.245088);
  EXPECT_DOUBLE_EQ(hi.coefficient("IIIZ"), -0.101581);

  const StateVector ref = StateVector::basis("0110");
  EXPECT_NEAR(exact_expectation(hi, ref), -0.125676, 1e-12);
  const EigenResult r = exact_eigen(hi);
  EXPECT_NEAR(r.ground_energy, -0.125676, 1e-12);
  EXPECT_NEAR(std::abs(r.ground.amplitudes()(6)), 1.0, 1e-12);

  EXPECT_EQ(extract_initial_hamiltonian(parse_pauli_sum("0.5 ZZ\n0.1 ZI")), parse_pauli_sum("0.1 ZI"));
  EXPECT_TRUE(extract_initial_hamiltonian(parse_pauli_sum("0.5 XX")).empty());
}

TEST(Homotopy, EndpointsAndMidpoint) {
  const HomotopyHamiltonian hh(parse_pauli_sum("1 Z"), parse_pauli_sum("3 Z"));
  EXPECT_EQ(homotopy_at(hh, 0.0), hh.initial);
  EXPECT_EQ(homotopy_at(hh, 1.0), hh.target);
  EXPECT_EQ(homotopy_at(hh, 0.5), parse_pauli_sum("2 Z"));
  EXPECT_THROW(HomotopyHamiltonian(parse_pauli_sum("1 Z"), parse_pauli_sum("1 ZZ")), std::invalid_argument);
}

TEST(Homotopy, ExpectationIsAffineInT) {
  std::mt19937_64 rng(17);
  const HomotopyHamiltonian hh(random_sum(3, 6, rng), random_sum(3, 9, rng));
  const StateVector s = random_state(3, rng);
  const double e0 = exact_expectation(hh.initial, s);
  const double e1 = exact_expectation(hh.target, s);
  for (double t : {0.1, 0.37, 0.8}) {
    EXPECT_NEAR(exact_expectation(homotopy_at(hh, t), s), (1 - t) * e0 + t * e1, 1e-12);
  }
}

TEST(Gap, SingleQubitAnalytic) {
  const HomotopyHamiltonian hh(parse_pauli_sum("1 Z"), parse_pauli_sum("3 Z"));
  const GapReport g = gap_diagnostic(hh, uniform_grid(11));
  for (const auto& p : g.points) EXPECT_NEAR(p.gap, 2 * (1 + 2 * p.t), 1e-12);
  EXPECT_NEAR(g.min_gap, 2.0, 1e-12);
  EXPECT_EQ(g.t_at_min, 0.0);
}

TEST(Gap, ConstantHomotopy) {
  const PauliSum h = parse_pauli_sum("0.3 XZ\n-0.4 ZI\n0.2 YY");
  const GapReport g = gap_diagnostic(HomotopyHamiltonian(h, h), uniform_grid(5));
  for (const auto& p : g.points) EXPECT_NEAR(p.gap, g.points.front().gap, 1e-12);
}

}  // namespace
}  // namespace vaqclab
