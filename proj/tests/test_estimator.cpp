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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "vaqclab/estimator.hpp"

namespace vaqclab {
namespace {

constexpr double kPi = std::numbers::pi;

AnsatzCircuit single_ry() { return AnsatzCircuit(1, {GateOp::ry(1, 1)}); }

StateVector ry_state(double phi) { return apply_gate(StateVector(1), GateOp::ry_fixed(1, phi)); }

TEST(SampleTerm, DeterministicOutcomes) {
  Rng rng(1);
  const TermSample z = sample_term_mean(PauliMasks::of("Z"), StateVector(1), 64, rng);
  EXPECT_EQ(z.mean, 1.0);
  EXPECT_EQ(z.sample_variance, 0.0);
  const TermSample x = sample_term_mean(PauliMasks::of("X"), ry_state(kPi / 2), 64, rng);
  EXPECT_EQ(x.mean, 1.0);
  EXPECT_EQ(x.sample_variance, 0.0);
  EXPECT_THROW(sample_term_mean(PauliMasks::of("I"), StateVector(1), 64, rng), std::invalid_argument);
}

TEST(SampleTerm, FairCoinLimit) {
  Rng rng(2);
  const std::int64_t m = 100000;
  const TermSample s = sample_term_mean(PauliMasks::of("Z"), ry_state(kPi / 2), m, rng);
  EXPECT_NEAR(s.mean, 0.0, 4.0 / std::sqrt(double(m)));
  EXPECT_NEAR(s.sample_variance, 1.0, 1e-3);
}

TEST(PlusProbability, MatchesExpectation) {
  Rng rng(3);
  std::normal_distribution<double> g;
  ComplexVector a(8);
  for (auto& z : a) z = {g(rng), g(rng)};
  a.normalize();
  const StateVector s(3, a);
  for (const char* w : {"XYZ", "YYI", "IXZ", "ZZZ", "YIX"}) {
    const PauliMasks m = PauliMasks::of(w);
    EXPECT_NEAR(2 * plus_probability(m, s) - 1, pauli_expectation(m, s), 1e-12) << w;
  }
}

TEST(EstimateEnergy, IdentityAndDeterministic) {
  Rng rng(4);
  EstimatorConfig cfg;
  const EnergyEstimate id = estimate_energy(AnsatzCircuit(2, {GateOp::ry(1, 1)}), Vector::Constant(1, 0.4),
                                            parse_pauli_sum("0.5 II"), cfg, rng);
  EXPECT_EQ(id.mean, 0.5);
  EXPECT_EQ(id.variance, 0.0);
  const EnergyEstimate z = estimate_energy(single_ry(), Vector::Zero(1), parse_pauli_sum("1 Z"), cfg, rng);
  EXPECT_EQ(z.mean, 1.0);
  EXPECT_EQ(z.variance, 0.0);
}

TEST(EstimateEnergy, GrandMeanWithinClt) {
  Rng rng(5);
  EstimatorConfig cfg;
  double sum = 0.0;
  const int reps = 1000;
  for (int i = 0; i < reps; ++i) {
    sum += estimate_energy(single_ry(), Vector::Constant(1, kPi / 2), parse_pauli_sum("1 Z"), cfg, rng).mean;
  }
  EXPECT_LT(std::abs(sum / reps), 4.0 / std::sqrt(64.0 * reps));
}

TEST(EstimateEnergy, VarianceFormulaIsConsistent) {
  // Reported variance of the mean vs the empirical spread of repeated
  // estimates on a multi-term operator.
  Rng rng(6);
  const PauliSum h = parse_pauli_sum("0.3 II\n0.7 ZI\n-0.4 XX\n0.25 YZ\n0.5 IX");
  const AnsatzCircuit c = h2_ansatz();
  const Vector theta = (Vector(4) << 0.3, -1.1, 0.8, 2.0).finished();
  const StateVector s = prepare_state(c, theta);
  const double exact = exact_expectation(h, s);
  const int reps = 4000;
  double mean = 0.0, sq = 0.0, reported = 0.0;
  for (int i = 0; i < reps; ++i) {
    const EnergyEstimate e = estimate_energy(s, h, 64, false, rng);
    mean += e.mean;
    sq += e.mean * e.mean;
    reported += e.variance;
  }
  mean /= reps;
  const double empirical = sq / reps - mean * mean;
  reported /= reps;
  EXPECT_NEAR(mean, exact, 4 * std::sqrt(empirical / reps));
  EXPECT_NEAR(reported / empirical, 1.0, 0.1);
}

TEST(EstimateEnergy, NoiselessIsExact) {
  Rng rng(7);
  const PauliSum h = testing::lih_target();
  const Vector theta = Vector::LinSpaced(20, -0.5, 0.9);
  EstimatorConfig cfg;
  cfg.noiseless = true;
  const EnergyEstimate e = estimate_energy(lih_ansatz(), theta, h, cfg, rng);
  EXPECT_NEAR(e.mean, exact_expectation(h, prepare_state(lih_ansatz(), theta)), 1e-12);
  EXPECT_EQ(e.variance, 0.0);
}

TEST(EstimateEnergy, SameSeedSameStream) {
  const PauliSum h = testing::lih_target();
  const Vector theta = Vector::LinSpaced(20, 0.1, 0.4);
  EstimatorConfig cfg;
  Rng a(99), b(99);
  for (int i = 0; i < 5; ++i) {
    const EnergyEstimate ea = estimate_energy(lih_ansatz(), theta, h, cfg, a);
    const EnergyEstimate eb = estimate_energy(lih_ansatz(), theta, h, cfg, b);
    EXPECT_EQ(ea.mean, eb.mean);
    EXPECT_EQ(ea.variance, eb.variance);
  }
}

TEST(Resample, CountArithmetic) {
  EXPECT_EQ(resample_count(4e-6, 64, 5e-4), 1024);
  EXPECT_EQ(resample_count(0.0, 64, 5e-4), 64);
  EXPECT_EQ(resample_count(1e-9, 64, 5e-4), 64);
  EXPECT_THROW(resample_count(1e-6, 64, 0.0), std::invalid_argument);
}

TEST(Resample, DeterministicStateUsesM) {
  Rng rng(8);
  EstimatorConfig cfg;
  const ResampleResult r = resample_state(StateVector(1), parse_pauli_sum("1 Z"), cfg, 5e-4, rng);
  EXPECT_EQ(r.n_r, 64);
  EXPECT_EQ(r.estimate.variance, 0.0);
}

TEST(Resample, ReachesTolerance) {
  Rng rng(9);
  EstimatorConfig cfg;
  const double eps = 0.01;
  const int reps = 200;
  double s = 0.0, sq = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double v =
        resample_to_tolerance(single_ry(), Vector::Constant(1, kPi / 2), parse_pauli_sum("1 Z"), cfg, eps, rng).mean;
    s += v;
    sq += v * v;
  }
  const double mean = s / reps;
  EXPECT_LE(std::sqrt((sq - reps * mean * mean) / (reps - 1)), 1.5 * eps);
}

TEST(Grouping, PartitionIsQubitWiseCommuting) {
  const PauliSum h = testing::lih_target();
  const auto groups = qubit_wise_groups(h);
  std::size_t terms = 0;
  for (const auto& g : groups) {
    EXPECT_EQ(g.x_mask & g.y_mask, 0u);
    EXPECT_EQ(g.x_mask & g.z_mask, 0u);
    EXPECT_EQ(g.y_mask & g.z_mask, 0u);
    terms += g.coefficients.size();
  }
  EXPECT_EQ(terms, 99u);  // all but the identity
  EXPECT_LT(groups.size(), 99u);
}

TEST(Grouping, UnbiasedAndNoiselessExact) {
  Rng rng(10);
  const PauliSum h = testing::lih_target();
  const Vector theta = Vector::LinSpaced(20, -0.3, 0.6);
  const StateVector s = prepare_state(lih_ansatz(), theta);
  const double exact = exact_expectation(h, s);
  EXPECT_NEAR(estimate_energy(s, h, 64, true, rng, Grouping::qubit_wise).mean, exact, 1e-12);
  const int reps = 2000;
  double sum = 0.0, var = 0.0;
  for (int i = 0; i < reps; ++i) {
    const EnergyEstimate e = estimate_energy(s, h, 64, false, rng, Grouping::qubit_wise);
    sum += e.mean;
    var += e.variance;
  }
  EXPECT_NEAR(sum / reps, exact, 4 * std::sqrt(var / reps / reps));
}

TEST(Grouping, ParseNames) {
  EXPECT_EQ(parse_grouping("per-term"), Grouping::per_term);
  EXPECT_EQ(parse_grouping("qubit-wise"), Grouping::qubit_wise);
  EXPECT_EQ(to_string(Grouping::qubit_wise), "qubit-wise");
  EXPECT_THROW(parse_grouping("bogus"), std::invalid_argument);
}

}  // namespace
}  // namespace vaqclab
