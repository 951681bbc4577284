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

// End-to-end acceptance gate. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Tolerances are fixed here, not configurable.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "fixtures.hpp"
#include "vaqclab/experiment.hpp"

namespace vaqclab {
namespace {

constexpr double kPi = std::numbers::pi;

// Criterion 1
constexpr double kVaqcMaxError = 5e-3;
constexpr double kVaqcMeanError = 3e-3;
// Criterion 2
constexpr int kMinRestarts = 30;
constexpr double kRestartMeanFactor = 5.0;
// Criterion 3
constexpr std::int64_t kSgdEvalsPerIteration = 41;
constexpr std::int64_t kHessianEvalCap = 840;
constexpr double kEulerCostFactor = 1.25;
// Criterion 4
constexpr std::size_t kMinInstances = 4;
constexpr double kUniqueReduction = 5.0;
// Criterion 5
constexpr int kGrandMeanReps = 1000;
constexpr double kGrandMeanSigmas = 4.0;
constexpr int kResampleReps = 200;
constexpr double kResampleStdFactor = 1.5;
// Criterion 6
constexpr int kDerivativeInstances = 20;
constexpr double kGradientTol = 1e-6;
constexpr double kHessianTol = 1e-5;
// Criterion 7
constexpr int kTelescopingHistories = 1000;
// Criterion 8
constexpr double kGapTol = 1e-9;
// Criterion 9
constexpr double kNftTol = 1e-10;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string g(double x) { return fmt("%.4g", x); }

ExperimentConfig shipped(const std::string& name) {
  return load_experiment_config(testing::config_path(name));
}

struct VaqcBatch {
  std::vector<double> abs_errors;
  std::int64_t total_iterations = 0;
  int steps_per_trial = 0;
  double mean() const {
    double s = 0;
    for (double e : abs_errors) s += e;
    return s / static_cast<double>(abs_errors.size());
  }
  double min() const { return *std::min_element(abs_errors.begin(), abs_errors.end()); }
  double max() const { return *std::max_element(abs_errors.begin(), abs_errors.end()); }
};

VaqcBatch& lih_batch() {
  static VaqcBatch batch = [] {
    const ExperimentResult r = execute_experiment(shipped("lih_vaqc.json"));
    VaqcBatch b;
    for (const auto& rec : r.records) {
      b.abs_errors.push_back(std::abs(rec.error));
      b.total_iterations += rec.iterations;
    }
    b.steps_per_trial = static_cast<int>(r.trajectories.front().steps.size());
    return b;
  }();
  return batch;
}

Outcome criterion1() {
  const VaqcBatch& b = lih_batch();
  Outcome o;
  o.pass = b.abs_errors.size() == 5 && b.max() <= kVaqcMaxError && b.mean() <= kVaqcMeanError;
  o.detail = "5 trials: max |err| " + g(b.max()) + " (<= " + g(kVaqcMaxError) + "), mean " + g(b.mean()) + " (<= " +
             g(kVaqcMeanError) + "), total iterations " + std::to_string(b.total_iterations);
  return o;
}

Outcome criterion2() {
  const VaqcBatch& b = lih_batch();
  ExperimentConfig cfg = shipped("lih_vqe_restarts.json");
  cfg.restarts.iteration_budget = b.total_iterations;
  cfg.restarts.min_restarts = std::max(cfg.restarts.min_restarts, kMinRestarts);
  const ExperimentResult r = execute_experiment(cfg);
  double sum = 0, lo = std::numeric_limits<double>::infinity(), hi = 0;
  std::int64_t iters = 0;
  for (const auto& rec : r.records) {
    const double e = std::abs(rec.error);
    sum += e;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    iters += rec.iterations;
  }
  const double mean = sum / static_cast<double>(r.records.size());
  Outcome o;
  o.pass = static_cast<int>(r.records.size()) >= kMinRestarts && lo > b.min() && mean >= kRestartMeanFactor * b.mean();
  o.detail = std::to_string(r.records.size()) + " restarts, " + std::to_string(iters) + " iterations (budget " +
             std::to_string(b.total_iterations) + "): min |err| " + g(lo) + " vs best VAQC " + g(b.min()) +
             ", mean " + g(mean) + " vs 5 x VAQC mean " + g(kRestartMeanFactor * b.mean()) + ", max " + g(hi);
  return o;
}

Outcome criterion3() {
  const PauliSum h = testing::lih_target();
  const AnsatzCircuit ansatz = lih_ansatz();
  EstimatorConfig est;
  Rng rng(3);

  ObjectiveOracle sgd_oracle = make_energy_oracle(ansatz, h, est, rng);
  const int iters = 10;
  const OptimizerRun run = run_sgd(sgd_oracle, Vector::Zero(20), iters);
  bool per_iteration_exact = run.iterations == iters;
  for (std::size_t k = 0; k < run.history.size(); ++k) {
    per_iteration_exact &= run.history[k].evaluations == static_cast<std::int64_t>(k + 1) * kSgdEvalsPerIteration;
  }

  ObjectiveOracle hess_oracle = make_energy_oracle(ansatz, h, est, rng);
  parameter_shift_hessian(hess_oracle, Vector::Zero(20));
  const std::int64_t hessian_evals = hess_oracle.evaluations();

  const PauliSum target = testing::lih_target();
  const HomotopyHamiltonian hh(extract_initial_hamiltonian(target), target);
  const EulerPrediction e = euler_predictor_step(hh, ansatz, 0.142625, Vector::Zero(20), 0.05, est, rng);

  const VaqcBatch& b = lih_batch();
  const double corrector_per_step = static_cast<double>(b.total_iterations * kSgdEvalsPerIteration) /
                                    static_cast<double>(b.abs_errors.size() * static_cast<std::size_t>(b.steps_per_trial));
  const double euler = static_cast<double>(e.evaluations);
  const double ratio = std::max(euler, corrector_per_step) / std::min(euler, corrector_per_step);

  Outcome o;
  o.pass = per_iteration_exact && hessian_evals <= kHessianEvalCap && ratio <= kEulerCostFactor;
  o.detail = std::string("SGD ") + (per_iteration_exact ? "41" : "!= 41") + " evals/iteration, Hessian " +
             std::to_string(hessian_evals) + " evals (<= 840), Euler step " + std::to_string(e.evaluations) +
             " vs mean corrector " + fmt("%.2f", corrector_per_step) + " evals/step, ratio " + fmt("%.3f", ratio) +
             " (<= 1.25)";
  return o;
}

Outcome criterion4() {
  const ExperimentConfig cfg = shipped("lih_surface.json");
  const ExperimentResult r = execute_experiment(cfg);
  auto unique = [&](const std::string& m) {
    for (const auto& s : r.summary) {
      if (s.method == m) return s.mean_unique_points;
    }
    return std::numeric_limits<double>::quiet_NaN();
  };
  bool pass = cfg.instances.size() >= kMinInstances;
  std::string detail = std::to_string(cfg.instances.size()) + " instances;";
  for (const char* base : {"SGD", "SPSA", "NFT"}) {
    const double plain = unique(base), br = unique(std::string(base) + "-BR");
    const double ratio = plain / br;
    pass &= ratio >= kUniqueReduction;
    detail += std::string(" ") + base + " " + fmt("%.0f", plain) + " -> " + base + "-BR " + fmt("%.0f", br) + " (" +
              fmt("%.2f", ratio) + "x);";
  }
  bool matched = true;
  for (const auto& bm : r.budgets) matched &= bm.within_tolerance || bm.matched_on_optimization;
  pass &= matched;
  detail += " need >= 5x";
  return {pass, detail};
}

Outcome criterion5() {
  const PauliSum h = testing::lih_target();
  const AnsatzCircuit ansatz = lih_ansatz();
  const Vector theta = Vector::LinSpaced(20, -0.4, 0.7);
  const double exact = exact_expectation(h, prepare_state(ansatz, theta));
  EstimatorConfig est;
  Rng rng(5);

  double sum = 0, sq = 0;
  for (int i = 0; i < kGrandMeanReps; ++i) {
    const double v = estimate_energy(ansatz, theta, h, est, rng).mean;
    sum += v;
    sq += v * v;
  }
  const double mean = sum / kGrandMeanReps;
  const double se = std::sqrt((sq - kGrandMeanReps * mean * mean) / (kGrandMeanReps - 1) / kGrandMeanReps);
  const bool a = std::abs(mean - exact) <= kGrandMeanSigmas * se;

  const double eps_r = 5e-4;
  sum = sq = 0;
  for (int i = 0; i < kResampleReps; ++i) {
    const double v = resample_to_tolerance(ansatz, theta, h, est, eps_r, rng).mean;
    sum += v;
    sq += v * v;
  }
  const double rmean = sum / kResampleReps;
  const double rstd = std::sqrt((sq - kResampleReps * rmean * rmean) / (kResampleReps - 1));
  const bool b = rstd <= kResampleStdFactor * eps_r;

  const std::int64_t n_r = resample_count(4e-6, 64, 5e-4);
  const bool c = n_r == 1024;

  Outcome o;
  o.pass = a && b && c;
  o.detail = "(a) |mean - exact| " + g(std::abs(mean - exact)) + " <= 4 SE " + g(kGrandMeanSigmas * se) +
             "; (b) resampled std " + g(rstd) + " <= " + g(kResampleStdFactor * eps_r) + "; (c) N_r " +
             std::to_string(n_r);
  return o;
}

PauliSum random_sum(int n, int terms, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> letter(0, 3);
  std::normal_distribution<double> coef;
  std::vector<PauliTerm> t;
  for (int j = 0; j < terms; ++j) {
    std::string w;
    for (int q = 0; q < n; ++q) w += "IXYZ"[letter(gen)];
    t.push_back({coef(gen), w});
  }
  return PauliSum(n, t);
}

Outcome criterion6() {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  EstimatorConfig est;
  est.noiseless = true;
  Rng rng(6);
  double worst_g = 0, worst_h = 0;
  int max_p = 0;
  for (int i = 0; i < kDerivativeInstances; ++i) {
    const int n = 2 + i % 3;
    const int layers = n == 2 ? 1 + i % 3 : 1;
    const AnsatzCircuit c = build_layered_ry_ansatz(n, layers, {}, {});
    const int p = c.num_parameters();
    max_p = std::max(max_p, p);
    ObjectiveOracle f = make_energy_oracle(c, random_sum(n, 8, gen), est, rng);
    Vector theta(p);
    for (auto& x : theta) x = angle(gen);
    const Vector grad = parameter_shift_gradient(f, theta);
    const Matrix hess = parameter_shift_hessian(f, theta);
    auto val = [&](const Vector& x) { return f(x).mean; };
    const double hg = 1e-4, hh = 1e-3;
    for (int a = 0; a < p; ++a) {
      Vector ea = Vector::Zero(p);
      ea(a) = hg;
      worst_g = std::max(worst_g, std::abs(grad(a) - (val(theta + ea) - val(theta - ea)) / (2 * hg)));
      ea(a) = hh;
      for (int b = 0; b < p; ++b) {
        Vector eb = Vector::Zero(p);
        eb(b) = hh;
        const double fd =
            (val(theta + ea + eb) - val(theta + ea - eb) - val(theta - ea + eb) + val(theta - ea - eb)) / (4 * hh * hh);
        worst_h = std::max(worst_h, std::abs(hess(a, b) - fd));
      }
    }
  }
  Outcome o;
  o.pass = max_p <= 8 && worst_g <= kGradientTol && worst_h <= kHessianTol;
  o.detail = std::to_string(kDerivativeInstances) + " instances (p <= " + std::to_string(max_p) +
             "): max gradient gap " + g(worst_g) + " (<= 1e-6), max Hessian gap " + g(worst_h) + " (<= 1e-5)";
  return o;
}

Outcome criterion7() {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> normal;
  std::uniform_int_distribution<int> window(1, 20);
  int mismatches = 0;
  for (int i = 0; i < kTelescopingHistories; ++i) {
    const int w = window(gen);
    const double scale = std::pow(10.0, 3 * normal(gen));
    std::vector<double> f(static_cast<std::size_t>(w) + 1);
    std::vector<Vector> th(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
      f[k] = scale * normal(gen);
      th[k] = Vector::NullaryExpr(5, [&](Eigen::Index) { return scale * normal(gen); });
    }
    mismatches += windowed_f_change(f, w) != telescoped_f_change(f, w);
    mismatches += windowed_theta_change(th, w) != telescoped_theta_change(th, w);
  }

  auto history = [](const std::function<double(int)>& f, int n) {
    std::vector<Iterate> h;
    for (int k = 1; k <= n; ++k) h.push_back({Vector::Constant(1, k), f(k)});
    return h;
  };
  const TerminationConfig cfg{10, 1e-3, 1e-3};
  const auto constant = history([](int) { return 0.5; }, 11);
  const bool constant_ok =
      !termination_check(std::span(constant).first(10), cfg) && termination_check(constant, cfg) == StopReason::f_window;
  const auto slope = history([](int k) { return double(k); }, 60);
  bool slope_ok = true;
  for (std::size_t n = 11; n <= slope.size(); ++n) slope_ok &= !termination_check(std::span(slope).first(n), cfg);
  std::vector<double> last;
  for (int k = 50; k <= 60; ++k) last.push_back(k);
  const double slope_value = windowed_f_change(last, 10);
  slope_ok &= slope_value == 1.0;

  Outcome o;
  o.pass = mismatches == 0 && constant_ok && slope_ok;
  o.detail = std::to_string(mismatches) + " mismatches over " + std::to_string(kTelescopingHistories) +
             " histories; constant sequence " + (constant_ok ? "stops at N_w + 1" : "wrong") + "; slope-1 " +
             (slope_ok ? "never stops on f" : "wrong") + " (value " + g(slope_value) + ")";
  return o;
}

Outcome criterion8() {
  const PauliSum target = testing::lih_target();
  const GapReport r = gap_diagnostic(HomotopyHamiltonian(extract_initial_hamiltonian(target), target), uniform_grid(21));
  bool positive = r.points.size() == 21;
  for (const auto& p : r.points) positive &= p.gap > 0.0;
  const double diff = std::abs(r.min_gap - testing::kLihMinGap);
  Outcome o;
  o.pass = positive && diff <= kGapTol;
  o.detail = std::string(positive ? "gap > 0 at all 21 points" : "non-positive gap found") + "; min gap " +
             fmt("%.15g", r.min_gap) + " at t = " + g(r.t_at_min) + ", |diff| to fixture " + g(diff);
  return o;
}

// Analytic coordinate minimizer from three exact values away from the NFT
// probe points: f(x) = a cos x + b sin x + c is minimized at atan2(b, a) + pi.
struct Coordinate {
  double minimizer;
  double amplitude;
};

Coordinate analytic_minimizer(ObjectiveOracle& f, const Vector& theta, int i) {
  const double xs[3] = {0.37, 1.91, 4.05};
  Eigen::Matrix3d m;
  Eigen::Vector3d y;
  for (int r = 0; r < 3; ++r) {
    Vector t = theta;
    t(i) = xs[r];
    m.row(r) << std::cos(xs[r]), std::sin(xs[r]), 1.0;
    y(r) = f(t).mean;
  }
  const Eigen::Vector3d abc = m.fullPivLu().solve(y);
  return {std::atan2(abc(1), abc(0)) + kPi, std::hypot(abc(0), abc(1))};
}

Outcome criterion9() {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> angle(0.0, 2 * kPi);
  EstimatorConfig est;
  est.noiseless = true;
  Rng rng(9);
  double worst = 0;
  int cases = 0, flat = 0;
  bool flat_ok = true;
  auto check = [&](const AnsatzCircuit& c, const PauliSum& h, Vector theta) {
    ObjectiveOracle f = make_energy_oracle(c, h, est, rng);
    const Coordinate want = analytic_minimizer(f, theta, 0);
    const OptimizerRun run = run_nft(f, theta, 1);
    ++cases;
    if (want.amplitude < 1e-9) {
      // Flat coordinate: no unique minimizer, the update must be skipped.
      ++flat;
      flat_ok &= run.degenerate_updates == 1 && run.theta_final(0) == theta(0);
      return;
    }
    worst = std::max(worst, std::abs(std::remainder(run.theta_final(0) - want.minimizer, 2 * kPi)));
  };
  check(AnsatzCircuit(1, {GateOp::ry(1, 1)}), parse_pauli_sum("1 Z"), Vector::Constant(1, 0.3));
  for (int i = 0; i < 20; ++i) {
    const AnsatzCircuit c = i % 2 ? h2_ansatz() : build_layered_ry_ansatz(3, 1, {}, {});
    Vector theta(c.num_parameters());
    for (auto& x : theta) x = angle(gen);
    check(c, random_sum(c.n_qubits(), 6, gen), theta);
  }
  Outcome o;
  o.pass = worst <= kNftTol && flat_ok;
  o.detail = std::to_string(cases) + " noiseless RY objectives: max |theta_nft - theta_analytic| " + g(worst) +
             " (<= 1e-10); " + std::to_string(flat) + " flat coordinate(s) " + (flat_ok ? "left unchanged" : "moved");
  return o;
}

}  // namespace
}  // namespace vaqclab

int main() {
  using namespace vaqclab;
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"LiH VAQC accuracy", criterion1},        {"plain-VQE separation", criterion2},
      {"cost accounting", criterion3},          {"unique-circuit reduction", criterion4},
      {"estimator properties", criterion5},     {"derivative oracles", criterion6},
      {"termination telescoping", criterion7},  {"gap hypothesis", criterion8},
      {"NFT exactness", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %-26s %s  %s [%.1fs]\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
