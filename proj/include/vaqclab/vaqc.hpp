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

#ifndef VAQCLAB_VAQC_HPP
#define VAQCLAB_VAQC_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vaqclab/estimator.hpp"
#include "vaqclab/hamiltonian.hpp"
#include "vaqclab/optimizers.hpp"
#include "vaqclab/simulator.hpp"

namespace vaqclab {

// ---------------------------------------------------------------------------
// Schedules

enum class ScheduleKind { cubic, linear, power };

/// Strictly increasing points t_1 < ... < t_K in (0, 1].
struct Schedule {
  std::vector<double> points;
};

/// t_k = 1 - (1 - k * step)^a for k = 1..1/step; cubic is a = 3, linear
/// a = 1. 1/step must be integral.
Schedule make_schedule(ScheduleKind kind, double step, double exponent = 3.0);

/// n points evenly spaced on [0, 1], both ends included.
std::vector<double> uniform_grid(int n);

// ---------------------------------------------------------------------------
// Methods and corrector settings

enum class OptimizerKind { sgd, spsa, nft };

/// Optimizer plus augmentation flags, named like "SGD-ABR": A = adaptive
/// termination, B = bootstrapping, R = resampling.
struct Method {
  OptimizerKind optimizer = OptimizerKind::sgd;
  bool adaptive_termination = false;
  bool bootstrap = false;
  bool resample = false;

  static Method parse(const std::string& name);
  std::string name() const;
};

/// Objective evaluations spent by `iterations` iterations of the optimizer
/// (calibration included).
std::int64_t evaluations_for_iterations(OptimizerKind kind, int num_parameters, int iterations,
                                        const SpsaOptions& spsa = {}, const NftOptions& nft = {});

/// Largest iteration count whose evaluation cost fits in `evaluations`.
int iterations_for_budget(OptimizerKind kind, int num_parameters, std::int64_t evaluations,
                          const SpsaOptions& spsa = {}, const NftOptions& nft = {});

struct StepSettings {
  Method method;
  int max_iter = 40;
  TerminationConfig termination;
  SpsaOptions spsa;
  NftOptions nft;
};

/// Runs one optimizer from theta0 under the given settings.
OptimizerRun run_optimizer(ObjectiveOracle& oracle, const Vector& theta0, const StepSettings& settings, Rng& rng);

struct CorrectorConfig {
  StepSettings corrector;
  std::optional<StepSettings> final_step;  // override at the last point
  std::optional<double> eps_r;             // applied where the method has R
  bool euler_predictor = false;            // opt-in first-order predictor
};

// ---------------------------------------------------------------------------
// Trajectories

/// One problem instance of an ordered sequence: a homotopy point or a named
/// Hamiltonian (surface mode).
struct Problem {
  std::string label;
  double t = 0.0;
  PauliSum hamiltonian;
};

struct StepRecord {
  int k = 0;
  std::string label;
  double t = 0.0;
  Vector theta_start;  // initial point handed to the corrector
  Vector theta;        // accepted theta~^k
  int iterations = 0;
  StopReason stop_reason = StopReason::max_iter;
  bool final_step = false;
  EnergyEstimate energy;    // resampled when R applies, otherwise last estimate
  bool resampled = false;
  double exact_ground = 0.0;  // lambda0 of the instance
  double error = 0.0;         // energy - exact_ground
  double drift = 0.0;         // ||theta~^k - theta~^{k-1}||_2
  std::int64_t predictor_evaluations = 0;
  std::int64_t evaluations = 0;  // all evaluations of this step
  std::int64_t optimization_evaluations = 0;
  std::int64_t optimization_samples = 0;
  std::int64_t resampling_samples = 0;
  std::int64_t samples = 0;
  std::int64_t samples_cum = 0;
  std::int64_t unique_points = 0;
  std::int64_t unique_points_cum = 0;
  std::vector<Iterate> history;
};

struct VaqcTrajectory {
  std::vector<StepRecord> steps;
  std::vector<std::string> warnings;

  const StepRecord& final() const { return steps.back(); }
  int total_iterations() const;
  int corrector_iterations() const;  // excludes the final-step override
  int final_step_iterations() const;
  std::int64_t total_samples() const;
  std::int64_t total_evaluations() const;
  std::int64_t optimization_evaluations() const;
  std::int64_t unique_points() const;
  double max_drift() const;
};

/// Bootstraps through an ordered list of problems: each corrector starts at
/// the previous accepted theta when the method has B, otherwise at theta0.
VaqcTrajectory run_sequence(const std::vector<Problem>& problems, const AnsatzCircuit& ansatz, const Vector& theta0,
                            const CorrectorConfig& cfg, const EstimatorConfig& est, Rng& rng);

/// Homotopy run over the schedule points of H(t). Warns (does not fail)
/// when psi(theta0) is not a ground state of H_I.
VaqcTrajectory run_vaqc(const HomotopyHamiltonian& hh, const AnsatzCircuit& ansatz, const Vector& theta0,
                        const Schedule& schedule, const CorrectorConfig& cfg, const EstimatorConfig& est, Rng& rng);

// ---------------------------------------------------------------------------
// Euler predictor

struct EulerPrediction {
  Vector theta;
  Vector velocity;  // d theta / dt
  std::int64_t evaluations = 0;
  bool damped = false;
};

/// Explicit Euler step of the implicit ODE  H dtheta/dt = -d/dt grad f. For
/// the linear homotopy the mixed partial is grad(f_T - f_I), taken as two
/// shift-rule gradients.
EulerPrediction euler_predictor_step(ObjectiveOracle& at_t, ObjectiveOracle& target, ObjectiveOracle& initial,
                                     const Vector& theta, double dt);

EulerPrediction euler_predictor_step(const HomotopyHamiltonian& hh, const AnsatzCircuit& ansatz, double t,
                                     const Vector& theta, double dt, const EstimatorConfig& est, Rng& rng);

/// Solves H x = -v in the least-squares sense, adding 1e-6 (1 + ||H||_F) to
/// the diagonal when the smallest eigenvalue of H is below 1e-6.
Vector solve_damped(const Matrix& hessian, const Vector& rhs_negated, bool* damped = nullptr);

// ---------------------------------------------------------------------------
// Diagnostics

struct GapPoint {
  double t;
  double ground;
  double excited;
  double gap;
};

struct GapReport {
  std::vector<GapPoint> points;
  double min_gap = 0.0;
  double t_at_min = 0.0;
};

GapReport gap_diagnostic(const HomotopyHamiltonian& hh, const std::vector<double>& grid);

// ---------------------------------------------------------------------------
// Plain VQE with random restarts

struct RestartRecord {
  int index = 0;
  std::uint64_t seed = 0;
  Vector theta0;
  OptimizerRun run;
  EnergyEstimate energy;
  double error = 0.0;
  std::int64_t samples = 0;
  std::int64_t optimization_samples = 0;
  std::int64_t evaluations = 0;
  std::int64_t optimization_evaluations = 0;
  std::int64_t unique_points = 0;
};

/// One VQE run from theta0; resamples the final point when the method has R
/// and eps_r is set.
RestartRecord run_vqe_from(const PauliSum& h, const AnsatzCircuit& ansatz, const Vector& theta0,
                           const StepSettings& settings, std::optional<double> eps_r, const EstimatorConfig& est,
                           Rng& rng);

struct RestartConfig {
  int min_restarts = 1;
  std::optional<std::int64_t> iteration_budget;  // keep restarting until spent
  int max_restarts = 1000;
  StepSettings settings;
  std::optional<double> eps_r;
  std::uint64_t base_seed = 0;
  int jobs = 1;
};

struct RestartReport {
  std::vector<RestartRecord> restarts;
  double exact_ground = 0.0;
  double min_error = 0.0;  // absolute errors
  double max_error = 0.0;
  double mean_error = 0.0;
  double best_energy = 0.0;
  std::int64_t total_iterations = 0;
  double mean_iterations = 0.0;
};

/// Restart i draws theta0 ~ U[0, 2pi]^p from seed base_seed + i. Runs at
/// least min_restarts and, with a budget, continues (in index order) until
/// the cumulative iteration count reaches it.
RestartReport run_random_restart_vqe(const PauliSum& h, const AnsatzCircuit& ansatz, const RestartConfig& cfg,
                                     const EstimatorConfig& est);

}  // namespace vaqclab

#endif  // VAQCLAB_VAQC_HPP
