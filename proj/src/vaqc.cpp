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

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "vaqclab/vaqc.hpp"

namespace vaqclab {

namespace {

constexpr double kGroundTolerance = 1e-6;
constexpr double kDampingThreshold = 1e-6;

// Estimate at the accepted point: resampled when the method asks for it,
// otherwise the optimizer's own last estimate (one extra evaluation if the
// final point was never evaluated).
EnergyEstimate accepted_energy(ObjectiveOracle& oracle, const OptimizerRun& run, const StepSettings& settings,
                               std::optional<double> eps_r, bool& resampled) {
  resampled = false;
  if (settings.method.resample && eps_r) {
    resampled = true;
    return oracle.resample(run.theta_final, *eps_r);
  }
  if (!run.history.empty()) {
    const Iterate& last = run.history.back();
    if (last.theta.size() == run.theta_final.size() && last.theta == run.theta_final) {
      return {last.value, last.variance, oracle.samples_per_evaluation(), false};
    }
  }
  return oracle(run.theta_final);
}

VaqcTrajectory run_sequence_impl(const std::vector<Problem>& problems, const AnsatzCircuit& ansatz,
                                 const Vector& theta0, const CorrectorConfig& cfg, const EstimatorConfig& est,
                                 Rng& rng, const HomotopyHamiltonian* homotopy) {
  if (problems.empty()) throw std::invalid_argument("problem sequence is empty");
  if (theta0.size() != ansatz.num_parameters()) throw std::invalid_argument("theta0 length does not match ansatz");
  if (cfg.euler_predictor && homotopy == nullptr) {
    throw std::invalid_argument("the Euler predictor needs a linear homotopy");
  }

  VaqcTrajectory traj;
  Vector previous = theta0;
  double previous_t = 0.0;
  std::int64_t samples_cum = 0;
  std::int64_t unique_cum = 0;
  for (std::size_t k = 0; k < problems.size(); ++k) {
    const Problem& problem = problems[k];
    const bool is_final = k + 1 == problems.size();
    const StepSettings& settings = (is_final && cfg.final_step) ? *cfg.final_step : cfg.corrector;

    StepRecord rec;
    rec.k = static_cast<int>(k) + 1;
    rec.label = problem.label;
    rec.t = problem.t;
    rec.final_step = is_final && cfg.final_step.has_value();
    rec.exact_ground = exact_eigen(problem.hamiltonian).ground_energy;
    rec.theta_start = settings.method.bootstrap ? previous : theta0;

    if (cfg.euler_predictor && settings.method.bootstrap) {
      const EulerPrediction pred =
          euler_predictor_step(*homotopy, ansatz, previous_t, previous, problem.t - previous_t, est, rng);
      rec.theta_start = pred.theta;
      rec.predictor_evaluations = pred.evaluations;
      rec.samples += pred.evaluations * est.m;
    }

    ObjectiveOracle oracle = make_energy_oracle(ansatz, problem.hamiltonian, est, rng);
    const OptimizerRun run = run_optimizer(oracle, rec.theta_start, settings, rng);
    rec.energy = accepted_energy(oracle, run, settings, cfg.eps_r, rec.resampled);

    rec.theta = run.theta_final;
    rec.iterations = run.iterations;
    rec.stop_reason = run.stop_reason;
    rec.history = run.history;
    rec.error = rec.energy.mean - rec.exact_ground;
    rec.drift = (rec.theta - previous).norm();
    rec.evaluations = oracle.evaluations() + rec.predictor_evaluations;
    rec.optimization_evaluations = oracle.evaluations() - oracle.resampling_evaluations();
    rec.optimization_samples = oracle.optimization_samples();
    rec.resampling_samples = oracle.resampling_samples();
    rec.samples += oracle.samples();
    rec.unique_points = oracle.unique_points();
    samples_cum += rec.samples;
    unique_cum += rec.unique_points;
    rec.samples_cum = samples_cum;
    rec.unique_points_cum = unique_cum;
    if (!std::isfinite(rec.energy.mean) || !rec.theta.allFinite()) {
      throw NumericalError("non-finite energy or parameters at step " + std::to_string(rec.k));
    }

    previous = rec.theta;
    previous_t = problem.t;
    traj.steps.push_back(std::move(rec));
  }
  return traj;
}

}  // namespace

int VaqcTrajectory::total_iterations() const {
  int n = 0;
  for (const auto& s : steps) n += s.iterations;
  return n;
}

int VaqcTrajectory::corrector_iterations() const {
  int n = 0;
  for (const auto& s : steps) n += s.final_step ? 0 : s.iterations;
  return n;
}

int VaqcTrajectory::final_step_iterations() const { return total_iterations() - corrector_iterations(); }

std::int64_t VaqcTrajectory::total_samples() const { return steps.empty() ? 0 : steps.back().samples_cum; }

std::int64_t VaqcTrajectory::total_evaluations() const {
  std::int64_t n = 0;
  for (const auto& s : steps) n += s.evaluations;
  return n;
}

std::int64_t VaqcTrajectory::optimization_evaluations() const {
  std::int64_t n = 0;
  for (const auto& s : steps) n += s.optimization_evaluations;
  return n;
}

std::int64_t VaqcTrajectory::unique_points() const { return steps.empty() ? 0 : steps.back().unique_points_cum; }

double VaqcTrajectory::max_drift() const {
  double d = 0.0;
  for (const auto& s : steps) d = std::max(d, s.drift);
  return d;
}

VaqcTrajectory run_sequence(const std::vector<Problem>& problems, const AnsatzCircuit& ansatz, const Vector& theta0,
                            const CorrectorConfig& cfg, const EstimatorConfig& est, Rng& rng) {
  return run_sequence_impl(problems, ansatz, theta0, cfg, est, rng, nullptr);
}

VaqcTrajectory run_vaqc(const HomotopyHamiltonian& hh, const AnsatzCircuit& ansatz, const Vector& theta0,
                        const Schedule& schedule, const CorrectorConfig& cfg, const EstimatorConfig& est, Rng& rng) {
  if (hh.n_qubits() != ansatz.n_qubits()) throw std::invalid_argument("homotopy and ansatz qubit counts differ");
  if (schedule.points.empty()) throw std::invalid_argument("schedule is empty");
  for (std::size_t i = 0; i < schedule.points.size(); ++i) {
    const double t = schedule.points[i];
    if (!(t > 0.0 && t <= 1.0) || (i > 0 && !(t > schedule.points[i - 1]))) {
      throw std::invalid_argument("schedule points must increase strictly within (0, 1]");
    }
  }

  std::vector<Problem> problems;
  problems.reserve(schedule.points.size());
  for (std::size_t i = 0; i < schedule.points.size(); ++i) {
    std::ostringstream label;
    label << "t=" << schedule.points[i];
    problems.push_back({label.str(), schedule.points[i], homotopy_at(hh, schedule.points[i])});
  }

  std::vector<std::string> warnings;
  const double start = exact_expectation(hh.initial, prepare_state(ansatz, theta0));
  const double ground = exact_eigen(hh.initial).ground_energy;
  if (std::abs(start - ground) > kGroundTolerance) {
    std::ostringstream w;
    w << "psi(theta0) is not a ground state of H_I: energy " << start << " vs lambda0 " << ground;
    warnings.push_back(w.str());
  }

  VaqcTrajectory traj = run_sequence_impl(problems, ansatz, theta0, cfg, est, rng, &hh);
  traj.warnings = std::move(warnings);
  return traj;
}

Vector solve_damped(const Matrix& hessian, const Vector& rhs_negated, bool* damped) {
  Matrix h = hessian;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h, Eigen::EigenvaluesOnly);
  const bool near_singular = eig.eigenvalues().minCoeff() < kDampingThreshold;
  if (near_singular) h.diagonal().array() += kDampingThreshold * (1.0 + hessian.norm());
  if (damped) *damped = near_singular;
  return h.completeOrthogonalDecomposition().solve(-rhs_negated);
}

EulerPrediction euler_predictor_step(ObjectiveOracle& at_t, ObjectiveOracle& target, ObjectiveOracle& initial,
                                     const Vector& theta, double dt) {
  EulerPrediction out;
  out.theta = theta;
  out.velocity = Vector::Zero(theta.size());
  if (dt == 0.0) return out;
  const std::int64_t before = at_t.evaluations() + target.evaluations() + initial.evaluations();
  const Matrix hessian = parameter_shift_hessian(at_t, theta);
  const Vector mixed = parameter_shift_gradient(target, theta) - parameter_shift_gradient(initial, theta);
  out.velocity = solve_damped(hessian, mixed, &out.damped);
  out.theta = theta + dt * out.velocity;
  out.evaluations = at_t.evaluations() + target.evaluations() + initial.evaluations() - before;
  return out;
}

EulerPrediction euler_predictor_step(const HomotopyHamiltonian& hh, const AnsatzCircuit& ansatz, double t,
                                     const Vector& theta, double dt, const EstimatorConfig& est, Rng& rng) {
  ObjectiveOracle at_t = make_energy_oracle(ansatz, homotopy_at(hh, t), est, rng);
  ObjectiveOracle target = make_energy_oracle(ansatz, hh.target, est, rng);
  ObjectiveOracle initial = make_energy_oracle(ansatz, hh.initial, est, rng);
  return euler_predictor_step(at_t, target, initial, theta, dt);
}

}  // namespace vaqclab
