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

#ifndef VAQCLAB_OPTIMIZERS_HPP
#define VAQCLAB_OPTIMIZERS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "vaqclab/estimator.hpp"
#include "vaqclab/types.hpp"

namespace vaqclab {

/// Noisy objective theta -> f_hat(theta) with cost accounting.
///
/// Every call goes through one of two entry points: `operator()` for
/// optimization-phase evaluations (m samples) and `resample()` for the
/// post-optimization re-estimate. Counters only grow. The unique-point
/// counter increments on parameter vectors never seen before (bitwise
/// match), whichever entry point saw them first.
class ObjectiveOracle {
 public:
  /// (theta, samples per term) -> estimate.
  using Function = std::function<EnergyEstimate(const Vector&, std::int64_t)>;

  ObjectiveOracle(Function f, int num_parameters, int samples_per_evaluation);

  EnergyEstimate operator()(const Vector& theta);

  /// Pilot m-sample estimate, then N_r samples per term (see
  /// resample_count). Both count as resampling cost.
  EnergyEstimate resample(const Vector& theta, double eps_r);

  int num_parameters() const { return num_parameters_; }
  int samples_per_evaluation() const { return samples_; }

  std::int64_t evaluations() const { return evaluations_; }
  std::int64_t samples() const { return optimization_samples_ + resampling_samples_; }
  std::int64_t optimization_samples() const { return optimization_samples_; }
  std::int64_t resampling_samples() const { return resampling_samples_; }
  std::int64_t resampling_evaluations() const { return resampling_evaluations_; }
  std::int64_t unique_points() const { return static_cast<std::int64_t>(seen_.size()); }

 private:
  bool visit(const Vector& theta);

  Function f_;
  int num_parameters_;
  int samples_;
  std::int64_t evaluations_ = 0;
  std::int64_t resampling_evaluations_ = 0;
  std::int64_t optimization_samples_ = 0;
  std::int64_t resampling_samples_ = 0;
  std::unordered_set<std::string> seen_;
};

/// Energy oracle of psi(theta) under h. `rng` must outlive the oracle.
ObjectiveOracle make_energy_oracle(const AnsatzCircuit& ansatz, PauliSum h, const EstimatorConfig& cfg, Rng& rng);

/// g_i = [f(theta + pi/2 e_i) - f(theta - pi/2 e_i)] / 2; 2p evaluations.
Vector parameter_shift_gradient(ObjectiveOracle& oracle, const Vector& theta);

/// Four-point iterated shift rule for i <= j, mirrored; 4 p(p+1)/2
/// evaluations.
Matrix parameter_shift_hessian(ObjectiveOracle& oracle, const Vector& theta);

struct TerminationConfig {
  int window = 10;  // N_w
  double eps_f = 1e-3;
  double eps_theta = 1e-3;
};

enum class StopReason { max_iter, f_window, theta_window };
std::string to_string(StopReason r);

/// An evaluated iterate: parameters and the objective estimate taken there.
struct Iterate {
  Vector theta;
  double value = 0.0;
  double variance = 0.0;
  std::int64_t evaluations = 0;  // cumulative oracle counters after this iterate
  std::int64_t samples = 0;
  std::int64_t unique_points = 0;
};

struct OptimizerRun {
  Vector theta_final;
  std::vector<Iterate> history;  // one entry per iteration
  int iterations = 0;
  StopReason stop_reason = StopReason::max_iter;
  int degenerate_updates = 0;  // NFT coordinates skipped for a flat fit
};

/// Literal windowed-average forms: (1/N) |sum_{i=1..N} f^{k-i} - sum_{i=1..N}
/// f^{k+1-i}| over the last N+1 entries. The sums are accumulated exactly, so
/// the result is the correctly rounded value of the exact difference.
double windowed_f_change(std::span<const double> values, int window);
double windowed_theta_change(std::span<const Vector> thetas, int window);

/// Telescoped forms |f^k - f^{k-N}| / N and ||theta^k - theta^{k-N}||_2 / N.
double telescoped_f_change(std::span<const double> values, int window);
double telescoped_theta_change(std::span<const Vector> thetas, int window);

/// Adaptive termination over the most recent N_w + 1 iterates; nullopt when
/// the history is too short or neither criterion holds.
std::optional<StopReason> termination_check(std::span<const Iterate> history, const TerminationConfig& cfg);

/// gamma_k = 1 for k <= 10, 1 / (k - 10) afterwards (k counts from 1).
double sgd_step_length(int k);

/// Per iteration: f_hat and the shift-rule gradient at the current point
/// (2p + 1 evaluations), record, test termination, then step.
OptimizerRun run_sgd(ObjectiveOracle& oracle, Vector theta0, int max_iter,
                     const std::optional<TerminationConfig>& termination = std::nullopt);

struct SpsaOptions {
  double alpha = 0.602;
  double gamma = 0.101;
  double stability = 0.0;     // A
  double perturbation = 0.1;  // c
  double initial_step = 1.0;  // target magnitude of the first update
  int calibration_probes = 25;
  std::optional<double> learning_rate;  // a; calibrated when absent
};

/// Evaluations spent on gain calibration when no learning rate is supplied.
int spsa_calibration_evaluations(const SpsaOptions& options);

/// Simultaneous perturbation with a_k = a / (k + A)^alpha, c_k = c / k^gamma
/// and Rademacher directions; 2 evaluations per iteration.
OptimizerRun run_spsa(ObjectiveOracle& oracle, Vector theta0, int max_iter, Rng& rng, const SpsaOptions& options = {},
                      const std::optional<TerminationConfig>& termination = std::nullopt);

struct NftOptions {
  int reset_interval = 0;  // iterations between baseline refreshes; 0 -> p
};

/// Sequential sinusoidal coordinate minimization, cycling i = 1..p.
OptimizerRun run_nft(ObjectiveOracle& oracle, Vector theta0, int max_iter, const NftOptions& options = {},
                     const std::optional<TerminationConfig>& termination = std::nullopt);

/// Result of one exact sinusoid fit along a coordinate.
struct SinusoidFit {
  double offset;     // b in a cos(x - b) + c, a >= 0
  double amplitude;  // a
  double constant;   // c
  double minimizer() const;
  bool degenerate() const;
};

/// Fits f(x0 + d) = A cos d + B sin d + C from f(x0), f(x0 + pi/2),
/// f(x0 - pi/2).
SinusoidFit fit_sinusoid(double x0, double f0, double f_plus, double f_minus);

}  // namespace vaqclab

#endif  // VAQCLAB_OPTIMIZERS_HPP
