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

#ifndef VAQCLAB_EXPERIMENT_HPP
#define VAQCLAB_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vaqclab/vaqc.hpp"

namespace vaqclab {

inline constexpr int kConfigSchemaVersion = 1;

enum class ExperimentMode { vaqc, vqe_restarts, surface, gap, euler_compare };

ExperimentMode parse_mode(const std::string& name);
std::string to_string(ExperimentMode mode);

/// One problem of a surface run: either a Hamiltonian file or a point t of
/// the configured homotopy.
struct InstanceSpec {
  std::string label;
  std::optional<std::filesystem::path> hamiltonian;
  std::optional<double> t;
};

struct ScheduleSpec {
  ScheduleKind kind = ScheduleKind::cubic;
  double step = 0.05;
  double exponent = 3.0;
};

struct RestartSpec {
  int min_restarts = 1;
  std::optional<std::int64_t> iteration_budget;
  int max_restarts = 1000;
};

struct ExperimentConfig {
  int schema_version = kConfigSchemaVersion;
  ExperimentMode mode = ExperimentMode::vaqc;
  std::filesystem::path source;  // the config file itself

  std::filesystem::path target;                  // H_T
  std::optional<std::filesystem::path> initial;  // H_I; extracted from H_T when absent
  LayeredAnsatzSpec ansatz;
  std::optional<Vector> theta0;  // zeros when absent

  ScheduleSpec schedule;
  CorrectorConfig corrector;  // vaqc / euler-compare; `corrector.corrector` is also the restart optimizer
  EstimatorConfig estimator;

  RestartSpec restarts;

  std::vector<InstanceSpec> instances;  // surface
  StepSettings reference;               // surface: sets the sample budget
  std::vector<Method> methods;          // surface: compared at matched budget

  int gap_points = 21;

  int trials = 1;
  std::uint64_t base_seed = 0;
  int jobs = 0;  // 0 -> hardware threads
  std::filesystem::path output_dir;
};

/// Parses and validates a JSON config. Relative paths resolve against the
/// config's directory. Throws ConfigError naming the offending field.
ExperimentConfig parse_experiment_config(const std::string& json_text, const std::filesystem::path& base_dir);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ConfigOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::filesystem::path> output_dir;
  bool noiseless = false;
  std::optional<int> jobs;
};

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& o);

// ---------------------------------------------------------------------------
// Reports

/// One accepted energy: a VAQC trial, a restart, or one instance of a
/// surface run. Cost fields cover everything spent to produce it.
struct TrialRecord {
  std::string method;
  int trial = 0;
  std::uint64_t seed = 0;
  std::string label;
  double t = 0.0;
  double energy = 0.0;
  double variance = 0.0;
  double exact = 0.0;
  double error = 0.0;  // signed, energy - exact
  int iterations = 0;
  std::int64_t samples = 0;
  std::int64_t optimization_samples = 0;
  std::int64_t resampling_samples = 0;
  std::int64_t evaluations = 0;
  std::int64_t optimization_evaluations = 0;
  std::int64_t unique_points = 0;
  double wall_seconds = 0.0;
};

struct MethodSummary {
  std::string method;
  int trials = 0;  // distinct trial indices
  int records = 0;
  double mean_abs_error = 0.0;
  double min_abs_error = 0.0;
  double max_abs_error = 0.0;
  std::int64_t total_samples = 0;
  std::int64_t total_iterations = 0;
  double mean_unique_points = 0.0;          // per trial, distinct parameter points evaluated
  double mean_evaluation_estimate = 0.0;    // per trial, optimization-phase evaluations
  double wall_seconds = 0.0;
};

/// Aggregates per method, in order of first appearance. Throws
/// std::invalid_argument on empty input.
std::vector<MethodSummary> summarize(std::span<const TrialRecord> records);

/// Fixed-width table, one row per method.
std::string format_summary_table(std::span<const MethodSummary> rows);

/// Shortest round-trip decimal form, used for every number written to CSV.
std::string format_number(double x);

/// k,label,t,energy,variance,error_vs_exact,corrector_iters,samples_step,
/// samples_cum,unique_points_cum,theta_drift,theta_1..theta_p
void write_trajectory_csv(std::ostream& out, const VaqcTrajectory& traj);

/// step,iteration,f,variance,theta_1..theta_p,evals_cum,samples_cum,unique_cum
void write_history_csv(std::ostream& out, const VaqcTrajectory& traj);

void write_records_csv(std::ostream& out, std::span<const TrialRecord> records);

// ---------------------------------------------------------------------------
// Experiments

/// Surface budget derived from the reference method.
struct BudgetMatch {
  std::string method;
  std::int64_t budget_samples = 0;  // samples the method is matched on
  int iteration_limit = 0;
  std::int64_t total_samples = 0;
  double ratio_to_reference = 0.0;  // total samples / reference total samples
  bool within_tolerance = false;    // |ratio - 1| <= 5%
  bool matched_on_optimization = false;
};

struct EulerComparison {
  double mean_corrector_evaluations = 0.0;  // per step, bootstrap-only arm
  double mean_predictor_evaluations = 0.0;  // per step, Euler arm
  double cost_ratio = 0.0;                  // predictor / corrector
  double bootstrap_mean_abs_error = 0.0;
  double euler_mean_abs_error = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  double exact_ground = 0.0;  // lambda0 of the target
  std::vector<TrialRecord> records;
  std::vector<MethodSummary> summary;
  std::vector<VaqcTrajectory> trajectories;  // vaqc and euler-compare
  std::vector<BudgetMatch> budgets;          // surface
  std::optional<GapReport> gap;
  std::optional<EulerComparison> euler;
  std::vector<std::string> warnings;
};

/// Runs the experiment in memory; no files are written.
ExperimentResult execute_experiment(const ExperimentConfig& cfg);

/// Writes report.json, summary.txt and the mode's CSVs into the output
/// directory (created if needed).
void write_artifacts(const ExperimentResult& result);

/// Load, run, write. Returns 0 on success, 2 for configuration errors and 3
/// for numerical failures; diagnostics go to `err`.
int run_experiment(const std::filesystem::path& config_path, const ConfigOverrides& overrides, std::ostream& out,
                   std::ostream& err);

}  // namespace vaqclab

#endif  // VAQCLAB_EXPERIMENT_HPP
