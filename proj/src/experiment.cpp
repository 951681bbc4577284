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

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "vaqclab/experiment.hpp"
#include "vaqclab/parallel.hpp"

namespace vaqclab {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

constexpr double kBudgetTolerance = 0.05;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int resolve_jobs(int jobs) { return jobs > 0 ? jobs : default_jobs(); }

struct Setup {
  PauliSum target;
  HomotopyHamiltonian homotopy;
  AnsatzCircuit ansatz;
  Vector theta0;
};

Setup make_setup(const ExperimentConfig& cfg) {
  PauliSum target = load_pauli_sum(cfg.target.string());
  PauliSum initial = cfg.initial ? load_pauli_sum(cfg.initial->string()) : extract_initial_hamiltonian(target);
  if (initial.n_qubits() != target.n_qubits()) {
    throw ConfigError("config field 'hamiltonian.initial': acts on " + std::to_string(initial.n_qubits()) +
                      " qubits but the target acts on " + std::to_string(target.n_qubits()));
  }
  AnsatzCircuit ansatz = build_layered_ry_ansatz(cfg.ansatz);
  if (ansatz.n_qubits() != target.n_qubits()) {
    throw ConfigError("config field 'ansatz.n_qubits': ansatz has " + std::to_string(ansatz.n_qubits()) +
                      " qubits but the Hamiltonian acts on " + std::to_string(target.n_qubits()));
  }
  Vector theta0 = cfg.theta0 ? *cfg.theta0 : Vector::Zero(ansatz.num_parameters());
  HomotopyHamiltonian hh(std::move(initial), target);
  return {std::move(target), std::move(hh), std::move(ansatz), std::move(theta0)};
}

TrialRecord trajectory_record(const std::string& method, int trial, std::uint64_t seed, const VaqcTrajectory& traj) {
  const StepRecord& last = traj.final();
  TrialRecord r;
  r.method = method;
  r.trial = trial;
  r.seed = seed;
  r.label = last.label;
  r.t = last.t;
  r.energy = last.energy.mean;
  r.variance = last.energy.variance;
  r.exact = last.exact_ground;
  r.error = last.error;
  r.iterations = traj.total_iterations();
  r.samples = traj.total_samples();
  r.evaluations = traj.total_evaluations();
  r.optimization_evaluations = traj.optimization_evaluations();
  r.unique_points = traj.unique_points();
  for (const auto& s : traj.steps) {
    r.optimization_samples += s.optimization_samples;
    r.resampling_samples += s.resampling_samples;
  }
  return r;
}

TrialRecord step_record(const std::string& method, int trial, std::uint64_t seed, const StepRecord& s) {
  TrialRecord r;
  r.method = method;
  r.trial = trial;
  r.seed = seed;
  r.label = s.label;
  r.t = s.t;
  r.energy = s.energy.mean;
  r.variance = s.energy.variance;
  r.exact = s.exact_ground;
  r.error = s.error;
  r.iterations = s.iterations;
  r.samples = s.samples;
  r.optimization_samples = s.optimization_samples;
  r.resampling_samples = s.resampling_samples;
  r.evaluations = s.evaluations;
  r.optimization_evaluations = s.optimization_evaluations;
  r.unique_points = s.unique_points;
  return r;
}

struct TrialRun {
  VaqcTrajectory traj;
  double seconds = 0.0;
};

std::vector<TrialRun> run_trials(const ExperimentConfig& cfg, const Setup& setup, const CorrectorConfig& corrector) {
  const Schedule schedule = make_schedule(cfg.schedule.kind, cfg.schedule.step, cfg.schedule.exponent);
  return parallel_map(static_cast<std::size_t>(cfg.trials), resolve_jobs(cfg.jobs), [&](std::size_t i) {
    const auto start = Clock::now();
    Rng rng(cfg.base_seed + i);
    TrialRun run{run_vaqc(setup.homotopy, setup.ansatz, setup.theta0, schedule, corrector, cfg.estimator, rng), 0.0};
    run.seconds = seconds_since(start);
    return run;
  });
}

void run_vaqc_mode(const ExperimentConfig& cfg, const Setup& setup, ExperimentResult& res) {
  auto runs = run_trials(cfg, setup, cfg.corrector);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    TrialRecord r = trajectory_record("VAQC", static_cast<int>(i), cfg.base_seed + i, runs[i].traj);
    r.wall_seconds = runs[i].seconds;
    res.records.push_back(r);
    if (i == 0) res.warnings = runs[i].traj.warnings;
    res.trajectories.push_back(std::move(runs[i].traj));
  }
}

void run_euler_mode(const ExperimentConfig& cfg, const Setup& setup, ExperimentResult& res) {
  CorrectorConfig plain = cfg.corrector;
  plain.euler_predictor = false;
  CorrectorConfig euler = cfg.corrector;
  euler.euler_predictor = true;
  auto base = run_trials(cfg, setup, plain);
  auto pred = run_trials(cfg, setup, euler);

  EulerComparison cmp;
  std::int64_t corrector_evals = 0, predictor_evals = 0, steps = 0;
  double base_err = 0.0, euler_err = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    corrector_evals += base[i].traj.optimization_evaluations();
    for (const auto& s : pred[i].traj.steps) predictor_evals += s.predictor_evaluations;
    steps += static_cast<std::int64_t>(base[i].traj.steps.size());
    base_err += std::abs(base[i].traj.final().error);
    euler_err += std::abs(pred[i].traj.final().error);
  }
  cmp.mean_corrector_evaluations = static_cast<double>(corrector_evals) / static_cast<double>(steps);
  cmp.mean_predictor_evaluations = static_cast<double>(predictor_evals) / static_cast<double>(steps);
  cmp.cost_ratio = cmp.mean_predictor_evaluations / cmp.mean_corrector_evaluations;
  cmp.bootstrap_mean_abs_error = base_err / static_cast<double>(base.size());
  cmp.euler_mean_abs_error = euler_err / static_cast<double>(base.size());
  res.euler = cmp;

  for (std::size_t i = 0; i < base.size(); ++i) {
    TrialRecord r = trajectory_record("VAQC", static_cast<int>(i), cfg.base_seed + i, base[i].traj);
    r.wall_seconds = base[i].seconds;
    res.records.push_back(r);
  }
  for (std::size_t i = 0; i < pred.size(); ++i) {
    TrialRecord r = trajectory_record("VAQC+Euler", static_cast<int>(i), cfg.base_seed + i, pred[i].traj);
    r.wall_seconds = pred[i].seconds;
    res.records.push_back(r);
  }
  res.warnings = base.front().traj.warnings;
  for (auto& b : base) res.trajectories.push_back(std::move(b.traj));
  for (auto& p : pred) res.trajectories.push_back(std::move(p.traj));
}

void run_restart_mode(const ExperimentConfig& cfg, const Setup& setup, ExperimentResult& res) {
  RestartConfig rc;
  rc.min_restarts = cfg.restarts.min_restarts;
  rc.iteration_budget = cfg.restarts.iteration_budget;
  rc.max_restarts = cfg.restarts.max_restarts;
  rc.settings = cfg.corrector.corrector;
  rc.eps_r = cfg.corrector.eps_r;
  rc.base_seed = cfg.base_seed;
  rc.jobs = resolve_jobs(cfg.jobs);
  const RestartReport rep = run_random_restart_vqe(setup.target, setup.ansatz, rc, cfg.estimator);
  const std::string name = "VQE " + rc.settings.method.name();
  for (const auto& r : rep.restarts) {
    TrialRecord t;
    t.method = name;
    t.trial = r.index;
    t.seed = r.seed;
    t.label = "restart";
    t.t = 1.0;
    t.energy = r.energy.mean;
    t.variance = r.energy.variance;
    t.exact = rep.exact_ground;
    t.error = r.error;
    t.iterations = r.run.iterations;
    t.samples = r.samples;
    t.optimization_samples = r.optimization_samples;
    t.resampling_samples = r.samples - r.optimization_samples;
    t.evaluations = r.evaluations;
    t.optimization_evaluations = r.optimization_evaluations;
    t.unique_points = r.unique_points;
    res.records.push_back(t);
  }
}

std::vector<Problem> surface_problems(const ExperimentConfig& cfg, const Setup& setup) {
  std::vector<Problem> problems;
  for (const auto& inst : cfg.instances) {
    if (inst.hamiltonian) {
      PauliSum h = load_pauli_sum(inst.hamiltonian->string());
      if (h.n_qubits() != setup.ansatz.n_qubits()) {
        throw ConfigError("config field 'instances': " + inst.hamiltonian->string() + " acts on " +
                          std::to_string(h.n_qubits()) + " qubits, the ansatz on " +
                          std::to_string(setup.ansatz.n_qubits()));
      }
      problems.push_back({inst.label, 0.0, std::move(h)});
    } else {
      problems.push_back({inst.label, *inst.t, homotopy_at(setup.homotopy, *inst.t)});
    }
  }
  return problems;
}

void run_surface_mode(const ExperimentConfig& cfg, const Setup& setup, ExperimentResult& res) {
  const std::vector<Problem> problems = surface_problems(cfg, setup);
  const int jobs = resolve_jobs(cfg.jobs);
  const auto trials = static_cast<std::size_t>(cfg.trials);

  auto sweep = [&](const StepSettings& settings, std::size_t i) {
    const auto start = Clock::now();
    Rng rng(cfg.base_seed + i);
    CorrectorConfig cc;
    cc.corrector = settings;
    cc.eps_r = cfg.corrector.eps_r;
    TrialRun run{run_sequence(problems, setup.ansatz, setup.theta0, cc, cfg.estimator, rng), 0.0};
    run.seconds = seconds_since(start);
    return run;
  };
  auto record = [&](const std::string& name, std::size_t i, const TrialRun& run) {
    for (const auto& s : run.traj.steps) {
      TrialRecord r = step_record(name, static_cast<int>(i), cfg.base_seed + i, s);
      r.wall_seconds = run.seconds / static_cast<double>(run.traj.steps.size());
      res.records.push_back(r);
    }
  };

  const std::string ref_name = cfg.reference.method.name();
  auto reference = parallel_map(trials, jobs, [&](std::size_t i) { return sweep(cfg.reference, i); });
  std::int64_t ref_total = 0, ref_opt = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    record(ref_name, i, reference[i]);
    ref_total += reference[i].traj.total_samples();
    for (const auto& s : reference[i].traj.steps) ref_opt += s.optimization_samples;
  }
  res.budgets.push_back({ref_name, ref_total, cfg.reference.max_iter, ref_total, 1.0, true,
                         false});

  std::vector<StepSettings> settings;
  for (const Method& m : cfg.methods) {
    if (m.name() == ref_name) continue;
    StepSettings s = cfg.reference;
    s.method = m;
    const bool on_opt = m.resample;
    const std::int64_t budget = on_opt ? ref_opt : ref_total;
    const std::int64_t per_instance =
        budget / (static_cast<std::int64_t>(cfg.estimator.m) * static_cast<std::int64_t>(problems.size()) *
                  static_cast<std::int64_t>(trials));
    s.max_iter = iterations_for_budget(m.optimizer, setup.ansatz.num_parameters(), per_instance, s.spsa, s.nft);
    if (s.max_iter < 1) {
      throw ConfigError("config field 'methods': the reference budget leaves no iterations for " + m.name());
    }
    settings.push_back(s);
    res.budgets.push_back({m.name(), budget, s.max_iter, 0, 0.0, false, on_opt});
  }

  auto runs = parallel_map(settings.size() * trials, jobs,
                           [&](std::size_t j) { return sweep(settings[j / trials], j % trials); });
  for (std::size_t k = 0; k < settings.size(); ++k) {
    BudgetMatch& b = res.budgets[k + 1];
    for (std::size_t i = 0; i < trials; ++i) {
      const TrialRun& run = runs[k * trials + i];
      record(b.method, i, run);
      b.total_samples += run.traj.total_samples();
    }
    b.ratio_to_reference = static_cast<double>(b.total_samples) / static_cast<double>(ref_total);
    b.within_tolerance = std::abs(b.ratio_to_reference - 1.0) <= kBudgetTolerance;
    if (!b.within_tolerance) {
      std::ostringstream w;
      w << b.method << " used " << b.total_samples << " samples, " << format_number(b.ratio_to_reference)
        << " x the reference total (tolerance 5%)";
      res.warnings.push_back(w.str());
    }
  }
}

nlohmann::ordered_json record_json(const TrialRecord& r) {
  return {{"method", r.method},
          {"trial", r.trial},
          {"seed", r.seed},
          {"label", r.label},
          {"t", r.t},
          {"energy", r.energy},
          {"variance", r.variance},
          {"exact", r.exact},
          {"error", r.error},
          {"abs_error", std::abs(r.error)},
          {"iterations", r.iterations},
          {"samples", r.samples},
          {"optimization_samples", r.optimization_samples},
          {"resampling_samples", r.resampling_samples},
          {"evaluations", r.evaluations},
          {"optimization_evaluations", r.optimization_evaluations},
          {"unique_points", r.unique_points},
          {"wall_seconds", r.wall_seconds}};
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

template <typename F>
void write_csv(const fs::path& path, F&& body) {
  std::ostringstream o;
  body(o);
  write_file(path, o.str());
}

std::string summary_text(const ExperimentResult& res) {
  std::ostringstream o;
  o << "mode: " << to_string(res.config.mode) << "\n";
  o << "target: " << res.config.target.string() << "\n";
  o << "exact ground energy: " << format_number(res.exact_ground) << "\n";
  o << "base seed: " << res.config.base_seed << "\n\n";
  if (!res.summary.empty()) o << format_summary_table(res.summary);
  if (!res.budgets.empty()) {
    o << "\nbudget matching (reference " << res.budgets.front().method << ")\n";
    for (const auto& b : res.budgets) {
      o << "  " << b.method << ": iteration limit " << b.iteration_limit << ", total samples " << b.total_samples
        << ", ratio " << format_number(b.ratio_to_reference) << (b.within_tolerance ? " ok" : " OUTSIDE 5%")
        << (b.matched_on_optimization ? " (matched on optimization samples)" : "") << "\n";
    }
  }
  if (res.gap) {
    o << "minimum gap " << format_number(res.gap->min_gap) << " at t = " << format_number(res.gap->t_at_min) << "\n";
  }
  if (res.euler) {
    o << "\nmean corrector evaluations per step: " << format_number(res.euler->mean_corrector_evaluations) << "\n";
    o << "mean predictor evaluations per step: " << format_number(res.euler->mean_predictor_evaluations) << "\n";
    o << "predictor / corrector cost: " << format_number(res.euler->cost_ratio) << "\n";
  }
  for (const auto& w : res.warnings) o << "warning: " << w << "\n";
  return o.str();
}

}  // namespace

ExperimentResult execute_experiment(const ExperimentConfig& cfg) {
  ExperimentResult res;
  res.config = cfg;
  const Setup setup = make_setup(cfg);
  res.exact_ground = exact_eigen(setup.target).ground_energy;
  switch (cfg.mode) {
    case ExperimentMode::vaqc: run_vaqc_mode(cfg, setup, res); break;
    case ExperimentMode::euler_compare: run_euler_mode(cfg, setup, res); break;
    case ExperimentMode::vqe_restarts: run_restart_mode(cfg, setup, res); break;
    case ExperimentMode::surface: run_surface_mode(cfg, setup, res); break;
    case ExperimentMode::gap: res.gap = gap_diagnostic(setup.homotopy, uniform_grid(cfg.gap_points)); break;
  }
  if (!res.records.empty()) res.summary = summarize(res.records);
  return res;
}

void write_artifacts(const ExperimentResult& res) {
  const ExperimentConfig& cfg = res.config;
  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + cfg.output_dir.string() + ": " + ec.message());

  nlohmann::ordered_json report;
  report["schema_version"] = kConfigSchemaVersion;
  report["mode"] = to_string(cfg.mode);
  report["config"] = cfg.source.string();
  report["target"] = cfg.target.string();
  report["base_seed"] = cfg.base_seed;
  report["trials"] = cfg.trials;
  report["estimator"] = {{"m", cfg.estimator.m},
                         {"noiseless", cfg.estimator.noiseless},
                         {"grouping", to_string(cfg.estimator.grouping)}};
  report["exact_ground"] = res.exact_ground;
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (const auto& s : res.summary) {
    summary.push_back({{"method", s.method},
                       {"trials", s.trials},
                       {"records", s.records},
                       {"mean_abs_error", s.mean_abs_error},
                       {"min_abs_error", s.min_abs_error},
                       {"max_abs_error", s.max_abs_error},
                       {"total_samples", s.total_samples},
                       {"total_iterations", s.total_iterations},
                       {"mean_unique_circuits", s.mean_unique_points},
                       {"mean_evaluation_estimate", s.mean_evaluation_estimate},
                       {"wall_seconds", s.wall_seconds}});
  }
  report["summary"] = summary;
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& r : res.records) records.push_back(record_json(r));
  report["records"] = records;
  if (!res.budgets.empty()) {
    nlohmann::ordered_json budgets = nlohmann::ordered_json::array();
    bool all_ok = true;
    for (const auto& b : res.budgets) {
      all_ok = all_ok && b.within_tolerance;
      budgets.push_back({{"method", b.method},
                         {"budget_samples", b.budget_samples},
                         {"matched_on", b.matched_on_optimization ? "optimization_samples" : "total_samples"},
                         {"iteration_limit", b.iteration_limit},
                         {"total_samples", b.total_samples},
                         {"ratio_to_reference", b.ratio_to_reference},
                         {"within_5_percent", b.within_tolerance}});
    }
    report["budget_matching"] = {{"all_within_5_percent", all_ok}, {"methods", budgets}};
  }
  if (res.gap) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : res.gap->points) {
      pts.push_back({{"t", p.t}, {"lambda0", p.ground}, {"lambda1", p.excited}, {"gap", p.gap}});
    }
    report["gap"] = {{"min_gap", res.gap->min_gap}, {"t_at_min", res.gap->t_at_min}, {"points", pts}};
  }
  if (res.euler) {
    report["euler"] = {{"mean_corrector_evaluations", res.euler->mean_corrector_evaluations},
                       {"mean_predictor_evaluations", res.euler->mean_predictor_evaluations},
                       {"cost_ratio", res.euler->cost_ratio},
                       {"bootstrap_mean_abs_error", res.euler->bootstrap_mean_abs_error},
                       {"euler_mean_abs_error", res.euler->euler_mean_abs_error}};
  }
  report["warnings"] = res.warnings;
  write_file(cfg.output_dir / "report.json", report.dump(2) + "\n");
  write_file(cfg.output_dir / "summary.txt", summary_text(res));

  if (!res.records.empty()) {
    write_csv(cfg.output_dir / "records.csv", [&](std::ostream& o) { write_records_csv(o, res.records); });
  }
  if (cfg.mode == ExperimentMode::vaqc || cfg.mode == ExperimentMode::euler_compare) {
    const std::size_t n = static_cast<std::size_t>(cfg.trials);
    for (std::size_t j = 0; j < res.trajectories.size(); ++j) {
      const std::string arm = j < n ? "" : "euler_";
      const std::string suffix = arm + "trial" + std::to_string(j % n) + ".csv";
      write_csv(cfg.output_dir / ("trajectory_" + suffix), [&](std::ostream& o) { write_trajectory_csv(o, res.trajectories[j]); });
      write_csv(cfg.output_dir / ("history_" + suffix), [&](std::ostream& o) { write_history_csv(o, res.trajectories[j]); });
    }
  }
  if (cfg.mode == ExperimentMode::surface) {
    // Per-instance error curves, one row per (method, instance).
    write_csv(cfg.output_dir / "errors_by_instance.csv", [&](std::ostream& o) {
      o << "method,k,label,t,trials,mean_abs_error,max_abs_error,mean_unique_points\n";
      std::vector<std::string> methods;
      for (const auto& s : res.summary) methods.push_back(s.method);
      for (const auto& m : methods) {
        for (std::size_t k = 0; k < cfg.instances.size(); ++k) {
          double sum = 0.0, mx = 0.0, uniq = 0.0;
          int count = 0;
          std::string label;
          double t = 0.0;
          std::size_t seen = 0;
          for (const auto& r : res.records) {
            if (r.method != m) continue;
            if (seen++ % cfg.instances.size() != k) continue;
            label = r.label;
            t = r.t;
            sum += std::abs(r.error);
            mx = std::max(mx, std::abs(r.error));
            uniq += static_cast<double>(r.unique_points);
            ++count;
          }
          o << m << ',' << k + 1 << ',' << label << ',' << format_number(t) << ',' << count << ','
            << format_number(sum / count) << ',' << format_number(mx) << ',' << format_number(uniq / count) << '\n';
        }
      }
    });
  }
  if (res.gap) {
    write_csv(cfg.output_dir / "gap.csv", [&](std::ostream& o) {
      o << "t,lambda0,lambda1,gap\n";
      for (const auto& p : res.gap->points) {
        o << format_number(p.t) << ',' << format_number(p.ground) << ',' << format_number(p.excited) << ','
          << format_number(p.gap) << '\n';
      }
    });
  }
}

int run_experiment(const fs::path& config_path, const ConfigOverrides& overrides, std::ostream& out,
                   std::ostream& err) {
  try {
    ExperimentConfig cfg = load_experiment_config(config_path);
    apply_overrides(cfg, overrides);
    const ExperimentResult res = execute_experiment(cfg);
    write_artifacts(res);
    out << summary_text(res);
    out << "artifacts written to " << cfg.output_dir.string() << "\n";
    return 0;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace vaqclab
