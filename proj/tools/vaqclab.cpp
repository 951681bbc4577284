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

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vaqclab/experiment.hpp"

namespace {

using namespace vaqclab;

int cmd_eig(const std::string& path) {
  const EigenResult e = exact_eigen(load_pauli_sum(path));
  std::printf("lambda0 %.12g\nlambda1 %.12g\n", e.ground_energy, e.excited_energy);
  return 0;
}

int cmd_gap(const std::string& initial_path, const std::string& target_path, int points) {
  if (points < 2) throw ConfigError("--points must be at least 2");
  const HomotopyHamiltonian hh(load_pauli_sum(initial_path), load_pauli_sum(target_path));
  const GapReport rep = gap_diagnostic(hh, uniform_grid(points));
  std::printf("%-10s %-20s %-20s %-20s\n", "t", "lambda0", "lambda1", "gap");
  for (const auto& p : rep.points) std::printf("%-10.6g %-20.12g %-20.12g %-20.12g\n", p.t, p.ground, p.excited, p.gap);
  std::printf("min gap %.12g at t = %.6g\n", rep.min_gap, rep.t_at_min);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational adiabatic continuation experiments on a statevector simulator"};
  app.require_subcommand(1);

  std::string config;
  ConfigOverrides ov;
  std::uint64_t seed = 0;
  int trials = 0, jobs = 0;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("config", config, "Experiment config (JSON)")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Base seed; trial i uses seed + i");
  auto* trials_opt = run->add_option("--trials", trials, "Number of trials (restarts in vqe-restarts mode)");
  auto* out_opt = run->add_option("--out", out_dir, "Output directory");
  run->add_flag("--noiseless", ov.noiseless, "Exact expectations instead of sampled estimates");
  auto* jobs_opt = run->add_option("--jobs", jobs, "Worker threads (default: hardware threads)");

  std::string ham_i, ham_t;
  int points = 21;
  auto* gap = app.add_subcommand("gap", "Spectral gap along the linear homotopy");
  gap->add_option("ham_I", ham_i, "Initial Hamiltonian file")->required();
  gap->add_option("ham_T", ham_t, "Target Hamiltonian file")->required();
  gap->add_option("--points", points, "Uniform grid points on [0, 1]");

  std::string ham;
  auto* eig = app.add_subcommand("eig", "Two lowest eigenvalues of a Hamiltonian file");
  eig->add_option("ham", ham, "Hamiltonian file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*run) {
    if (*seed_opt) ov.seed = seed;
    if (*trials_opt) ov.trials = trials;
    if (*out_opt) ov.output_dir = out_dir;
    if (*jobs_opt) ov.jobs = jobs;
    return run_experiment(config, ov, std::cout, std::cerr);
  }
  try {
    if (*gap) return cmd_gap(ham_i, ham_t, points);
    return cmd_eig(ham);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
