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
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "vaqclab/experiment.hpp"

namespace vaqclab {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::vector<MethodSummary> summarize(std::span<const TrialRecord> records) {
  if (records.empty()) throw std::invalid_argument("no trial records to summarize");
  std::vector<MethodSummary> out;
  std::vector<std::set<int>> trials;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const MethodSummary& s) { return s.method == r.method; });
    if (it == out.end()) {
      MethodSummary s;
      s.method = r.method;
      s.min_abs_error = std::numeric_limits<double>::infinity();
      out.push_back(s);
      trials.emplace_back();
      it = out.end() - 1;
    }
    const double e = std::abs(r.error);
    ++it->records;
    it->mean_abs_error += e;  // summed here, divided below
    it->min_abs_error = std::min(it->min_abs_error, e);
    it->max_abs_error = std::max(it->max_abs_error, e);
    it->total_samples += r.samples;
    it->total_iterations += r.iterations;
    it->mean_unique_points += static_cast<double>(r.unique_points);
    it->mean_evaluation_estimate += static_cast<double>(r.optimization_evaluations);
    it->wall_seconds += r.wall_seconds;
    trials[static_cast<std::size_t>(it - out.begin())].insert(r.trial);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto& s = out[i];
    s.trials = static_cast<int>(trials[i].size());
    s.mean_abs_error /= s.records;
    s.mean_unique_points /= s.trials;
    s.mean_evaluation_estimate /= s.trials;
  }
  return out;
}

std::string format_summary_table(std::span<const MethodSummary> rows) {
  std::ostringstream o;
  o << std::left << std::setw(12) << "method" << std::right << std::setw(8) << "trials" << std::setw(14)
    << "mean |err|" << std::setw(14) << "min |err|" << std::setw(14) << "max |err|" << std::setw(16)
    << "total samples" << std::setw(12) << "iterations" << std::setw(14) << "mean unique" << std::setw(14)
    << "mean evals" << '\n';
  for (const auto& r : rows) {
    o << std::left << std::setw(12) << r.method << std::right << std::setw(8) << r.trials << std::scientific
      << std::setprecision(4) << std::setw(14) << r.mean_abs_error << std::setw(14) << r.min_abs_error
      << std::setw(14) << r.max_abs_error << std::defaultfloat << std::setw(16) << r.total_samples << std::setw(12)
      << r.total_iterations << std::fixed << std::setprecision(1) << std::setw(14) << r.mean_unique_points
      << std::setw(14) << r.mean_evaluation_estimate << std::defaultfloat << '\n';
  }
  return o.str();
}

void write_trajectory_csv(std::ostream& out, const VaqcTrajectory& traj) {
  const Eigen::Index p = traj.steps.empty() ? 0 : traj.steps.front().theta.size();
  out << "k,label,t,energy,variance,error_vs_exact,corrector_iters,samples_step,samples_cum,unique_points_cum,"
         "theta_drift";
  for (Eigen::Index i = 1; i <= p; ++i) out << ",theta_" << i;
  out << '\n';
  for (const auto& s : traj.steps) {
    out << s.k << ',' << s.label << ',' << format_number(s.t) << ',' << format_number(s.energy.mean) << ','
        << format_number(s.energy.variance) << ',' << format_number(s.error) << ',' << s.iterations << ','
        << s.samples << ',' << s.samples_cum << ',' << s.unique_points_cum << ',' << format_number(s.drift);
    for (Eigen::Index i = 0; i < s.theta.size(); ++i) out << ',' << format_number(s.theta(i));
    out << '\n';
  }
}

void write_history_csv(std::ostream& out, const VaqcTrajectory& traj) {
  const Eigen::Index p = traj.steps.empty() ? 0 : traj.steps.front().theta.size();
  out << "step,iteration,f,variance";
  for (Eigen::Index i = 1; i <= p; ++i) out << ",theta_" << i;
  out << ",evals_cum,samples_cum,unique_cum\n";
  // Iterate counters restart with every step's oracle; shift them onto the
  // trajectory totals (predictor cost comes first within a step).
  std::int64_t evals = 0, samples = 0, unique = 0;
  for (const auto& s : traj.steps) {
    const std::int64_t predictor_samples = s.samples - s.optimization_samples - s.resampling_samples;
    for (std::size_t j = 0; j < s.history.size(); ++j) {
      const Iterate& it = s.history[j];
      out << s.k << ',' << j + 1 << ',' << format_number(it.value) << ',' << format_number(it.variance);
      for (Eigen::Index i = 0; i < it.theta.size(); ++i) out << ',' << format_number(it.theta(i));
      out << ',' << evals + s.predictor_evaluations + it.evaluations << ',' << samples + predictor_samples + it.samples
          << ',' << unique + it.unique_points << '\n';
    }
    evals += s.evaluations;
    samples = s.samples_cum;
    unique = s.unique_points_cum;
  }
}

void write_records_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << "method,trial,seed,label,t,energy,variance,exact,error,abs_error,iterations,samples,optimization_samples,"
         "resampling_samples,evaluations,optimization_evaluations,unique_points\n";
  for (const auto& r : records) {
    out << r.method << ',' << r.trial << ',' << r.seed << ',' << r.label << ',' << format_number(r.t) << ','
        << format_number(r.energy) << ',' << format_number(r.variance) << ',' << format_number(r.exact) << ','
        << format_number(r.error) << ',' << format_number(std::abs(r.error)) << ',' << r.iterations << ','
        << r.samples << ',' << r.optimization_samples << ',' << r.resampling_samples << ',' << r.evaluations << ','
        << r.optimization_evaluations << ',' << r.unique_points << '\n';
  }
}

}  // namespace vaqclab
