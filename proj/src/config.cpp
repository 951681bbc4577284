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

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vaqclab/experiment.hpp"

namespace vaqclab {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError("config field '" + field + "': " + what);
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

const json* find(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() || it->is_null() ? nullptr : &*it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<std::int64_t>();
}

std::string string(const json& v, const std::string& field) {
  if (!v.is_string()) fail(field, "expected a string");
  return v.get<std::string>();
}

bool boolean(const json& v, const std::string& field) {
  if (!v.is_boolean()) fail(field, "expected true or false");
  return v.get<bool>();
}

void check_keys(const json& obj, const std::string& prefix, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(prefix.empty() ? "<root>" : prefix, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) fail(join(prefix, key), "unknown field");
  }
}

fs::path existing_file(const json& v, const std::string& field, const fs::path& base) {
  fs::path p = string(v, field);
  if (p.is_relative()) p = base / p;
  p = p.lexically_normal();
  if (!fs::is_regular_file(p)) fail(field, "file not found: " + p.string());
  return p;
}

std::set<int> qubit_set(const json& v, const std::string& field) {
  if (!v.is_array()) fail(field, "expected an array of qubit indices");
  std::set<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.insert(static_cast<int>(integer(v[i], field + "[" + std::to_string(i) + "]")));
  return out;
}

LayeredAnsatzSpec ansatz_spec(const json& v, const std::string& field) {
  check_keys(v, field, {"n_qubits", "layers", "x_prefix", "x_suffix"});
  LayeredAnsatzSpec s;
  const json* n = find(v, "n_qubits");
  if (!n) fail(join(field, "n_qubits"), "missing");
  s.n_qubits = static_cast<int>(integer(*n, join(field, "n_qubits")));
  if (const json* l = find(v, "layers")) s.layers = static_cast<int>(integer(*l, join(field, "layers")));
  if (const json* x = find(v, "x_prefix")) s.x_prefix = qubit_set(*x, join(field, "x_prefix"));
  if (const json* x = find(v, "x_suffix")) s.x_suffix = qubit_set(*x, join(field, "x_suffix"));
  try {
    build_layered_ry_ansatz(s);
  } catch (const std::exception& e) {
    fail(field, e.what());
  }
  return s;
}

LayeredAnsatzSpec ansatz_field(const json& v, const std::string& field, const fs::path& base) {
  if (v.is_object()) return ansatz_spec(v, field);
  const fs::path p = existing_file(v, field, base);
  std::ifstream in(p);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(field, "cannot parse " + p.string() + ": " + e.what());
  }
  return ansatz_spec(doc, field);
}

Method method_field(const json& v, const std::string& field) {
  try {
    return Method::parse(string(v, field));
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
}

TerminationConfig termination_field(const json& v, const std::string& field, TerminationConfig t) {
  check_keys(v, field, {"window", "eps_f", "eps_theta"});
  if (const json* x = find(v, "window")) t.window = static_cast<int>(integer(*x, join(field, "window")));
  if (const json* x = find(v, "eps_f")) t.eps_f = number(*x, join(field, "eps_f"));
  if (const json* x = find(v, "eps_theta")) t.eps_theta = number(*x, join(field, "eps_theta"));
  if (t.window < 1) fail(join(field, "window"), "must be at least 1");
  if (t.eps_f < 0.0) fail(join(field, "eps_f"), "must be non-negative");
  if (t.eps_theta < 0.0) fail(join(field, "eps_theta"), "must be non-negative");
  return t;
}

SpsaOptions spsa_field(const json& v, const std::string& field, SpsaOptions s) {
  check_keys(v, field, {"alpha", "gamma", "stability", "perturbation", "initial_step", "calibration_probes",
                        "learning_rate"});
  if (const json* x = find(v, "alpha")) s.alpha = number(*x, join(field, "alpha"));
  if (const json* x = find(v, "gamma")) s.gamma = number(*x, join(field, "gamma"));
  if (const json* x = find(v, "stability")) s.stability = number(*x, join(field, "stability"));
  if (const json* x = find(v, "perturbation")) s.perturbation = number(*x, join(field, "perturbation"));
  if (const json* x = find(v, "initial_step")) s.initial_step = number(*x, join(field, "initial_step"));
  if (const json* x = find(v, "calibration_probes")) {
    s.calibration_probes = static_cast<int>(integer(*x, join(field, "calibration_probes")));
  }
  if (const json* x = find(v, "learning_rate")) s.learning_rate = number(*x, join(field, "learning_rate"));
  if (!(s.perturbation > 0.0)) fail(join(field, "perturbation"), "must be positive");
  if (s.calibration_probes < 1) fail(join(field, "calibration_probes"), "must be at least 1");
  return s;
}

/// {"method", "max_iter", "termination", "spsa", "nft"}; unspecified fields
/// keep the values of `defaults`.
StepSettings step_field(const json& v, const std::string& field, StepSettings s) {
  check_keys(v, field, {"method", "max_iter", "termination", "spsa", "nft"});
  if (const json* x = find(v, "method")) s.method = method_field(*x, join(field, "method"));
  if (const json* x = find(v, "max_iter")) s.max_iter = static_cast<int>(integer(*x, join(field, "max_iter")));
  if (s.max_iter < 1) fail(join(field, "max_iter"), "must be at least 1");
  if (const json* x = find(v, "termination")) s.termination = termination_field(*x, join(field, "termination"), s.termination);
  if (const json* x = find(v, "spsa")) s.spsa = spsa_field(*x, join(field, "spsa"), s.spsa);
  if (const json* x = find(v, "nft")) {
    const std::string f = join(field, "nft");
    check_keys(*x, f, {"reset_interval"});
    if (const json* r = find(*x, "reset_interval")) s.nft.reset_interval = static_cast<int>(integer(*r, join(f, "reset_interval")));
    if (s.nft.reset_interval < 0) fail(join(f, "reset_interval"), "must be non-negative");
  }
  return s;
}

EstimatorConfig estimator_field(const json& v, const std::string& field) {
  check_keys(v, field, {"m", "noiseless", "grouping"});
  EstimatorConfig e;
  if (const json* x = find(v, "m")) e.m = static_cast<int>(integer(*x, join(field, "m")));
  if (e.m < 1) fail(join(field, "m"), "must be at least 1");
  if (const json* x = find(v, "noiseless")) e.noiseless = boolean(*x, join(field, "noiseless"));
  if (const json* x = find(v, "grouping")) {
    try {
      e.grouping = parse_grouping(string(*x, join(field, "grouping")));
    } catch (const std::invalid_argument& err) {
      fail(join(field, "grouping"), err.what());
    }
  }
  return e;
}

ScheduleSpec schedule_field(const json& v, const std::string& field) {
  check_keys(v, field, {"kind", "step", "exponent"});
  ScheduleSpec s;
  if (const json* x = find(v, "kind")) {
    const std::string k = string(*x, join(field, "kind"));
    if (k == "cubic") s.kind = ScheduleKind::cubic;
    else if (k == "linear") s.kind = ScheduleKind::linear;
    else if (k == "power") s.kind = ScheduleKind::power;
    else fail(join(field, "kind"), "expected cubic, linear or power");
  }
  if (const json* x = find(v, "step")) s.step = number(*x, join(field, "step"));
  if (const json* x = find(v, "exponent")) s.exponent = number(*x, join(field, "exponent"));
  try {
    make_schedule(s.kind, s.step, s.exponent);
  } catch (const std::invalid_argument& e) {
    fail(field, e.what());
  }
  return s;
}

}  // namespace

ExperimentMode parse_mode(const std::string& name) {
  if (name == "vaqc") return ExperimentMode::vaqc;
  if (name == "vqe-restarts") return ExperimentMode::vqe_restarts;
  if (name == "surface") return ExperimentMode::surface;
  if (name == "gap") return ExperimentMode::gap;
  if (name == "euler-compare") return ExperimentMode::euler_compare;
  throw std::invalid_argument("unknown mode '" + name + "'");
}

std::string to_string(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::vaqc: return "vaqc";
    case ExperimentMode::vqe_restarts: return "vqe-restarts";
    case ExperimentMode::surface: return "surface";
    case ExperimentMode::gap: return "gap";
    case ExperimentMode::euler_compare: return "euler-compare";
  }
  return "?";
}

ExperimentConfig parse_experiment_config(const std::string& json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(doc, "", {"schema_version", "mode", "hamiltonian", "ansatz", "theta0", "schedule", "corrector", "final_step",
                       "eps_r", "euler_predictor", "estimator", "restarts", "instances", "reference", "methods",
                       "method_defaults", "gap_points", "trials", "base_seed", "jobs", "output_dir", "description"});

  ExperimentConfig c;
  const json* version = find(doc, "schema_version");
  if (!version) fail("schema_version", "missing");
  c.schema_version = static_cast<int>(integer(*version, "schema_version"));
  if (c.schema_version != kConfigSchemaVersion) {
    fail("schema_version", "unsupported version " + std::to_string(c.schema_version) + " (expected " +
                               std::to_string(kConfigSchemaVersion) + ")");
  }
  const json* mode = find(doc, "mode");
  if (!mode) fail("mode", "missing");
  try {
    c.mode = parse_mode(string(*mode, "mode"));
  } catch (const std::invalid_argument& e) {
    fail("mode", e.what());
  }

  const json* ham = find(doc, "hamiltonian");
  if (!ham) fail("hamiltonian", "missing");
  if (ham->is_string()) {
    c.target = existing_file(*ham, "hamiltonian", base_dir);
  } else {
    check_keys(*ham, "hamiltonian", {"target", "initial"});
    const json* t = find(*ham, "target");
    if (!t) fail("hamiltonian.target", "missing");
    c.target = existing_file(*t, "hamiltonian.target", base_dir);
    if (const json* i = find(*ham, "initial")) c.initial = existing_file(*i, "hamiltonian.initial", base_dir);
  }

  const json* ansatz = find(doc, "ansatz");
  if (!ansatz) fail("ansatz", "missing");
  c.ansatz = ansatz_field(*ansatz, "ansatz", base_dir);
  const int p = build_layered_ry_ansatz(c.ansatz).num_parameters();

  if (const json* t0 = find(doc, "theta0")) {
    if (!t0->is_array()) fail("theta0", "expected an array of angles");
    if (static_cast<int>(t0->size()) != p) {
      fail("theta0", "has " + std::to_string(t0->size()) + " entries but the ansatz has " + std::to_string(p) +
                         " parameters");
    }
    Vector v(p);
    for (int i = 0; i < p; ++i) v(i) = number((*t0)[static_cast<std::size_t>(i)], "theta0[" + std::to_string(i) + "]");
    c.theta0 = v;
  }

  if (const json* x = find(doc, "schedule")) c.schedule = schedule_field(*x, "schedule");
  if (const json* x = find(doc, "corrector")) c.corrector.corrector = step_field(*x, "corrector", {});
  if (const json* x = find(doc, "final_step")) c.corrector.final_step = step_field(*x, "final_step", c.corrector.corrector);
  if (const json* x = find(doc, "eps_r")) {
    c.corrector.eps_r = number(*x, "eps_r");
    if (!(*c.corrector.eps_r > 0.0)) fail("eps_r", "must be positive");
  }
  if (const json* x = find(doc, "euler_predictor")) c.corrector.euler_predictor = boolean(*x, "euler_predictor");
  if (const json* x = find(doc, "estimator")) c.estimator = estimator_field(*x, "estimator");

  if (const json* x = find(doc, "restarts")) {
    check_keys(*x, "restarts", {"min_restarts", "iteration_budget", "max_restarts"});
    if (const json* v = find(*x, "min_restarts")) c.restarts.min_restarts = static_cast<int>(integer(*v, "restarts.min_restarts"));
    if (const json* v = find(*x, "iteration_budget")) c.restarts.iteration_budget = integer(*v, "restarts.iteration_budget");
    if (const json* v = find(*x, "max_restarts")) c.restarts.max_restarts = static_cast<int>(integer(*v, "restarts.max_restarts"));
    if (c.restarts.min_restarts < 1) fail("restarts.min_restarts", "must be at least 1");
    if (c.restarts.max_restarts < c.restarts.min_restarts) fail("restarts.max_restarts", "must be >= min_restarts");
  }

  StepSettings defaults;
  if (const json* x = find(doc, "method_defaults")) defaults = step_field(*x, "method_defaults", {});
  if (const json* x = find(doc, "reference")) c.reference = step_field(*x, "reference", defaults);
  if (const json* x = find(doc, "methods")) {
    if (!x->is_array()) fail("methods", "expected an array of method names");
    for (std::size_t i = 0; i < x->size(); ++i) c.methods.push_back(method_field((*x)[i], "methods[" + std::to_string(i) + "]"));
  }
  if (const json* x = find(doc, "instances")) {
    if (!x->is_array()) fail("instances", "expected an array");
    for (std::size_t i = 0; i < x->size(); ++i) {
      const std::string f = "instances[" + std::to_string(i) + "]";
      const json& e = (*x)[i];
      check_keys(e, f, {"label", "hamiltonian", "t"});
      InstanceSpec s;
      if (const json* h = find(e, "hamiltonian")) s.hamiltonian = existing_file(*h, join(f, "hamiltonian"), base_dir);
      if (const json* t = find(e, "t")) {
        s.t = number(*t, join(f, "t"));
        if (!(*s.t >= 0.0 && *s.t <= 1.0)) fail(join(f, "t"), "must lie in [0, 1]");
      }
      if (s.hamiltonian.has_value() == s.t.has_value()) fail(f, "needs exactly one of 'hamiltonian' or 't'");
      if (const json* l = find(e, "label")) s.label = string(*l, join(f, "label"));
      else s.label = s.t ? "t=" + format_number(*s.t) : s.hamiltonian->stem().string();
      c.instances.push_back(std::move(s));
    }
  }

  if (const json* x = find(doc, "gap_points")) {
    c.gap_points = static_cast<int>(integer(*x, "gap_points"));
    if (c.gap_points < 2) fail("gap_points", "must be at least 2");
  }
  if (const json* x = find(doc, "trials")) c.trials = static_cast<int>(integer(*x, "trials"));
  if (c.trials < 1) fail("trials", "must be at least 1");
  if (const json* x = find(doc, "base_seed")) {
    if (!x->is_number_unsigned()) fail("base_seed", "expected a non-negative integer");
    c.base_seed = x->get<std::uint64_t>();
  }
  if (const json* x = find(doc, "jobs")) c.jobs = static_cast<int>(integer(*x, "jobs"));
  if (c.jobs < 0) fail("jobs", "must be non-negative");
  if (const json* x = find(doc, "output_dir")) {
    fs::path out = string(*x, "output_dir");
    c.output_dir = (out.is_relative() ? base_dir / out : out).lexically_normal();
  } else {
    c.output_dir = (base_dir / "out").lexically_normal();
  }

  // Mode-specific consistency.
  switch (c.mode) {
    case ExperimentMode::vaqc:
    case ExperimentMode::euler_compare:
      if (!find(doc, "corrector")) fail("corrector", "missing (required by mode " + to_string(c.mode) + ")");
      if (!c.corrector.corrector.method.bootstrap) {
        fail("corrector.method", "a homotopy run needs bootstrapping (B) in the corrector method");
      }
      break;
    case ExperimentMode::vqe_restarts:
      if (!find(doc, "corrector")) fail("corrector", "missing (the restart optimizer)");
      if (c.corrector.corrector.method.bootstrap) fail("corrector.method", "B needs an ordered problem list; restarts have none");
      break;
    case ExperimentMode::surface:
      if (c.instances.size() < 2) fail("instances", "surface mode needs at least two instances");
      if (!find(doc, "reference")) fail("reference", "missing (surface mode needs a reference method)");
      if (c.methods.empty()) fail("methods", "surface mode needs at least one method");
      break;
    case ExperimentMode::gap:
      break;
  }
  return c;
}

ExperimentConfig load_experiment_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  ExperimentConfig c = parse_experiment_config(text.str(), path.parent_path().empty() ? fs::path(".") : path.parent_path());
  c.source = path;
  return c;
}

void apply_overrides(ExperimentConfig& cfg, const ConfigOverrides& o) {
  if (o.seed) cfg.base_seed = *o.seed;
  if (o.trials) {
    if (*o.trials < 1) throw ConfigError("--trials must be at least 1");
    cfg.trials = *o.trials;
    if (cfg.mode == ExperimentMode::vqe_restarts) cfg.restarts.min_restarts = *o.trials;
  }
  if (o.output_dir) cfg.output_dir = *o.output_dir;
  if (o.noiseless) cfg.estimator.noiseless = true;
  if (o.jobs) {
    if (*o.jobs < 0) throw ConfigError("--jobs must be non-negative");
    cfg.jobs = *o.jobs;
  }
}

}  // namespace vaqclab
