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
#include <vector>

#include "vaqclab/optimizers.hpp"

namespace vaqclab {

namespace {

// Correctly rounded sum of doubles (Shewchuk partials with half-way
// correction), finite inputs only.
class ExactSum {
 public:
  void add(double x) {
    std::size_t i = 0;
    for (double y : partials_) {
      if (std::abs(x) < std::abs(y)) std::swap(x, y);
      const double hi = x + y;
      const double lo = y - (hi - x);
      if (lo != 0.0) partials_[i++] = lo;
      x = hi;
    }
    partials_.resize(i);
    partials_.push_back(x);
  }

  double value() const {
    std::size_t n = partials_.size();
    if (n == 0) return 0.0;
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
      const double x = hi;
      const double y = partials_[--n];
      hi = x + y;
      lo = y - (hi - x);
      if (lo != 0.0) break;
    }
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
      const double y = lo * 2.0;
      const double x = hi + y;
      if (y == x - hi) hi = x;
    }
    return hi;
  }

 private:
  std::vector<double> partials_;
};

void require_window(std::size_t size, int window) {
  if (window < 1) throw std::invalid_argument("termination window must be at least 1");
  if (size < static_cast<std::size_t>(window) + 1) throw std::invalid_argument("history shorter than window + 1");
}

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::max_iter: return "max_iter";
    case StopReason::f_window: return "f_window";
    case StopReason::theta_window: return "theta_window";
  }
  return "unknown";
}

double windowed_f_change(std::span<const double> values, int window) {
  require_window(values.size(), window);
  const std::size_t k = values.size() - 1;
  ExactSum diff;
  for (int i = 1; i <= window; ++i) {
    diff.add(values[k - i]);
    diff.add(-values[k + 1 - i]);
  }
  return std::abs(diff.value()) / window;
}

double windowed_theta_change(std::span<const Vector> thetas, int window) {
  require_window(thetas.size(), window);
  const std::size_t k = thetas.size() - 1;
  const Eigen::Index p = thetas[k].size();
  Vector diff(p);
  for (Eigen::Index j = 0; j < p; ++j) {
    ExactSum s;
    for (int i = 1; i <= window; ++i) {
      s.add(thetas[k - i](j));
      s.add(-thetas[k + 1 - i](j));
    }
    diff(j) = s.value();
  }
  return diff.norm() / window;
}

double telescoped_f_change(std::span<const double> values, int window) {
  require_window(values.size(), window);
  const std::size_t k = values.size() - 1;
  return std::abs(values[k - window] - values[k]) / window;
}

double telescoped_theta_change(std::span<const Vector> thetas, int window) {
  require_window(thetas.size(), window);
  const std::size_t k = thetas.size() - 1;
  const Vector diff = thetas[k - window] - thetas[k];
  return diff.norm() / window;
}

std::optional<StopReason> termination_check(std::span<const Iterate> history, const TerminationConfig& cfg) {
  if (cfg.window < 1 || !(cfg.eps_f > 0.0) || !(cfg.eps_theta > 0.0)) {
    throw std::invalid_argument("termination needs window >= 1 and positive tolerances");
  }
  const std::size_t need = static_cast<std::size_t>(cfg.window) + 1;
  if (history.size() < need) return std::nullopt;
  const auto recent = history.subspan(history.size() - need);
  std::vector<double> values;
  std::vector<Vector> thetas;
  values.reserve(need);
  thetas.reserve(need);
  for (const auto& it : recent) {
    values.push_back(it.value);
    thetas.push_back(it.theta);
  }
  if (telescoped_f_change(values, cfg.window) <= cfg.eps_f) return StopReason::f_window;
  if (telescoped_theta_change(thetas, cfg.window) <= cfg.eps_theta) return StopReason::theta_window;
  return std::nullopt;
}

}  // namespace vaqclab
