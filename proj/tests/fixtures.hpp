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

#ifndef VAQCLAB_TESTS_FIXTURES_HPP
#define VAQCLAB_TESTS_FIXTURES_HPP

#include <string>

#include "vaqclab/hamiltonian.hpp"

namespace vaqclab::testing {

// Frozen from tests/oracles/lih_reference.py (numpy dense diagonalization).
inline constexpr double kLihLambda0 = -0.052203164218002;
inline constexpr double kLihLambda1 = -0.006725758535457;
inline constexpr double kLihMinGap = 0.000834139474015;
inline constexpr double kLihMinGapT = 0.55;

inline std::string data_path(const std::string& name) { return std::string(VAQCLAB_DATA_DIR) + "/" + name; }
inline std::string config_path(const std::string& name) {
  return std::string(VAQCLAB_CONFIG_DIR) + "/" + name;
}

inline PauliSum lih_target() { return load_pauli_sum(data_path("lih_2p5A.ham")); }

}  // namespace vaqclab::testing

#endif  // VAQCLAB_TESTS_FIXTURES_HPP
