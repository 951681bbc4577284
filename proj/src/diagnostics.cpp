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


#include <limits>

#include "vaqclab/vaqc.hpp"

namespace vaqclab {

GapReport gap_diagnostic(const HomotopyHamiltonian& hh, const std::vector<double>& grid) {
  if (grid.empty()) throw std::invalid_argument("gap grid is empty");
  if (hh.n_qubits() > kMaxQubits) throw std::invalid_argument("gap diagnostic: qubit count above dense cap");
  GapReport report;
  report.min_gap = std::numeric_limits<double>::infinity();
  for (double t : grid) {
    const EigenResult eig = exact_eigen(homotopy_at(hh, t));
    report.points.push_back({t, eig.ground_energy, eig.excited_energy, eig.gap()});
    if (eig.gap() < report.min_gap) {
      report.min_gap = eig.gap();
      report.t_at_min = t;
    }
  }
  return report;
}

}  // namespace vaqclab
