/* Copyright 2026 The ddcnet Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef DDCNET_THEOREM_CASES_HPP_
#define DDCNET_THEOREM_CASES_HPP_

#include <numbers>
#include <string>
#include <vector>

#include "ddcnet/solver.hpp"

namespace ddcnet {

/// Values for the angles the gGHZ case analysis leaves arbitrary.
struct FreeAngles {
  double u1 = std::numbers::pi / 3;
  double u2 = std::numbers::pi / 3;
  double u3 = std::numbers::pi / 3;
  double v1 = std::numbers::pi / 3;
};

/// Theta angles of orthogonal non-identity encodings on a non-maximally
/// entangled gGHZ state, one row per encoding and one column per sender.
///
/// Each row's phases are left for the solver; only the thetas are pinned.
struct AngleTable {
  std::string name;
  int num_senders = 0;
  std::vector<std::vector<double>> thetas;
  /// True when the case analysis says no further encoding can be added.
  bool maximal = false;

  int rows() const { return static_cast<int>(thetas.size()); }
};

/// Configurations from the gGHZ no-go case analysis.
///
/// Two senders: cases 2 (two class-C1 unitaries, theta^{S2} differing by
/// pi/2), 4 (two C1 plus one C2) and 5 (one per class).
/// Three senders: cases 1 through 8 of the seven-class analysis. Case 6
/// returns its four-unitary partial table followed by the full table.
/// Throws std::invalid_argument for other (senders, case) pairs.
std::vector<AngleTable> gghz_theorem_families(int num_senders, int case_id,
                                              const FreeAngles& free = {});

/// Case ids accepted by gghz_theorem_families for the given sender count.
std::vector<int> gghz_theorem_case_ids(int num_senders);

/// Identity, then the table rows with thetas fixed and phases free, then
/// `extra_free` fully free encodings.
SearchTemplate phase_template(const AngleTable& table, int extra_free = 0);

/// Solves for the phases of a table (N = rows + 1).
FeasibilityResult solve_table_phases(const DensityMatrix& rho,
                                     const AngleTable& table,
                                     const SolverConfig& cfg);

/// Tries to append one fully free encoding to a table (N = rows + 2).
FeasibilityResult extend_table(const DensityMatrix& rho, const AngleTable& table,
                               const SolverConfig& cfg);

}  // namespace ddcnet

#endif  // DDCNET_THEOREM_CASES_HPP_
