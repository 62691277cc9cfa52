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

#ifndef DDCNET_SOLVER_HPP_
#define DDCNET_SOLVER_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddcnet/encoders.hpp"
#include "ddcnet/states.hpp"

namespace ddcnet {

enum class ScanOrder { kAscending };

struct SolverConfig {
  /// A restart converges once every |pair_overlap| is below this.
  double tolerance = 1e-5;
  int restarts = 50;
  int max_iterations = 2000;
  std::uint64_t seed = 0;
  ScanOrder scan_order = ScanOrder::kAscending;
  /// Converged restarts keep iterating until every overlap is below this, so
  /// FEASIBLE solutions are accurate far beyond `tolerance`.
  double polish_tolerance = 1e-13;
  /// A restart is abandoned once its residual norm falls by less than
  /// max(1e-12, plateau_relative * norm) over 25 iterations. Zero keeps only
  /// the absolute test.
  double plateau_relative = 1e-4;
  /// Restarts evaluated concurrently; never changes the result.
  int threads = 1;

  void validate() const;
};

enum class Feasibility { kFeasible, kInfeasible };

std::string to_string(Feasibility f);

struct FeasibilityResult {
  Feasibility status = Feasibility::kInfeasible;
  /// Smallest max |pair_overlap| reached by any restart that was run.
  double best_residual = 0.0;
  int restarts_used = 0;
  std::optional<EncodingSet> solution;

  bool feasible() const { return status == Feasibility::kFeasible; }
};

struct DdcResult {
  SystemShape shape;
  int n_max = 0;
  /// Keyed by N. The classical limit d^M is recorded FEASIBLE without a solve.
  std::map<int, FeasibilityResult> per_n_evidence;
  std::uint64_t seed = 0;
};

/// Which Su2 angles of which encodings the optimizer may move.
///
/// `start` holds every encoding's initial angles; free angles are redrawn at
/// each restart (theta uniform in [0, pi], x and y uniform in [0, 2 pi]).
struct SearchTemplate {
  SystemShape shape;
  std::vector<ProductEncoding> start;
  /// free[e * M + k] flags (theta, x, y) of sender k in encoding e.
  std::vector<std::array<bool, 3>> free;

  int size() const { return static_cast<int>(start.size()); }
  int num_unknowns() const;

  /// Identity followed by N - 1 fully free encodings.
  static SearchTemplate all_free(SystemShape shape, int n);
};

/// Levenberg-Marquardt search for N mutually orthogonal encodings on rho.
FeasibilityResult find_orthogonal_set(const DensityMatrix& rho, int n,
                                      const SolverConfig& cfg);

/// Same search over an arbitrary template. `stream_tag` separates the random
/// streams of unrelated searches that share a seed.
FeasibilityResult solve_template(const DensityMatrix& rho,
                                 const SearchTemplate& tmpl,
                                 const SolverConfig& cfg,
                                 std::uint64_t stream_tag);

/// Scans N upward from d^M + 1 and returns the largest feasible N.
DdcResult compute_nmax(const PureState& state, const SolverConfig& cfg);

struct VerifyReport {
  double max_abs_overlap = 0.0;
  bool pass = false;
};

/// Recomputes every pairwise overlap from the full Kronecker-product
/// unitaries in extended precision.
VerifyReport verify_set(const DensityMatrix& rho, const EncodingSet& set, double tol);

/// Number of senders encoded by a 2^M x 2^M density matrix.
int senders_of(const DensityMatrix& rho);

enum class ConjectureFinding {
  kNone,
  /// N = d^(M+1) - 1 is feasible only because N = d^(M+1) is.
  kSubsetOfFullBasis,
  kCounterexampleCandidate,
};

std::string to_string(ConjectureFinding f);

struct ConjectureEntry {
  int index = 0;
  FeasibilityResult at_n;
  std::optional<FeasibilityResult> at_full;
  ConjectureFinding finding = ConjectureFinding::kNone;
};

struct ConjectureReport {
  int probed_n = 0;
  std::vector<ConjectureEntry> entries;
  int counterexample_candidates() const;
  int subset_of_full_basis() const;
};

/// Tests feasibility of N = d^(M+1) - 1 for every state.
ConjectureReport corroborate_conjecture(const std::vector<PureState>& states,
                                        const SolverConfig& cfg);

}  // namespace ddcnet

#endif  // DDCNET_SOLVER_HPP_
