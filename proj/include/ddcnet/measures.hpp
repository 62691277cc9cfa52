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

#ifndef DDCNET_MEASURES_HPP_
#define DDCNET_MEASURES_HPP_

#include <vector>

#include <Eigen/Dense>

#include "ddcnet/states.hpp"

namespace ddcnet {

/// Two disjoint, non-empty groups of party indices. Parties in neither group
/// are traced out before the partial transpose.
struct Bipartition {
  std::vector<int> a;
  std::vector<int> b;
};

struct MeasureReport {
  double ggm = 0.0;
  /// NaN unless the state has exactly three parties.
  double neg_sq_monogamy = 0.0;
  double dc_capacity_bits = 0.0;
  /// NaN unless the state has exactly three qubits.
  double three_tangle = 0.0;
};

/// Von Neumann entropy in bits; eigenvalues below 1e-12 contribute nothing.
double entropy_bits(const Eigen::MatrixXcd& rho);

/// 1 - max over bipartitions of the largest squared Schmidt coefficient.
double ggm(const PureState& state);

/// (||rho^{T_a}||_1 - 1) / 2 on the reduced state of a ∪ b.
double negativity(const PureState& state, const Bipartition& partition);

/// N^2(node : rest) - sum over k != node of N^2(node : k). Three parties only.
double neg_sq_monogamy(const PureState& state, int node);
/// Same with the receiver as node.
double neg_sq_monogamy(const PureState& state);

/// M log2 d + S(rho_R) for a pure shared state.
double dc_capacity(const PureState& state);

/// Normalized three-tangle in [0, 1]. Three qubits only.
double three_tangle(const PureState& state);

MeasureReport compute_measures(const PureState& state);

}  // namespace ddcnet

#endif  // DDCNET_MEASURES_HPP_
