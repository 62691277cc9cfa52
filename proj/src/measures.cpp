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

#include "ddcnet/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace ddcnet {
namespace {

void check_parties(const Bipartition& p, int parties) {
  if (p.a.empty() || p.b.empty()) {
    throw std::invalid_argument("bipartition: both sides must be non-empty");
  }
  std::vector<bool> seen(parties, false);
  for (const auto* side : {&p.a, &p.b}) {
    for (int q : *side) {
      if (q < 0 || q >= parties) {
        throw std::invalid_argument(fmt::format("bipartition: no party {}", q));
      }
      if (seen[q]) {
        throw std::invalid_argument(fmt::format("bipartition: party {} repeated", q));
      }
      seen[q] = true;
    }
  }
}

// Transposes the subsystems flagged in `mask` (bit j = j-th kept party, most
// significant first) of an n-qubit density matrix.
Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, int n,
                                   unsigned mask) {
  // Flip-bit pattern in index space: party j occupies bit (n - 1 - j).
  unsigned bits = 0;
  for (int j = 0; j < n; ++j) {
    if (mask & (1u << j)) bits |= 1u << (n - 1 - j);
  }
  const auto dim = rho.rows();
  Eigen::MatrixXcd out(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto swap = (static_cast<unsigned>(r) ^ static_cast<unsigned>(c)) & bits;
      out(r ^ swap, c ^ swap) = rho(r, c);
    }
  }
  return out;
}

}  // namespace

double entropy_bits(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double p : es.eigenvalues()) {
    if (p > 1e-12) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

double ggm(const PureState& state) {
  const int n = state.shape().num_parties();
  double best = 0.0;
  // Subsets not containing the last party cover each cut once.
  for (unsigned mask = 1; mask < (1u << (n - 1)); ++mask) {
    std::vector<int> keep;
    for (int j = 0; j < n - 1; ++j) {
      if (mask & (1u << j)) keep.push_back(j);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(partial_trace(state, keep),
                                                       Eigen::EigenvaluesOnly);
    best = std::max(best, es.eigenvalues().maxCoeff());
  }
  return std::clamp(1.0 - best, 0.0, 1.0);
}

double negativity(const PureState& state, const Bipartition& partition) {
  check_parties(partition, state.shape().num_parties());
  std::vector<int> keep = partition.a;
  keep.insert(keep.end(), partition.b.begin(), partition.b.end());
  std::sort(keep.begin(), keep.end());
  unsigned mask = 0;
  for (std::size_t j = 0; j < keep.size(); ++j) {
    if (std::find(partition.a.begin(), partition.a.end(), keep[j]) != partition.a.end()) {
      mask |= 1u << j;
    }
  }
  const Eigen::MatrixXcd pt = partial_transpose(
      partial_trace(state, keep), static_cast<int>(keep.size()), mask);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pt, Eigen::EigenvaluesOnly);
  return std::max(0.0, (es.eigenvalues().cwiseAbs().sum() - 1.0) / 2.0);
}

double neg_sq_monogamy(const PureState& state, int node) {
  const int n = state.shape().num_parties();
  if (n != 3) {
    throw std::invalid_argument(
        fmt::format("neg_sq_monogamy: needs 3 parties, got {}", n));
  }
  if (node < 0 || node >= n) {
    throw std::invalid_argument(fmt::format("neg_sq_monogamy: no party {}", node));
  }
  Bipartition whole{{node}, {}};
  for (int k = 0; k < n; ++k) {
    if (k != node) whole.b.push_back(k);
  }
  const double all = negativity(state, whole);
  double score = all * all;
  for (int k : whole.b) {
    const double pair = negativity(state, {{node}, {k}});
    score -= pair * pair;
  }
  return score;
}

double neg_sq_monogamy(const PureState& state) {
  return neg_sq_monogamy(state, state.shape().num_senders);
}

double dc_capacity(const PureState& state) {
  const auto& shape = state.shape();
  const int receiver = shape.num_senders;
  const double s_r = entropy_bits(partial_trace(state, std::span(&receiver, 1)));
  return shape.num_senders * std::log2(shape.local_dim) + s_r;
}

double three_tangle(const PureState& state) {
  if (state.shape().num_parties() != 3 || state.shape().local_dim != 2) {
    throw std::invalid_argument("three_tangle: needs a three-qubit state");
  }
  return std::clamp(hyperdeterminant_tangle(state.amplitudes()), 0.0, 1.0);
}

MeasureReport compute_measures(const PureState& state) {
  constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
  const bool three = state.shape().num_parties() == 3;
  return {
      .ggm = ggm(state),
      .neg_sq_monogamy = three ? neg_sq_monogamy(state) : kNan,
      .dc_capacity_bits = dc_capacity(state),
      .three_tangle = three ? three_tangle(state) : kNan,
  };
}

}  // namespace ddcnet
