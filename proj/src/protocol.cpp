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

#include "ddcnet/protocol.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "ddcnet/solver.hpp"

namespace ddcnet {
namespace {

constexpr double kBuildTolerance = 1e-5;
constexpr double kMinMargin = 1.0 - 1e-4;

std::vector<int> balanced_split(int n, int senders) {
  std::vector<int> split;
  int remaining = n;
  for (int k = senders; k > 0; --k) {
    // Smallest r with r^k >= remaining.
    int r = 1;
    while (std::pow(r, k) < remaining) ++r;
    split.push_back(r);
    remaining = (remaining + r - 1) / r;
  }
  return split;
}

}  // namespace

std::vector<int> alphabet_split(int n, int num_senders, int local_dim) {
  if (n < 1 || num_senders < 1) {
    throw std::invalid_argument(
        fmt::format("alphabet_split: bad n={} senders={}", n, num_senders));
  }
  std::vector<int> split(num_senders, 1);
  int rest = n;
  int k = 0;
  for (int p = 2; rest > 1; ++p) {
    while (rest % p == 0) {
      split[k++ % num_senders] *= p;
      rest /= p;
    }
  }
  const int cap = local_dim * local_dim;
  if (std::any_of(split.begin(), split.end(), [&](int r) { return r > cap; })) {
    return balanced_split(n, num_senders);
  }
  return split;
}

std::vector<int> message_symbols(const std::vector<int>& split, int m) {
  std::vector<int> out(split.size());
  for (int k = static_cast<int>(split.size()) - 1; k >= 0; --k) {
    out[k] = m % split[k];
    m /= split[k];
  }
  return out;
}

Codebook::Codebook(PureState state, EncodingSet set)
    : state_(std::move(state)), set_(std::move(set)) {
  if (!(set_.shape() == state_.shape())) {
    throw std::invalid_argument("codebook: state and encoding shapes differ");
  }
  encoded_.reserve(set_.size());
  for (const auto& enc : set_.encodings()) encoded_.push_back(encode_state(state_, enc));
  split_ = alphabet_split(set_.size(), state_.shape().num_senders,
                          state_.shape().local_dim);
}

Codebook build_codebook_unchecked(const PureState& state, const EncodingSet& set) {
  return Codebook(state, set);
}

Codebook build_codebook(const PureState& state, const EncodingSet& set) {
  if (!(set.shape() == state.shape())) {
    throw std::invalid_argument("codebook: state and encoding shapes differ");
  }
  const auto report = verify_set(reduce_to_senders(state), set, kBuildTolerance);
  if (!report.pass) {
    throw std::invalid_argument(fmt::format(
        "codebook: encodings not orthogonal (max overlap {:.3e})",
        report.max_abs_overlap));
  }
  return build_codebook_unchecked(state, set);
}

RoundResult run_round(const Codebook& cb, int message) {
  if (message < 0 || message >= cb.size()) {
    throw std::out_of_range(
        fmt::format("message {} outside [0, {})", message, cb.size()));
  }
  const auto& sent = cb.encoded_states()[message];
  double best = -1.0;
  double second = -1.0;
  int decoded = -1;
  for (int j = 0; j < cb.size(); ++j) {
    const double p = std::norm(cb.encoded_states()[j].dot(sent));
    if (p > best) {
      second = best;
      best = p;
      decoded = j;
    } else if (p > second) {
      second = p;
    }
  }
  const double margin = best - std::max(second, 0.0);
  if (margin < kMinMargin) {
    throw DecodingError(fmt::format(
        "message {}: ambiguous outcome (margin {:.6f})", message, margin));
  }
  return {message, decoded, margin};
}

}  // namespace ddcnet
