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

#ifndef DDCNET_PROTOCOL_HPP_
#define DDCNET_PROTOCOL_HPP_

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "ddcnet/encoders.hpp"
#include "ddcnet/states.hpp"

namespace ddcnet {

/// Raised when the receiver cannot tell the sent state apart from another.
class DecodingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-sender symbol ranges for an alphabet of n messages.
///
/// The prime factors of n, smallest first, are dealt round-robin to the
/// senders: 8 -> (4, 2), 6 -> (2, 3), 16 -> (4, 2, 2). If that leaves any
/// range above d^2, a balanced mixed radix with product >= n is used instead
/// (5 -> (3, 2)).
std::vector<int> alphabet_split(int n, int num_senders, int local_dim = 2);

/// Sender symbols of message m, leading sender most significant.
std::vector<int> message_symbols(const std::vector<int>& split, int m);

class Codebook {
 public:
  const PureState& state() const { return state_; }
  const EncodingSet& set() const { return set_; }
  const std::vector<Eigen::VectorXcd>& encoded_states() const { return encoded_; }
  const std::vector<int>& split() const { return split_; }
  int size() const { return set_.size(); }
  /// Symbols each sender transmits for message m.
  std::vector<int> symbols(int m) const { return message_symbols(split_, m); }

 private:
  friend Codebook build_codebook_unchecked(const PureState&, const EncodingSet&);
  Codebook(PureState state, EncodingSet set);

  PureState state_;
  EncodingSet set_;
  std::vector<Eigen::VectorXcd> encoded_;
  std::vector<int> split_;
};

/// Throws std::invalid_argument unless the set verifies on the state within
/// 1e-5 and the shapes agree.
Codebook build_codebook(const PureState& state, const EncodingSet& set);
/// No orthogonality check; for exercising the decoder on broken sets.
Codebook build_codebook_unchecked(const PureState& state, const EncodingSet& set);

struct RoundResult {
  int sent = 0;
  int decoded = 0;
  /// Best minus runner-up detection probability.
  double margin = 0.0;
};

/// Encodes `message`, then decodes by the most probable codebook state.
/// Throws DecodingError when the margin is below 1 - 1e-4 and
/// std::out_of_range for a bad message index.
RoundResult run_round(const Codebook& cb, int message);

}  // namespace ddcnet

#endif  // DDCNET_PROTOCOL_HPP_
