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

#ifndef DDCNET_RNG_HPP_
#define DDCNET_RNG_HPP_

#include <complex>
#include <cstdint>
#include <initializer_list>

namespace ddcnet {

/// Counter-based 64-bit generator.
///
/// Output i of a stream is `mix64(key + (i + 1) * kGolden)`, where mix64 is the
/// SplitMix64 finalizer. A stream is therefore a pure function of its key and
/// can be re-derived anywhere; no state is shared between streams. Keys for
/// sub-tasks are obtained with `stream_key(seed, {task, subtask, ...})`, so
/// results never depend on how work is scheduled across threads.
///
/// Real variates use the top 53 bits; normal variates use Box-Muller. Both are
/// implemented here rather than via <random> distributions so that output is
/// identical across standard library implementations.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal N(0, 1).
  double normal();
  /// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
  std::complex<double> complex_normal();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t mix64(std::uint64_t z);

/// Derives the key of the stream identified by `path` under `seed`.
std::uint64_t stream_key(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> path);

}  // namespace ddcnet

#endif  // DDCNET_RNG_HPP_
