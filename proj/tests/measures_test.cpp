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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ddcnet/measures.hpp"
#include "oracles.hpp"

namespace ddcnet {
namespace {

using oracle::Mat;

const PureState& ghz() {
  static const PureState s = make_gghz(2, 0.5, 0);
  return s;
}
const PureState& w_state() {
  static const PureState s = make_gw(1.0 / 3, 1.0 / 3);
  return s;
}
const PureState& product() {
  static const PureState s = make_gghz(2, 1.0, 0);
  return s;
}

double binary_entropy(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

PureState rotate_locally(const PureState& s, std::mt19937_64& gen) {
  std::vector<Mat> locals;
  for (int p = 0; p < s.shape().num_parties(); ++p) locals.push_back(oracle::haar_unitary(gen));
  return PureState::normalized(s.shape(), oracle::local_product(locals) * s.amplitudes());
}

TEST(Ggm, Fixtures) {
  EXPECT_NEAR(ggm(product()), 0, 1e-12);
  EXPECT_NEAR(ggm(ghz()), 0.5, 1e-9);
  EXPECT_NEAR(ggm(w_state()), 1.0 / 3, 1e-9);
  EXPECT_NEAR(oracle::ggm(ghz().amplitudes(), 3), 0.5, 1e-12);
  EXPECT_NEAR(oracle::ggm(w_state().amplitudes(), 3), 1.0 / 3, 1e-12);
}

TEST(Ggm, MatchesSvdOracleAndRange) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int m = 2 + s % 2;
    const auto psi = sample_haar_state({m, 2}, s);
    const double g = ggm(psi);
    EXPECT_NEAR(g, oracle::ggm(psi.amplitudes(), m + 1), 1e-12);
    if (m == 2) {
      EXPECT_GE(g, 0);
      EXPECT_LE(g, 0.5 + 1e-12);
    }
  }
}

TEST(Negativity, Fixtures) {
  EXPECT_NEAR(negativity(ghz(), {{2}, {0, 1}}), 0.5, 1e-9);
  EXPECT_NEAR(negativity(ghz(), {{2}, {0}}), 0, 1e-12);
  for (const Bipartition& p : {Bipartition{{0}, {1, 2}}, Bipartition{{1}, {2}}}) {
    EXPECT_NEAR(negativity(product(), p), 0, 1e-12);
  }
}

TEST(Negativity, MatchesOracle) {
  const std::vector<Bipartition> cuts{{{2}, {0, 1}}, {{0}, {1, 2}}, {{1}, {2}},
                                      {{0}, {2}},    {{0, 1}, {2}}};
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto psi = sample_haar_state({2, 2}, s);
    for (const auto& c : cuts) {
      EXPECT_NEAR(negativity(psi, c), oracle::negativity(psi.amplitudes(), 3, c.a, c.b), 1e-12);
    }
  }
  const auto psi4 = sample_haar_state({3, 2}, 1);
  EXPECT_NEAR(negativity(psi4, {{0, 3}, {1}}),
              oracle::negativity(psi4.amplitudes(), 4, {0, 3}, {1}), 1e-12);
}

TEST(Negativity, RejectsBadPartitions) {
  EXPECT_THROW(negativity(ghz(), {{}, {1}}), std::invalid_argument);
  EXPECT_THROW(negativity(ghz(), {{0}, {0}}), std::invalid_argument);
  EXPECT_THROW(negativity(ghz(), {{0}, {3}}), std::invalid_argument);
}

TEST(Monogamy, Fixtures) {
  EXPECT_NEAR(neg_sq_monogamy(ghz()), 0.25, 1e-9);
  EXPECT_NEAR(neg_sq_monogamy(product()), 0, 1e-12);
  const auto w = w_state().amplitudes();
  const double all = oracle::negativity(w, 3, {2}, {0, 1});
  const double p0 = oracle::negativity(w, 3, {2}, {0});
  const double p1 = oracle::negativity(w, 3, {2}, {1});
  const double want = all * all - p0 * p0 - p1 * p1;
  EXPECT_NEAR(neg_sq_monogamy(w_state()), want, 1e-12);
  // Regression pin of the oracle value.
  EXPECT_NEAR(neg_sq_monogamy(w_state()), 0.13734088638886577, 1e-12);
  EXPECT_NEAR(neg_sq_monogamy(w_state(), 0), neg_sq_monogamy(w_state()), 1e-12);
  EXPECT_THROW(neg_sq_monogamy(sample_haar_state({3, 2}, 0)), std::invalid_argument);
  EXPECT_THROW(neg_sq_monogamy(ghz(), 3), std::invalid_argument);
}

TEST(Capacity, Fixtures) {
  EXPECT_NEAR(dc_capacity(ghz()), 3, 1e-9);
  EXPECT_NEAR(dc_capacity(product()), 2, 1e-12);
  EXPECT_NEAR(dc_capacity(w_state()), 2 + binary_entropy(1.0 / 3), 1e-9);
  const auto s = sample_haar_state({2, 2}, 3);
  EXPECT_NEAR(dc_capacity(s), 2 + oracle::entropy_bits(oracle::reduced(s.amplitudes(), 3, {2})),
              1e-12);
  EXPECT_NEAR(dc_capacity(make_gghz(3, 0.5, 0)), 4, 1e-9);
}

TEST(Capacity, AtLeastClassicalLimit) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto psi = sample_haar_state({2, 2}, s);
    const double sr = oracle::entropy_bits(oracle::reduced(psi.amplitudes(), 3, {2}));
    EXPECT_GE(dc_capacity(psi), 2 - 1e-12);
    EXPECT_EQ(std::abs(dc_capacity(psi) - 2) < 1e-9, sr < 1e-9);
  }
  EXPECT_NEAR(dc_capacity(make_gw(1.0, 0.0)) - 2, 0, 1e-12);
  EXPECT_NEAR(dc_capacity(make_gw(0.0, 0.3)) - 2, 0, 1e-12);
}

TEST(Tangle, Fixtures) {
  EXPECT_NEAR(three_tangle(ghz()), 1, 1e-9);
  EXPECT_LT(three_tangle(w_state()), 1e-10);
  EXPECT_NEAR(oracle::tangle_epsilon(ghz().amplitudes()), 1, 1e-12);
  EXPECT_LT(oracle::tangle_epsilon(w_state().amplitudes()), 1e-12);
  for (std::uint64_t s = 0; s < 100; ++s) {
    EXPECT_LT(three_tangle(sample_class(SloccClass::kW, s)), 1e-8);
    const auto g = sample_class(SloccClass::kGhz, s);
    EXPECT_NEAR(three_tangle(g), oracle::tangle_epsilon(g.amplitudes()), 1e-12);
  }
  EXPECT_THROW(three_tangle(sample_haar_state({3, 2}, 0)), std::invalid_argument);
}

TEST(Report, FourQubitLeavesThreePartyMeasuresUndefined) {
  const auto m = compute_measures(make_gghz(3, 0.5, 0));
  EXPECT_TRUE(std::isnan(m.neg_sq_monogamy));
  EXPECT_TRUE(std::isnan(m.three_tangle));
  EXPECT_NEAR(m.ggm, 0.5, 1e-9);
  const auto g = compute_measures(ghz());
  EXPECT_NEAR(g.three_tangle, 1, 1e-9);
  EXPECT_NEAR(g.neg_sq_monogamy, 0.25, 1e-9);
}

TEST(Invariance, LocalUnitaries) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = trial % 2 ? sample_haar_state({2, 2}, trial)
                               : sample_class(SloccClass::kW, trial);
    const auto phi = rotate_locally(psi, gen);
    const auto a = compute_measures(psi);
    const auto b = compute_measures(phi);
    EXPECT_NEAR(a.ggm, b.ggm, 1e-9);
    EXPECT_NEAR(a.neg_sq_monogamy, b.neg_sq_monogamy, 1e-9);
    EXPECT_NEAR(a.dc_capacity_bits, b.dc_capacity_bits, 1e-9);
    EXPECT_NEAR(a.three_tangle, b.three_tangle, 1e-9);
    EXPECT_NEAR(negativity(psi, {{0}, {1}}), negativity(phi, {{0}, {1}}), 1e-9);
  }
}

}  // namespace
}  // namespace ddcnet
