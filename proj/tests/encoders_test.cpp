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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ddcnet/encoders.hpp"
#include "ddcnet/rng.hpp"
#include "oracles.hpp"

namespace ddcnet {
namespace {

using oracle::Mat;

constexpr double kPi = std::numbers::pi;

Su2Params random_params(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-10, 10);
  return {u(gen), u(gen), u(gen)};
}

ProductEncoding random_encoding(std::mt19937_64& gen, int m) {
  ProductEncoding e;
  for (int k = 0; k < m; ++k) e.per_sender.push_back(random_params(gen));
  return e;
}

std::vector<std::array<double, 3>> triples(const ProductEncoding& e) {
  std::vector<std::array<double, 3>> out;
  for (const auto& p : e.per_sender) out.push_back({p.theta, p.x, p.y});
  return out;
}

TEST(Su2, Identity) {
  EXPECT_NEAR((su2_matrix({0, 0, 0}) - Matrix2c::Identity()).norm(), 0, 1e-15);
}

TEST(Su2, RealRotation) {
  Matrix2c want;
  want << 0, -1, 1, 0;
  EXPECT_NEAR((su2_matrix({kPi / 2, 0, 0}) - want).norm(), 0, 1e-15);
}

TEST(Su2, UnitaryWithUnitDeterminant) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_params(gen);
    const Matrix2c u = su2_matrix(p);
    EXPECT_NEAR((u.adjoint() * u - Matrix2c::Identity()).norm(), 0, 1e-12);
    EXPECT_NEAR(std::abs(u.determinant() - 1.0), 0, 1e-12);
    EXPECT_NEAR((u - oracle::su2(p.theta, p.x, p.y)).norm(), 0, 1e-14);
  }
}

TEST(Su2, ReductionKeepsMatrix) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_params(gen);
    const auto r = p.reduced();
    EXPECT_GE(r.theta, 0);
    EXPECT_LE(r.theta, kPi);
    EXPECT_GE(r.x, 0);
    EXPECT_LT(r.x, 2 * kPi);
    EXPECT_GE(r.y, 0);
    EXPECT_LT(r.y, 2 * kPi);
    EXPECT_NEAR((su2_matrix(p) - su2_matrix(r)).norm(), 0, 1e-12);
    EXPECT_EQ(r.reduced(), r);
  }
}

TEST(Su2, GradientMatchesFiniteDifference) {
  std::mt19937_64 gen(3);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const auto p = random_params(gen);
    const auto g = su2_gradient(p);
    for (int k = 0; k < 3; ++k) {
      Su2Params lo = p, hi = p;
      double* lo_v[] = {&lo.theta, &lo.x, &lo.y};
      double* hi_v[] = {&hi.theta, &hi.x, &hi.y};
      *lo_v[k] -= h;
      *hi_v[k] += h;
      const Matrix2c fd = (su2_matrix(hi) - su2_matrix(lo)) / (2 * h);
      EXPECT_NEAR((fd - g[k]).norm(), 0, 1e-8);
    }
  }
}

TEST(EncodingSetTest, Validation) {
  const SystemShape shape{2, 2};
  const auto id = ProductEncoding::identity(2);
  EXPECT_TRUE(id.is_identity());
  EXPECT_NO_THROW(EncodingSet(shape, {id}));
  ProductEncoding z{{{0, kPi / 2, 0}, {0, 0, 0}}};
  EXPECT_THROW(EncodingSet(shape, {z}), std::invalid_argument);
  EXPECT_THROW(EncodingSet(shape, {}), std::invalid_argument);
  EXPECT_THROW(EncodingSet(shape, std::vector<ProductEncoding>(9, id)), std::invalid_argument);
  EXPECT_THROW(EncodingSet(shape, {id, ProductEncoding::identity(3)}), std::invalid_argument);
  const EncodingSet set(shape, {id, z, z});
  EXPECT_EQ(set.prefix(2).size(), 2);
}

TEST(PairOverlap, IdentityGivesTrace) {
  for (int m = 1; m <= 3; ++m) {
    const auto rho = reduce_to_senders(sample_haar_state({m, 2}, 5));
    const auto id = ProductEncoding::identity(m);
    EXPECT_NEAR(std::abs(pair_overlap(rho, id, id) - 1.0), 0, 1e-14);
  }
}

TEST(PairOverlap, GghzVanishesAtQuarterTurn) {
  const auto rho = reduce_to_senders(make_gghz(2, 0.3, 0.4));
  std::mt19937_64 gen(4);
  for (int i = 0; i < 100; ++i) {
    auto a = random_encoding(gen, 2);
    a.per_sender[0].theta = kPi / 2;
    EXPECT_NEAR(std::abs(pair_overlap(rho, a, ProductEncoding::identity(2))), 0, 1e-15);
  }
}

TEST(PairOverlap, MatchesFullStateOracle) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 1000; ++i) {
    const int m = 1 + i % 3;
    const auto psi = sample_haar_state({m, 2}, 1000 + i);
    const auto rho = reduce_to_senders(psi);
    const auto a = random_encoding(gen, m);
    const auto b = random_encoding(gen, m);
    const Complex want = oracle::state_overlap(psi.amplitudes(), triples(a), triples(b));
    ASSERT_NEAR(std::abs(pair_overlap(rho, a, b) - want), 0, 1e-12) << i;
  }
}

TEST(PairOverlap, HermitianSymmetryAndBound) {
  std::mt19937_64 gen(6);
  for (int i = 0; i < 1000; ++i) {
    const auto rho = reduce_to_senders(sample_haar_state({2, 2}, 2000 + i));
    const auto a = random_encoding(gen, 2);
    const auto b = random_encoding(gen, 2);
    const Complex ab = pair_overlap(rho, a, b);
    EXPECT_NEAR(std::abs(ab - std::conj(pair_overlap(rho, b, a))), 0, 1e-13);
    EXPECT_LE(std::abs(ab), 1 + 1e-12);
  }
}

// Closed form for gGHZ against the identity:
// (alpha e^{i(x1+x2)} + (1-alpha) e^{-i(x1+x2)}) cos t1 cos t2.
TEST(PairOverlap, GghzClosedForm) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> ua(0, 1);
  for (int i = 0; i < 1000; ++i) {
    const double alpha = ua(gen);
    const auto rho = reduce_to_senders(make_gghz(2, alpha, 2 * kPi * ua(gen)));
    const auto a = random_encoding(gen, 2);
    const double t1 = a.per_sender[0].theta, t2 = a.per_sender[1].theta;
    const double xs = a.per_sender[0].x + a.per_sender[1].x;
    const Complex want = (alpha * std::polar(1.0, xs) + (1 - alpha) * std::polar(1.0, -xs)) *
                         std::cos(t1) * std::cos(t2);
    ASSERT_NEAR(std::abs(pair_overlap(rho, ProductEncoding::identity(2), a) - want), 0, 1e-12);
  }
}

TEST(ProductTrace, EnvironmentIsTheDerivative) {
  std::mt19937_64 gen(8);
  for (int m = 1; m <= 3; ++m) {
    const Mat rho = reduce_to_senders(sample_haar_state({m, 2}, 77)).entries();
    std::vector<Matrix2c> f;
    for (int k = 0; k < m; ++k) f.push_back(oracle::haar_unitary(gen));
    const auto pt = detail::product_trace_with_env(rho, f);
    EXPECT_NEAR(std::abs(pt.value - detail::product_trace(rho, f)), 0, 1e-14);
    // Linear in each factor, so the first-order prediction is exact.
    for (int k = 0; k < m; ++k) {
      const Matrix2c dir = oracle::haar_unitary(gen);
      auto g = f;
      g[k] += dir;
      const Complex lin = detail::product_trace(rho, g) - pt.value;
      Complex pred = 0;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) pred += pt.env[k](r, c) * dir(r, c);
      EXPECT_NEAR(std::abs(lin - pred), 0, 1e-12);
    }
  }
}

TEST(Residuals, PauliSetOnGhz) {
  const auto rho = reduce_to_senders(make_gghz(2, 0.5, 0));
  // iZ, -iX and XZ in the SU(2) parametrization.
  const Su2Params id{0, 0, 0}, z{0, kPi / 2, 0}, x{kPi / 2, 0, kPi / 2}, xz{kPi / 2, 0, 0};
  const EncodingSet set({2, 2}, {{{id, id}}, {{z, id}}, {{x, x}}, {{xz, x}}});
  const Eigen::VectorXd r = residual_vector(rho, set);
  ASSERT_EQ(r.size(), 12);
  EXPECT_LT(r.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Residuals, TrivialAndDuplicate) {
  const auto rho = reduce_to_senders(make_gw(0.2, 0.3));
  EXPECT_EQ(residual_vector(rho, EncodingSet({2, 2}, {ProductEncoding::identity(2)})).size(), 0);
  const ProductEncoding e{{{0.3, 1, 2}, {1.1, 0.2, 0.4}}};
  const auto r = residual_vector(rho, EncodingSet({2, 2}, {ProductEncoding::identity(2), e, e}));
  // Pairs (0,1), (0,2), (1,2): the last one is a duplicate.
  EXPECT_NEAR(r(4), 1, 1e-14);
  EXPECT_NEAR(r(5), 0, 1e-14);
}

TEST(Residuals, ZeroIffGramIsDiagonal) {
  std::mt19937_64 gen(9);
  const auto psi = make_gghz(2, 0.5, 0);
  const auto rho = reduce_to_senders(psi);
  const Su2Params id{0, 0, 0}, z{0, kPi / 2, 0}, x{kPi / 2, 0, kPi / 2}, xz{kPi / 2, 0, 0};
  std::vector<ProductEncoding> encs{{{id, id}}, {{z, id}}, {{x, x}}, {{xz, x}}};
  for (int trial = 0; trial < 20; ++trial) {
    auto e = encs;
    if (trial > 0) e[1 + trial % 3] = random_encoding(gen, 2);
    const EncodingSet set({2, 2}, e);
    Mat states(8, 4);
    for (int i = 0; i < 4; ++i) states.col(i) = encode_state(psi, set[i]);
    const Mat gram = states.adjoint() * states;
    const double off = (gram - Mat(gram.diagonal().asDiagonal())).cwiseAbs().maxCoeff();
    const double res = residual_vector(rho, set).cwiseAbs().maxCoeff();
    EXPECT_EQ(res < 1e-10, off < 1e-10) << trial;
  }
}

}  // namespace
}  // namespace ddcnet
