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

#include <bit>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "ddcnet/measures.hpp"
#include "ddcnet/states.hpp"
#include "oracles.hpp"

namespace ddcnet {
namespace {

using oracle::Mat;

constexpr double kPi = std::numbers::pi;

TEST(Shape, DimensionsAndLimits) {
  SystemShape s{3, 2};
  EXPECT_EQ(s.sender_dim(), 8);
  EXPECT_EQ(s.total_dim(), 16);
  EXPECT_EQ(s.num_parties(), 4);
  EXPECT_THROW((SystemShape{4, 2}.validate()), std::invalid_argument);
  EXPECT_THROW((SystemShape{2, 3}.validate()), std::invalid_argument);
  EXPECT_THROW((SystemShape{0, 2}.validate()), std::invalid_argument);
}

TEST(PureStateTest, RejectsBadInput) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(8);
  v(0) = 1.1;
  EXPECT_THROW(PureState(SystemShape{}, v), std::invalid_argument);
  EXPECT_THROW(PureState(SystemShape{}, Eigen::VectorXcd::Zero(4)), std::invalid_argument);
  EXPECT_THROW(PureState::normalized(SystemShape{}, Eigen::VectorXcd::Zero(8)),
               std::invalid_argument);
  EXPECT_NEAR(PureState::normalized(SystemShape{}, v).amplitudes().norm(), 1.0, 1e-15);
}

TEST(DensityMatrixTest, ChecksInvariants) {
  Mat m = Mat::Identity(2, 2) / 2.0;
  EXPECT_NO_THROW(DensityMatrix{m});
  Mat bad = m;
  bad(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{bad}, std::invalid_argument);
  EXPECT_THROW(DensityMatrix{Mat::Identity(2, 2)}, std::invalid_argument);
  Mat neg = Mat::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{neg}, std::invalid_argument);
}

TEST(Gghz, GhzAtHalf) {
  const auto s = make_gghz(2, 0.5, 0.0);
  EXPECT_NEAR(std::abs(s.amplitude(0) - std::sqrt(0.5)), 0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(7) - std::sqrt(0.5)), 0, 1e-15);
  EXPECT_NEAR(s.amplitudes().segment(1, 6).norm(), 0, 1e-15);
}

TEST(Gghz, ProductEndpoint) {
  const auto s = make_gghz(2, 1.0, 0.0);
  EXPECT_NEAR(s.amplitudes().norm(), 1, 1e-12);
  EXPECT_NEAR(std::abs(s.amplitude(0)), 1, 1e-15);
  EXPECT_NEAR(ggm(s), 0, 1e-12);
}

TEST(Gghz, PhaseAndMarginal) {
  const auto s = make_gghz(2, 0.3, kPi / 4);
  EXPECT_NEAR(std::abs(s.amplitude(0) - std::sqrt(0.3)), 0, 1e-15);
  EXPECT_NEAR(std::abs(s.amplitude(7) - std::sqrt(0.7) * std::polar(1.0, kPi / 4)), 0, 1e-15);
  const Mat rho = oracle::reduced(s.amplitudes(), 3, {0, 1});
  Mat want = Mat::Zero(4, 4);
  want(0, 0) = 0.3;
  want(3, 3) = 0.7;
  EXPECT_NEAR((rho - want).norm(), 0, 1e-14);
  EXPECT_NEAR((reduce_to_senders(s).entries() - want).norm(), 0, 1e-14);
}

TEST(Gghz, FourQubitAndErrors) {
  const auto s = make_gghz(3, 0.5, 0.0);
  EXPECT_EQ(s.amplitudes().size(), 16);
  EXPECT_NEAR(std::abs(s.amplitude(15)), std::sqrt(0.5), 1e-15);
  EXPECT_THROW(make_gghz(2, 1.2, 0), std::invalid_argument);
  EXPECT_THROW(make_gghz(2, -0.1, 0), std::invalid_argument);
  EXPECT_THROW(make_gghz(1, 0.5, 0), std::invalid_argument);
}

TEST(Gw, WStateAndVertex) {
  const auto w = make_gw(1.0 / 3, 1.0 / 3);
  for (int i : {1, 2, 4}) EXPECT_NEAR(std::abs(w.amplitude(i)), 1 / std::sqrt(3.0), 1e-15);
  const auto v = make_gw(1.0, 0.0);
  EXPECT_NEAR(std::abs(v.amplitude(0b001)), 1, 1e-15);
  EXPECT_THROW(make_gw(0.7, 0.4), std::invalid_argument);
  EXPECT_NO_THROW(make_gw(0.5, 0.5 + 1e-13));
}

// The quoted {0.5, 0.25, 0.25, 0} is the diagonal of rho_S in the
// computational basis; its spectrum is {0.5, 0.5, 0, 0}.
TEST(Gw, SenderMarginalAtHalfQuarter) {
  const auto s = make_gw(0.5, 0.25);
  const Mat rho = oracle::reduced(s.amplitudes(), 3, {0, 1});
  const auto got = reduce_to_senders(s);
  EXPECT_NEAR((got.entries() - rho).norm(), 0, 1e-14);
  const double diag[] = {0.5, 0.25, 0.25, 0.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(got(i, i).real(), diag[i], 1e-14);
  const Eigen::VectorXd ev = got.eigenvalues();
  EXPECT_NEAR(ev(0), 0, 1e-12);
  EXPECT_NEAR(ev(1), 0, 1e-12);
  EXPECT_NEAR(ev(2), 0.5, 1e-12);
  EXPECT_NEAR(ev(3), 0.5, 1e-12);
}

TEST(Ws, Endpoints) {
  const auto w = make_gw(1.0 / 3, 1.0 / 3);
  EXPECT_NEAR((make_ws(0).amplitudes() - w.amplitudes()).norm(), 0, 1e-15);
  EXPECT_NEAR(std::abs(make_ws(1).amplitude(0)), 1, 1e-15);
  const auto s = make_ws(0.02);
  EXPECT_NEAR(s.amplitudes().norm(), 1, 1e-12);
  EXPECT_NEAR(std::abs(s.amplitude(0)), std::sqrt(0.02), 1e-15);
  EXPECT_THROW(make_ws(1.5), std::invalid_argument);
}

TEST(Dicke, SymmetricAndVertex) {
  const std::vector<Complex> eq(6, 1.0);
  const auto d = make_dicke4(2, eq);
  for (int i = 0; i < 16; ++i) {
    const double want = std::popcount(static_cast<unsigned>(i)) == 2 ? 1 / std::sqrt(6.0) : 0.0;
    EXPECT_NEAR(std::abs(d.amplitude(i)), want, 1e-15) << i;
  }
  const std::vector<Complex> vertex{1, 0, 0, 0};
  EXPECT_NEAR(std::abs(make_dicke4(1, vertex).amplitude(0b1000)), 1, 1e-15);
  EXPECT_THROW(make_dicke4(2, vertex), std::invalid_argument);
  EXPECT_THROW(make_dicke4(2, std::vector<Complex>(6, 0.0)), std::invalid_argument);
  EXPECT_THROW(make_dicke4(3, std::vector<Complex>(4, 1.0)), std::invalid_argument);
}

TEST(Dicke, RandomSupportIsWeightTwo) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = sample_dicke4(2, seed);
    for (int i = 0; i < 16; ++i) {
      if (std::popcount(static_cast<unsigned>(i)) != 2) EXPECT_EQ(s.amplitude(i), Complex(0));
    }
    EXPECT_NEAR(s.amplitudes().norm(), 1, 1e-12);
  }
  EXPECT_EQ(dicke4_support(1), (std::vector<int>{8, 4, 2, 1}));
}

TEST(Haar, DeterministicAndNormalized) {
  const SystemShape shape{2, 2};
  EXPECT_EQ(sample_haar_state(shape, 11).amplitudes(), sample_haar_state(shape, 11).amplitudes());
  EXPECT_NE(sample_haar_state(shape, 11).amplitudes(), sample_haar_state(shape, 12).amplitudes());
  for (std::uint64_t s = 0; s < 50; ++s) {
    EXPECT_NEAR(sample_haar_state(shape, s).amplitudes().norm(), 1, 1e-12);
  }
}

// Each |a_i|^2 is Beta(1, D-1): mean 1/D, variance (D-1)/(D^2 (D+1)).
TEST(Haar, FirstMomentMatchesSphere) {
  const SystemShape shape{2, 2};
  const int n = 10000, dim = 8;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
  for (int s = 0; s < n; ++s) {
    mean += sample_haar_state(shape, s).amplitudes().cwiseAbs2() / n;
  }
  const double sigma = std::sqrt((dim - 1.0) / (dim * dim * (dim + 1.0)) / n);
  for (int i = 0; i < dim; ++i) EXPECT_NEAR(mean(i), 1.0 / dim, 5 * sigma) << i;
}

TEST(ClassSampler, TangleSeparatesClasses) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto w = sample_class(SloccClass::kW, s);
    const auto g = sample_class(SloccClass::kGhz, s);
    EXPECT_LT(oracle::tangle_epsilon(w.amplitudes()), 1e-8);
    EXPECT_GT(oracle::tangle_epsilon(g.amplitudes()), 1e-8);
    EXPECT_NEAR(hyperdeterminant_tangle(g.amplitudes()),
                oracle::tangle_epsilon(g.amplitudes()), 1e-12);
  }
  EXPECT_EQ(sample_class(SloccClass::kW, 5).amplitudes(),
            sample_class(SloccClass::kW, 5).amplitudes());
  EXPECT_EQ(to_string(SloccClass::kGhz), "GHZ_CLASS");
}

TEST(Reduce, KnownMarginals) {
  const auto ghz = reduce_to_senders(make_gghz(2, 0.5, 0));
  Mat want = Mat::Zero(4, 4);
  want(0, 0) = want(3, 3) = 0.5;
  EXPECT_NEAR((ghz.entries() - want).norm(), 0, 1e-15);
  EXPECT_NEAR(ghz.purity(), 0.5, 1e-10);

  const auto prod = reduce_to_senders(make_gghz(2, 1.0, 0));
  EXPECT_NEAR(std::abs(prod(0, 0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(prod.purity(), 1.0, 1e-10);

  const Eigen::VectorXd ev = reduce_to_senders(make_gw(1.0 / 3, 1.0 / 3)).eigenvalues();
  EXPECT_NEAR(ev(3), 2.0 / 3, 1e-12);
  EXPECT_NEAR(ev(2), 1.0 / 3, 1e-12);
  EXPECT_NEAR(ev(1), 0, 1e-12);
}

TEST(Reduce, MatchesBruteForceOnRandomStates) {
  for (int m = 1; m <= 3; ++m) {
    const SystemShape shape{m, 2};
    for (std::uint64_t s = 0; s < 1000 / m; ++s) {
      const auto psi = sample_haar_state(shape, s);
      std::vector<int> senders;
      for (int k = 0; k < m; ++k) senders.push_back(k);
      const auto rho = reduce_to_senders(psi);
      ASSERT_NEAR((rho.entries() - oracle::reduced(psi.amplitudes(), m + 1, senders)).norm(),
                  0, 1e-13);
      EXPECT_NEAR(rho.entries().trace().real(), 1, 1e-12);
      EXPECT_NEAR((rho.entries() - rho.entries().adjoint()).norm(), 0, 1e-14);
    }
  }
}

TEST(PartialTrace, ArbitraryKeepSets) {
  const auto psi = sample_haar_state(SystemShape{3, 2}, 99);
  for (const std::vector<int>& keep :
       {std::vector<int>{0}, {3}, {1, 3}, {0, 2}, {0, 1, 3}, {2}}) {
    EXPECT_NEAR((partial_trace(psi, keep) - oracle::reduced(psi.amplitudes(), 4, keep)).norm(),
                0, 1e-13);
  }
  const std::vector<int> dup{1, 1};
  EXPECT_THROW(partial_trace(psi, dup), std::invalid_argument);
}

}  // namespace
}  // namespace ddcnet
