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

#include "ddcnet/states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "ddcnet/rng.hpp"

namespace ddcnet {

namespace {

constexpr double kNormTol = 1e-12;

int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(fmt::format("{} = {} outside [0, 1]", what, v));
  }
}

Eigen::VectorXcd haar_vector(Eigen::Index n, CounterRng& rng) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

}  // namespace

int SystemShape::sender_dim() const { return ipow(local_dim, num_senders); }
int SystemShape::total_dim() const { return ipow(local_dim, num_senders + 1); }

void SystemShape::validate() const {
  if (local_dim != 2) {
    throw std::invalid_argument(
        fmt::format("local dimension {} unsupported (only qubits)", local_dim));
  }
  if (num_senders < 1 || num_senders > 3) {
    throw std::invalid_argument(
        fmt::format("{} senders unsupported (1 to 3)", num_senders));
  }
}

PureState::PureState(SystemShape shape, Eigen::VectorXcd amplitudes,
                     std::optional<StateLabel> label)
    : shape_(shape), amplitudes_(std::move(amplitudes)), label_(std::move(label)) {
  shape_.validate();
  if (amplitudes_.size() != shape_.total_dim()) {
    throw std::invalid_argument(fmt::format(
        "state has {} amplitudes, shape needs {}", amplitudes_.size(),
        shape_.total_dim()));
  }
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTol)) {
    throw std::invalid_argument(fmt::format("state norm {} is not 1", norm));
  }
}

PureState PureState::normalized(SystemShape shape, Eigen::VectorXcd amplitudes,
                                std::optional<StateLabel> label) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  amplitudes /= norm;
  return PureState(shape, std::move(amplitudes), std::move(label));
}

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries)
    : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw std::invalid_argument("density matrix must be square and non-empty");
  }
  const double herm_err = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (!(herm_err <= kNormTol)) {
    throw std::invalid_argument(
        fmt::format("density matrix not Hermitian (error {})", herm_err));
  }
  const Complex tr = entries_.trace();
  if (!(std::abs(tr - 1.0) <= kNormTol)) {
    throw std::invalid_argument(
        fmt::format("density matrix trace {}+{}i is not 1", tr.real(), tr.imag()));
  }
  const double min_eig = eigenvalues().minCoeff();
  if (min_eig < -1e-10) {
    throw std::invalid_argument(
        fmt::format("density matrix has eigenvalue {}", min_eig));
  }
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double DensityMatrix::purity() const {
  return (entries_ * entries_).trace().real();
}

std::string to_string(SloccClass c) {
  return c == SloccClass::kGhz ? "GHZ_CLASS" : "W_CLASS";
}

PureState make_gghz(int num_senders, double alpha, double mu) {
  if (num_senders != 2 && num_senders != 3) {
    throw std::invalid_argument(
        fmt::format("gGHZ defined here for 2 or 3 senders, got {}", num_senders));
  }
  require_unit_interval(alpha, "alpha");
  const SystemShape shape{num_senders, 2};
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(shape.total_dim());
  amps(0) = std::sqrt(alpha);
  amps(shape.total_dim() - 1) = std::sqrt(1.0 - alpha) * std::polar(1.0, mu);
  return PureState::normalized(shape, std::move(amps),
                               StateLabel{"gghz", {alpha, mu}});
}

PureState make_gw(double alpha, double beta) {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  if (alpha + beta > 1.0 + 1e-12) {
    throw std::invalid_argument(
        fmt::format("alpha + beta = {} exceeds 1", alpha + beta));
  }
  const double gamma = std::max(0.0, 1.0 - alpha - beta);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  amps(0b001) = std::sqrt(alpha);
  amps(0b010) = std::sqrt(beta);
  amps(0b100) = std::sqrt(gamma);
  return PureState::normalized(SystemShape{2, 2}, std::move(amps),
                               StateLabel{"gw", {alpha, beta}});
}

PureState make_ws(double a) {
  require_unit_interval(a, "a");
  const double w = std::sqrt((1.0 - a) / 3.0);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
  amps(0b000) = std::sqrt(a);
  amps(0b001) = w;
  amps(0b010) = w;
  amps(0b100) = w;
  return PureState::normalized(SystemShape{2, 2}, std::move(amps),
                               StateLabel{"ws", {a}});
}

std::vector<int> dicke4_support(int r) {
  if (r != 1 && r != 2) {
    throw std::invalid_argument(fmt::format("Dicke excitation count {} unsupported", r));
  }
  std::vector<int> out;
  // Party p sits at bit (3 - p).
  if (r == 1) {
    for (int p = 0; p < 4; ++p) out.push_back(1 << (3 - p));
  } else {
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) out.push_back((1 << (3 - p)) | (1 << (3 - q)));
    }
  }
  return out;
}

PureState make_dicke4(int r, std::span<const Complex> amplitudes) {
  const std::vector<int> support = dicke4_support(r);
  if (amplitudes.size() != support.size()) {
    throw std::invalid_argument(fmt::format(
        "Dicke r={} needs {} amplitudes, got {}", r, support.size(),
        amplitudes.size()));
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(16);
  for (std::size_t i = 0; i < support.size(); ++i) amps(support[i]) = amplitudes[i];
  if (amps.norm() == 0.0) {
    throw std::invalid_argument("Dicke amplitudes are all zero");
  }
  std::vector<double> params;
  params.push_back(r);
  for (const Complex& c : amplitudes) params.push_back(std::norm(c));
  return PureState::normalized(SystemShape{3, 2}, std::move(amps),
                               StateLabel{r == 1 ? "gw4" : "dicke42", params});
}

PureState sample_haar_state(SystemShape shape, std::uint64_t seed) {
  shape.validate();
  CounterRng rng(stream_key(seed, {0x4a11}));
  return PureState::normalized(shape, haar_vector(shape.total_dim(), rng),
                               StateLabel{"haar", {}});
}

double hyperdeterminant_tangle(const Eigen::VectorXcd& a) {
  if (a.size() != 8) {
    throw std::invalid_argument("three-tangle needs an 8-amplitude state");
  }
  const Complex d1 = a(0) * a(0) * a(7) * a(7) + a(1) * a(1) * a(6) * a(6) +
                     a(2) * a(2) * a(5) * a(5) + a(4) * a(4) * a(3) * a(3);
  const Complex d2 = a(0) * a(7) * a(3) * a(4) + a(0) * a(7) * a(5) * a(2) +
                     a(0) * a(7) * a(6) * a(1) + a(3) * a(4) * a(5) * a(2) +
                     a(3) * a(4) * a(6) * a(1) + a(5) * a(2) * a(6) * a(1);
  const Complex d3 = a(0) * a(6) * a(5) * a(3) + a(7) * a(1) * a(2) * a(4);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

PureState sample_class(SloccClass cls, std::uint64_t seed) {
  const SystemShape shape{2, 2};
  if (cls == SloccClass::kW) {
    CounterRng rng(stream_key(seed, {0x3c1a55, 1}));
    const Eigen::VectorXcd x = haar_vector(4, rng);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(8);
    amps(0b000) = x(0);
    amps(0b100) = x(1);
    amps(0b010) = x(2);
    amps(0b001) = x(3);
    return PureState::normalized(shape, std::move(amps),
                                 StateLabel{"w_class", {}});
  }
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    CounterRng rng(stream_key(seed, {0x3c1a55, 0, attempt}));
    Eigen::VectorXcd amps = haar_vector(8, rng);
    if (hyperdeterminant_tangle(amps) > 1e-8) {
      return PureState::normalized(shape, std::move(amps),
                                   StateLabel{"ghz_class", {}});
    }
  }
  throw std::runtime_error("GHZ-class sampler rejected 100 draws in a row");
}

PureState sample_dicke4(int r, std::uint64_t seed) {
  const std::size_t n = dicke4_support(r).size();
  CounterRng rng(stream_key(seed, {0xd1c4e, static_cast<std::uint64_t>(r)}));
  const Eigen::VectorXcd x = haar_vector(static_cast<Eigen::Index>(n), rng);
  return make_dicke4(r, std::span<const Complex>(x.data(), n));
}

Eigen::MatrixXcd partial_trace(const PureState& state, std::span<const int> keep) {
  const int n = state.shape().num_parties();
  const int d = state.shape().local_dim;
  std::vector<bool> kept(n, false);
  for (int p : keep) {
    if (p < 0 || p >= n || kept[p]) {
      throw std::invalid_argument(fmt::format("invalid party index {}", p));
    }
    kept[p] = true;
  }
  std::vector<int> traced;
  for (int p = 0; p < n; ++p) {
    if (!kept[p]) traced.push_back(p);
  }
  const int keep_dim = ipow(d, static_cast<int>(keep.size()));
  const int env_dim = ipow(d, static_cast<int>(traced.size()));

  // Full index from (kept digits, traced digits). Party p has weight d^(n-1-p).
  auto compose = [&](int k, int e) {
    int idx = 0;
    for (int i = static_cast<int>(keep.size()) - 1; i >= 0; --i) {
      idx += (k % d) * ipow(d, n - 1 - keep[i]);
      k /= d;
    }
    for (int i = static_cast<int>(traced.size()) - 1; i >= 0; --i) {
      idx += (e % d) * ipow(d, n - 1 - traced[i]);
      e /= d;
    }
    return idx;
  };

  // psi reshaped to keep_dim x env_dim, then rho = M M^dagger.
  Eigen::MatrixXcd m(keep_dim, env_dim);
  for (int k = 0; k < keep_dim; ++k) {
    for (int e = 0; e < env_dim; ++e) m(k, e) = state.amplitude(compose(k, e));
  }
  return m * m.adjoint();
}

DensityMatrix reduce_to_senders(const PureState& state) {
  const int d = state.shape().local_dim;
  const int ds = state.shape().sender_dim();
  // The receiver is the fastest index: psi(s * d + r).
  const Eigen::Map<const Eigen::MatrixXcd> m(state.amplitudes().data(), d, ds);
  Eigen::MatrixXcd rho = m.transpose() * m.conjugate();
  // Exact Hermitian symmetrization removes rounding asymmetry.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

}  // namespace ddcnet
