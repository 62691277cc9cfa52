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

#include "ddcnet/encoders.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace ddcnet {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_two_pi(double v) {
  double r = std::fmod(v, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod can return exactly 2 pi after the correction above for tiny negatives.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

int digit(int index, int party, int num_parties) {
  return (index >> (num_parties - 1 - party)) & 1;
}

std::vector<Matrix2c> pair_factors(const ProductEncoding& a,
                                   const ProductEncoding& b) {
  std::vector<Matrix2c> w;
  w.reserve(a.per_sender.size());
  for (std::size_t k = 0; k < a.per_sender.size(); ++k) {
    w.push_back(su2_matrix(a.per_sender[k]).adjoint() * su2_matrix(b.per_sender[k]));
  }
  return w;
}

}  // namespace

Su2Params Su2Params::reduced() const {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  double nx = x;
  double ny = y;
  if (t > std::numbers::pi) {
    t -= std::numbers::pi;
    nx += std::numbers::pi;
    ny += std::numbers::pi;
  }
  return Su2Params{t, wrap_two_pi(nx), wrap_two_pi(ny)};
}

Matrix2c su2_matrix(const Su2Params& p) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const Complex ex = std::polar(1.0, p.x);
  const Complex ey = std::polar(1.0, p.y);
  Matrix2c u;
  u << c * ex, -s * ey, s * std::conj(ey), c * std::conj(ex);
  return u;
}

std::array<Matrix2c, 3> su2_gradient(const Su2Params& p) {
  const double c = std::cos(p.theta);
  const double s = std::sin(p.theta);
  const Complex ex = std::polar(1.0, p.x);
  const Complex ey = std::polar(1.0, p.y);
  const Complex i(0.0, 1.0);
  std::array<Matrix2c, 3> g;
  g[0] << -s * ex, -c * ey, c * std::conj(ey), -s * std::conj(ex);
  g[1] << i * c * ex, 0.0, 0.0, -i * c * std::conj(ex);
  g[2] << 0.0, -i * s * ey, -i * s * std::conj(ey), 0.0;
  return g;
}

ProductEncoding ProductEncoding::identity(int num_senders) {
  return ProductEncoding{std::vector<Su2Params>(num_senders)};
}

bool ProductEncoding::is_identity() const {
  for (const Su2Params& p : per_sender) {
    if (p.theta != 0.0 || p.x != 0.0 || p.y != 0.0) return false;
  }
  return true;
}

EncodingSet::EncodingSet(SystemShape shape, std::vector<ProductEncoding> encodings)
    : shape_(shape), encodings_(std::move(encodings)) {
  shape_.validate();
  const int n = static_cast<int>(encodings_.size());
  if (n < 1 || n > shape_.total_dim()) {
    throw std::invalid_argument(fmt::format(
        "encoding set size {} outside [1, {}]", n, shape_.total_dim()));
  }
  for (ProductEncoding& e : encodings_) {
    if (e.num_senders() != shape_.num_senders) {
      throw std::invalid_argument(fmt::format(
          "encoding has {} senders, shape has {}", e.num_senders(),
          shape_.num_senders));
    }
    for (Su2Params& p : e.per_sender) p = p.reduced();
  }
  if (!encodings_.front().is_identity()) {
    throw std::invalid_argument("first encoding must be the identity");
  }
}

EncodingSet EncodingSet::prefix(int n) const {
  if (n < 1 || n > size()) {
    throw std::invalid_argument(fmt::format("prefix length {} out of range", n));
  }
  return EncodingSet(shape_, {encodings_.begin(), encodings_.begin() + n});
}

namespace detail {

Complex product_trace(const Eigen::MatrixXcd& rho,
                      std::span<const Matrix2c> factors) {
  const int m = static_cast<int>(factors.size());
  const int dim = 1 << m;
  Complex total = 0.0;
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      Complex prod = rho(r, c);
      for (int k = 0; k < m; ++k) {
        prod *= factors[k](digit(c, k, m), digit(r, k, m));
      }
      total += prod;
    }
  }
  return total;
}

ProductTrace product_trace_with_env(const Eigen::MatrixXcd& rho,
                                    std::span<const Matrix2c> factors) {
  const int m = static_cast<int>(factors.size());
  const int dim = 1 << m;
  ProductTrace out;
  out.value = 0.0;
  for (int k = 0; k < m; ++k) out.env[k].setZero();
  std::array<Complex, kMaxSenders> w{};
  std::array<Complex, kMaxSenders + 1> prefix{};
  std::array<Complex, kMaxSenders + 1> suffix{};
  for (int c = 0; c < dim; ++c) {
    for (int r = 0; r < dim; ++r) {
      const Complex rc = rho(r, c);
      for (int k = 0; k < m; ++k) w[k] = factors[k](digit(c, k, m), digit(r, k, m));
      prefix[0] = rc;
      for (int k = 0; k < m; ++k) prefix[k + 1] = prefix[k] * w[k];
      suffix[m] = 1.0;
      for (int k = m - 1; k >= 0; --k) suffix[k] = suffix[k + 1] * w[k];
      out.value += prefix[m];
      for (int k = 0; k < m; ++k) {
        out.env[k](digit(c, k, m), digit(r, k, m)) += prefix[k] * suffix[k + 1];
      }
    }
  }
  return out;
}

}  // namespace detail

Complex pair_overlap(const DensityMatrix& rho, const ProductEncoding& a,
                     const ProductEncoding& b) {
  if (a.num_senders() != b.num_senders()) {
    throw std::invalid_argument("encodings have different sender counts");
  }
  if (rho.dim() != (Eigen::Index{1} << a.num_senders())) {
    throw std::invalid_argument(fmt::format(
        "density matrix dimension {} does not match {} senders", rho.dim(),
        a.num_senders()));
  }
  const std::vector<Matrix2c> w = pair_factors(a, b);
  return detail::product_trace(rho.entries(), w);
}

Eigen::VectorXd residual_vector(const DensityMatrix& rho, const EncodingSet& set) {
  const int n = set.size();
  Eigen::VectorXd out(static_cast<Eigen::Index>(n) * (n - 1));
  Eigen::Index row = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Complex o = pair_overlap(rho, set[i], set[j]);
      out(row++) = o.real();
      out(row++) = o.imag();
    }
  }
  return out;
}

Eigen::VectorXcd encode_state(const PureState& state, const ProductEncoding& enc) {
  const int m = state.shape().num_senders;
  if (enc.num_senders() != m) {
    throw std::invalid_argument("encoding does not match the state's senders");
  }
  const int n = m + 1;
  const int dim = state.shape().total_dim();
  std::vector<Matrix2c> u;
  for (const Su2Params& p : enc.per_sender) u.push_back(su2_matrix(p));
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
  // (⊗U ⊗ I)(row, col) is nonzero only when the receiver digits agree.
  for (int row = 0; row < dim; ++row) {
    for (int col = 0; col < dim; ++col) {
      if ((row & 1) != (col & 1)) continue;
      Complex coef = 1.0;
      for (int k = 0; k < m; ++k) coef *= u[k](digit(row, k, n), digit(col, k, n));
      out(row) += coef * state.amplitude(col);
    }
  }
  return out;
}

}  // namespace ddcnet
