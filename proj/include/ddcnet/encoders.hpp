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

#ifndef DDCNET_ENCODERS_HPP_
#define DDCNET_ENCODERS_HPP_

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ddcnet/states.hpp"

namespace ddcnet {

using Matrix2c = Eigen::Matrix2cd;

/// Angles of one SU(2) element
///   [[cos t e^{ix}, -sin t e^{iy}], [sin t e^{-iy}, cos t e^{-ix}]].
struct Su2Params {
  double theta = 0.0;
  double x = 0.0;
  double y = 0.0;

  /// Same matrix with theta in [0, pi] and x, y in [0, 2 pi).
  ///
  /// Uses U(t + pi, x, y) = U(t, x + pi, y + pi) and U(-t, x, y) = U(t, x, y + pi).
  Su2Params reduced() const;

  friend bool operator==(const Su2Params&, const Su2Params&) = default;
};

Matrix2c su2_matrix(const Su2Params& p);

/// Derivatives of su2_matrix with respect to theta, x and y.
std::array<Matrix2c, 3> su2_gradient(const Su2Params& p);

/// One local unitary per sender, applied jointly for one message.
struct ProductEncoding {
  std::vector<Su2Params> per_sender;

  static ProductEncoding identity(int num_senders);
  bool is_identity() const;
  int num_senders() const { return static_cast<int>(per_sender.size()); }

  friend bool operator==(const ProductEncoding&, const ProductEncoding&) = default;
};

/// Ordered encodings for an alphabet of size N; entry 0 is the identity.
class EncodingSet {
 public:
  /// Validates 1 <= N <= d^(M+1), per-encoding sender count, and that entry 0
  /// is the identity. Angles are stored reduced.
  EncodingSet(SystemShape shape, std::vector<ProductEncoding> encodings);

  const SystemShape& shape() const { return shape_; }
  const std::vector<ProductEncoding>& encodings() const { return encodings_; }
  const ProductEncoding& operator[](std::size_t i) const { return encodings_[i]; }
  int size() const { return static_cast<int>(encodings_.size()); }

  /// First n encodings (n >= 1).
  EncodingSet prefix(int n) const;

 private:
  SystemShape shape_;
  std::vector<ProductEncoding> encodings_;
};

/// <psi_a|psi_b> = tr(rho (⊗_k U_a^k)^dagger (⊗_k U_b^k)) for the encoded
/// states |psi_e> = (⊗_k U_e^k ⊗ I)|psi>.
///
/// Contracts the per-sender products W_k = (U_a^k)^dagger U_b^k against rho
/// without forming the d^M x d^M unitaries.
Complex pair_overlap(const DensityMatrix& rho, const ProductEncoding& a,
                     const ProductEncoding& b);

/// Re and Im of pair_overlap for each pair i < j, in lexicographic pair order.
Eigen::VectorXd residual_vector(const DensityMatrix& rho, const EncodingSet& set);

/// Full encoded state (⊗_k U^k ⊗ I)|psi>.
Eigen::VectorXcd encode_state(const PureState& state, const ProductEncoding& enc);

namespace detail {

inline constexpr int kMaxSenders = 3;

/// tr(rho · ⊗_k factors[k]) together with its derivative with respect to
/// each factor entry: env[k](c, r) = d tr / d factors[k](c, r).
struct ProductTrace {
  Complex value;
  std::array<Matrix2c, kMaxSenders> env;
};

/// `rho` must be 2^M x 2^M with M = factors.size().
Complex product_trace(const Eigen::MatrixXcd& rho, std::span<const Matrix2c> factors);
ProductTrace product_trace_with_env(const Eigen::MatrixXcd& rho,
                                    std::span<const Matrix2c> factors);

}  // namespace detail

}  // namespace ddcnet

#endif  // DDCNET_ENCODERS_HPP_
