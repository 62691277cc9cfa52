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

#ifndef DDCNET_STATES_HPP_
#define DDCNET_STATES_HPP_

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ddcnet {

using Complex = std::complex<double>;

/// M senders and one receiver, each holding a d-level system.
///
/// Parties are ordered (S_1, ..., S_M, R). Amplitude indices follow the usual
/// Kronecker ordering: S_1 is the most significant digit and the receiver is
/// the fastest-varying one, so tracing out R sums contiguous blocks of d.
struct SystemShape {
  int num_senders = 2;
  int local_dim = 2;

  int num_parties() const { return num_senders + 1; }
  /// d^M, the senders' joint dimension and the classical alphabet limit.
  int sender_dim() const;
  /// d^(M+1), the full Hilbert-space dimension and the quantum alphabet limit.
  int total_dim() const;

  /// Throws std::invalid_argument unless M in {1, 2, 3} and d == 2.
  void validate() const;

  friend bool operator==(const SystemShape&, const SystemShape&) = default;
};

/// Family tag and the parameters the state was built from.
struct StateLabel {
  std::string family;
  std::vector<double> params;
};

/// Normalized pure state of the M+1 parties.
class PureState {
 public:
  /// Validates length d^(M+1) and unit norm within 1e-12.
  PureState(SystemShape shape, Eigen::VectorXcd amplitudes,
            std::optional<StateLabel> label = std::nullopt);

  /// Rescales `amplitudes` to unit norm first. Rejects the zero vector.
  static PureState normalized(SystemShape shape, Eigen::VectorXcd amplitudes,
                              std::optional<StateLabel> label = std::nullopt);

  const SystemShape& shape() const { return shape_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  const std::optional<StateLabel>& label() const { return label_; }
  Complex amplitude(Eigen::Index i) const { return amplitudes_(i); }

 private:
  SystemShape shape_;
  Eigen::VectorXcd amplitudes_;
  std::optional<StateLabel> label_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Checks Hermiticity and trace within 1e-12 and eigenvalues >= -1e-10.
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  Eigen::Index dim() const { return entries_.rows(); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Complex operator()(Eigen::Index r, Eigen::Index c) const {
    return entries_(r, c);
  }

  /// Eigenvalues in ascending order.
  Eigen::VectorXd eigenvalues() const;
  double purity() const;

 private:
  Eigen::MatrixXcd entries_;
};

enum class SloccClass { kGhz, kW };

std::string to_string(SloccClass c);

PureState make_gghz(int num_senders, double alpha, double mu);
PureState make_gw(double alpha, double beta);
/// sqrt(1-a)|W> + sqrt(a)|000>, renormalized.
PureState make_ws(double a);
/// Sum over placements of r excitations among four qubits (S_1 S_2 S_3 R).
///
/// Placements are ordered lexicographically by the excited party positions,
/// party 0 being S_1: for r = 1 the order is |1000>, |0100>, |0010>, |0001>;
/// for r = 2 it is |1100>, |1010>, |1001>, |0110>, |0101>, |0011>.
PureState make_dicke4(int r, std::span<const Complex> amplitudes);
/// Basis indices (in the order above) of the C(4, r) Dicke placements.
std::vector<int> dicke4_support(int r);

PureState sample_haar_state(SystemShape shape, std::uint64_t seed);
/// Three-qubit state drawn from the given SLOCC class.
///
/// GHZ class: Haar-uniform ambient state, rejected while |three-tangle| <= 1e-8.
/// W class: x0|000> + x1|100> + x2|010> + x3|001> with (x0..x3) Haar-uniform
/// on the unit sphere of C^4.
PureState sample_class(SloccClass cls, std::uint64_t seed);
/// Dicke-family state with Haar-uniform placement amplitudes.
PureState sample_dicke4(int r, std::uint64_t seed);

/// Three-tangle 4|hyperdet(a)| of a three-qubit amplitude vector.
double hyperdeterminant_tangle(const Eigen::VectorXcd& amplitudes);

/// tr_R |psi><psi|, a d^M x d^M matrix.
DensityMatrix reduce_to_senders(const PureState& state);

/// Reduced density matrix of `keep` (party indices, ascending order kept in
/// the output's Kronecker ordering), tracing out every other party.
Eigen::MatrixXcd partial_trace(const PureState& state, std::span<const int> keep);

}  // namespace ddcnet

#endif  // DDCNET_STATES_HPP_
