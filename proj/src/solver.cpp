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

#include "ddcnet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>

#include <fmt/format.h>

#include "ddcnet/parallel.hpp"
#include "ddcnet/rng.hpp"

namespace ddcnet {

namespace {

constexpr std::uint64_t kPlainSearchTag = 0x5ca7;
constexpr int kStagnationWindow = 25;
constexpr double kStagnationDecrease = 1e-12;

/// Residuals r(x) and Jacobian for one search template.
class OrthogonalityObjective {
 public:
  OrthogonalityObjective(const Eigen::MatrixXcd& rho, const SearchTemplate& tmpl)
      : rho_(rho),
        tmpl_(tmpl),
        senders_(tmpl.shape.num_senders),
        n_(tmpl.size()) {
    column_.assign(static_cast<std::size_t>(n_) * senders_, {-1, -1, -1});
    int col = 0;
    for (int e = 0; e < n_; ++e) {
      for (int k = 0; k < senders_; ++k) {
        for (int q = 0; q < 3; ++q) {
          if (tmpl_.free[e * senders_ + k][q]) column_[e * senders_ + k][q] = col++;
        }
      }
    }
    unknowns_ = col;
    u_.resize(column_.size());
    du_.resize(column_.size());
    params_.resize(column_.size());
  }

  int unknowns() const { return unknowns_; }
  int residuals() const { return n_ * (n_ - 1); }

  std::vector<Su2Params> unpack(const Eigen::VectorXd& x) const {
    std::vector<Su2Params> p(column_.size());
    unpack_into(x, p);
    return p;
  }

  void unpack_into(const Eigen::VectorXd& x, std::vector<Su2Params>& p) const {
    for (int e = 0; e < n_; ++e) {
      for (int k = 0; k < senders_; ++k) {
        Su2Params& s = p[e * senders_ + k];
        s = tmpl_.start[e].per_sender[k];
        const auto& col = column_[e * senders_ + k];
        if (col[0] >= 0) s.theta = x(col[0]);
        if (col[1] >= 0) s.x = x(col[1]);
        if (col[2] >= 0) s.y = x(col[2]);
      }
    }
  }

  Eigen::VectorXd random_start(CounterRng& rng) const {
    Eigen::VectorXd x(unknowns_);
    for (const auto& col : column_) {
      if (col[0] >= 0) x(col[0]) = rng.uniform(0.0, std::numbers::pi);
      if (col[1] >= 0) x(col[1]) = rng.uniform(0.0, 2.0 * std::numbers::pi);
      if (col[2] >= 0) x(col[2]) = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    return x;
  }

  void evaluate(const Eigen::VectorXd& x, Eigen::VectorXd& r,
                Eigen::MatrixXd* jac) {
    unpack_into(x, params_);
    for (std::size_t s = 0; s < params_.size(); ++s) {
      u_[s] = su2_matrix(params_[s]);
      if (jac != nullptr) du_[s] = su2_gradient(params_[s]);
    }
    r.resize(residuals());
    if (jac != nullptr) jac->setZero(residuals(), unknowns_);
    std::array<Matrix2c, detail::kMaxSenders> w_storage;
    const std::span<Matrix2c> w(w_storage.data(), senders_);
    Eigen::Index row = 0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j, row += 2) {
        for (int k = 0; k < senders_; ++k) {
          w[k] = u_[i * senders_ + k].adjoint() * u_[j * senders_ + k];
        }
        if (jac == nullptr) {
          const Complex o = detail::product_trace(rho_, std::span<const Matrix2c>(w));
          r(row) = o.real();
          r(row + 1) = o.imag();
          continue;
        }
        const detail::ProductTrace pt = detail::product_trace_with_env(rho_, std::span<const Matrix2c>(w));
        r(row) = pt.value.real();
        r(row + 1) = pt.value.imag();
        for (int k = 0; k < senders_; ++k) {
          const std::size_t si = i * senders_ + k;
          const std::size_t sj = j * senders_ + k;
          const Matrix2c& env = pt.env[k];
          for (int q = 0; q < 3; ++q) {
            if (const int c = column_[si][q]; c >= 0) {
              const Complex d =
                  env.cwiseProduct(du_[si][q].adjoint() * u_[sj]).sum();
              (*jac)(row, c) += d.real();
              (*jac)(row + 1, c) += d.imag();
            }
            if (const int c = column_[sj][q]; c >= 0) {
              const Complex d =
                  env.cwiseProduct(u_[si].adjoint() * du_[sj][q]).sum();
              (*jac)(row, c) += d.real();
              (*jac)(row + 1, c) += d.imag();
            }
          }
        }
      }
    }
  }

  EncodingSet to_set(const Eigen::VectorXd& x) const {
    const std::vector<Su2Params> p = unpack(x);
    std::vector<ProductEncoding> enc(n_);
    for (int e = 0; e < n_; ++e) {
      enc[e].per_sender.assign(p.begin() + e * senders_,
                               p.begin() + (e + 1) * senders_);
    }
    return EncodingSet(tmpl_.shape, std::move(enc));
  }

 private:
  const Eigen::MatrixXcd& rho_;
  const SearchTemplate& tmpl_;
  int senders_;
  int n_;
  int unknowns_ = 0;
  std::vector<std::array<int, 3>> column_;
  std::vector<Su2Params> params_;
  std::vector<Matrix2c> u_;
  std::vector<std::array<Matrix2c, 3>> du_;
};

double max_pair_magnitude(const Eigen::VectorXd& r) {
  double m = 0.0;
  for (Eigen::Index i = 0; i + 1 < r.size(); i += 2) {
    m = std::max(m, std::hypot(r(i), r(i + 1)));
  }
  return m;
}

struct LmOutcome {
  Eigen::VectorXd x;
  double max_abs = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

/// Levenberg-Marquardt with Nielsen's damping update.
LmOutcome levenberg_marquardt(OrthogonalityObjective& obj, Eigen::VectorXd x,
                              const SolverConfig& cfg) {
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  obj.evaluate(x, r, &jac);
  double cost = 0.5 * r.squaredNorm();
  Eigen::MatrixXd a = jac.transpose() * jac;
  Eigen::VectorXd g = jac.transpose() * r;
  double mu = 1e-3 * std::max(a.diagonal().maxCoeff(), 1e-12);
  double nu = 2.0;

  std::vector<double> history;
  history.reserve(cfg.max_iterations + 1);
  history.push_back(r.norm());

  Eigen::VectorXd r_new;
  Eigen::MatrixXd damped;
  LmOutcome out;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    if (max_pair_magnitude(r) < cfg.polish_tolerance) break;
    if (g.lpNorm<Eigen::Infinity>() < 1e-15) break;
    damped = a;
    damped.diagonal().array() += mu;
    const Eigen::VectorXd h = damped.llt().solve(-g);
    if (!h.allFinite()) break;
    if (h.norm() <= 1e-15 * (x.norm() + 1e-15)) break;
    const Eigen::VectorXd x_new = x + h;
    obj.evaluate(x_new, r_new, nullptr);
    const double cost_new = 0.5 * r_new.squaredNorm();
    const double predicted = 0.5 * h.dot(mu * h - g);
    const double gain = predicted > 0.0 ? (cost - cost_new) / predicted : -1.0;
    if (gain > 0.0) {
      x = x_new;
      obj.evaluate(x, r, &jac);
      cost = 0.5 * r.squaredNorm();
      a.noalias() = jac.transpose() * jac;
      g.noalias() = jac.transpose() * r;
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * gain - 1.0, 3));
      nu = 2.0;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (!std::isfinite(mu)) break;
    }
    history.push_back(r.norm());
    const std::size_t k = history.size() - 1;
    if (k >= kStagnationWindow &&
        history[k - kStagnationWindow] - history[k] <
            std::max(kStagnationDecrease, cfg.plateau_relative * history[k])) {
      break;
    }
  }
  out.x = std::move(x);
  out.max_abs = max_pair_magnitude(r);
  out.iterations = it;
  return out;
}

int log2_exact(Eigen::Index v) {
  int m = 0;
  while ((Eigen::Index{1} << m) < v) ++m;
  return (Eigen::Index{1} << m) == v ? m : -1;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(polish_tolerance > 0.0)) {
    throw std::invalid_argument("polish tolerance must be > 0");
  }
}

std::string to_string(Feasibility f) {
  return f == Feasibility::kFeasible ? "FEASIBLE" : "INFEASIBLE";
}

std::string to_string(ConjectureFinding f) {
  switch (f) {
    case ConjectureFinding::kNone:
      return "none";
    case ConjectureFinding::kSubsetOfFullBasis:
      return "subset-of-full-basis";
    case ConjectureFinding::kCounterexampleCandidate:
      return "counterexample-candidate";
  }
  return "unknown";
}

int SearchTemplate::num_unknowns() const {
  int c = 0;
  for (const auto& f : free) c += f[0] + f[1] + f[2];
  return c;
}

SearchTemplate SearchTemplate::all_free(SystemShape shape, int n) {
  SearchTemplate t;
  t.shape = shape;
  t.start.assign(n, ProductEncoding::identity(shape.num_senders));
  t.free.assign(static_cast<std::size_t>(n) * shape.num_senders, {true, true, true});
  for (int k = 0; k < shape.num_senders; ++k) t.free[k] = {false, false, false};
  return t;
}

int senders_of(const DensityMatrix& rho) {
  const int m = log2_exact(rho.dim());
  if (m < 1 || m > 3) {
    throw std::invalid_argument(fmt::format(
        "density matrix dimension {} is not 2^M with M in 1..3", rho.dim()));
  }
  return m;
}

FeasibilityResult solve_template(const DensityMatrix& rho,
                                 const SearchTemplate& tmpl,
                                 const SolverConfig& cfg,
                                 std::uint64_t stream_tag) {
  cfg.validate();
  if (senders_of(rho) != tmpl.shape.num_senders) {
    throw std::invalid_argument("template sender count does not match rho");
  }
  if (tmpl.free.size() != tmpl.start.size() * tmpl.shape.num_senders) {
    throw std::invalid_argument("template free mask has the wrong length");
  }
  const int n = tmpl.size();
  FeasibilityResult result;
  if (n <= 1) {
    result.status = Feasibility::kFeasible;
    result.restarts_used = 0;
    result.solution = EncodingSet(tmpl.shape, tmpl.start);
    return result;
  }

  const Eigen::MatrixXcd& m = rho.entries();
  const int threads = std::max(1, cfg.threads);
  double best = std::numeric_limits<double>::infinity();
  for (int batch = 0; batch < cfg.restarts; batch += threads) {
    const int stop = std::min(cfg.restarts, batch + threads);
    std::vector<LmOutcome> outcomes(stop - batch);
    parallel_for(batch, stop, threads, [&](int restart) {
      OrthogonalityObjective obj(m, tmpl);
      CounterRng rng(stream_key(cfg.seed, {stream_tag, static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(restart)}));
      Eigen::VectorXd x0 = obj.random_start(rng);
      outcomes[restart - batch] = levenberg_marquardt(obj, std::move(x0), cfg);
    });
    for (int restart = batch; restart < stop; ++restart) {
      const LmOutcome& o = outcomes[restart - batch];
      best = std::min(best, o.max_abs);
      if (o.max_abs < cfg.tolerance) {
        OrthogonalityObjective obj(m, tmpl);
        EncodingSet set = obj.to_set(o.x);
        const VerifyReport check = verify_set(rho, set, cfg.tolerance);
        if (!check.pass) continue;
        result.status = Feasibility::kFeasible;
        result.best_residual = check.max_abs_overlap;
        result.restarts_used = restart + 1;
        result.solution = std::move(set);
        return result;
      }
    }
  }
  result.status = Feasibility::kInfeasible;
  result.best_residual = best;
  result.restarts_used = cfg.restarts;
  return result;
}

FeasibilityResult find_orthogonal_set(const DensityMatrix& rho, int n,
                                      const SolverConfig& cfg) {
  const int m = senders_of(rho);
  const SystemShape shape{m, 2};
  if (n < shape.sender_dim() || n > shape.total_dim()) {
    throw std::invalid_argument(fmt::format(
        "N = {} outside [{}, {}]", n, shape.sender_dim(), shape.total_dim()));
  }
  return solve_template(rho, SearchTemplate::all_free(shape, n), cfg,
                        kPlainSearchTag);
}

DdcResult compute_nmax(const PureState& state, const SolverConfig& cfg) {
  cfg.validate();
  const DensityMatrix rho = reduce_to_senders(state);
  const SystemShape shape = state.shape();
  const int classical = shape.sender_dim();
  const int quantum = shape.total_dim();

  DdcResult out;
  out.shape = shape;
  out.seed = cfg.seed;
  FeasibilityResult floor;
  floor.status = Feasibility::kFeasible;
  out.per_n_evidence.emplace(classical, std::move(floor));
  out.n_max = classical;

  for (int n = classical + 1; n <= quantum; ++n) {
    FeasibilityResult r = find_orthogonal_set(rho, n, cfg);
    const bool ok = r.feasible();
    out.per_n_evidence.emplace(n, std::move(r));
    if (ok) {
      out.n_max = n;
      continue;
    }
    // Infeasible at d^(M+1) - 1 does not rule out d^(M+1).
    if (n == quantum - 1) {
      FeasibilityResult full = find_orthogonal_set(rho, quantum, cfg);
      if (full.feasible()) out.n_max = quantum;
      out.per_n_evidence.emplace(quantum, std::move(full));
    }
    break;
  }
  if (out.n_max == quantum - 1) {
    std::fprintf(stderr,
                 "ddcnet: WARNING N_max = %d = d^(M+1) - 1 observed (seed %llu); "
                 "N = %d was tested and found infeasible\n",
                 out.n_max, static_cast<unsigned long long>(cfg.seed), quantum);
  }
  return out;
}

VerifyReport verify_set(const DensityMatrix& rho, const EncodingSet& set,
                        double tol) {
  using LComplex = std::complex<long double>;
  using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;
  const int m = set.shape().num_senders;
  if (senders_of(rho) != m) {
    throw std::invalid_argument("encoding set does not match rho");
  }
  const int dim = 1 << m;
  const LMatrix lrho = rho.entries().cast<LComplex>();

  auto full_unitary = [&](const ProductEncoding& e) {
    LMatrix u = LMatrix::Identity(1, 1);
    for (const Su2Params& p : e.per_sender) {
      const long double c = std::cos(static_cast<long double>(p.theta));
      const long double s = std::sin(static_cast<long double>(p.theta));
      const LComplex ex = std::polar(1.0L, static_cast<long double>(p.x));
      const LComplex ey = std::polar(1.0L, static_cast<long double>(p.y));
      LMatrix local(2, 2);
      local << c * ex, -s * ey, s * std::conj(ey), c * std::conj(ex);
      LMatrix next(u.rows() * 2, u.cols() * 2);
      for (Eigen::Index i = 0; i < u.rows(); ++i) {
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
          next.block(2 * i, 2 * j, 2, 2) = u(i, j) * local;
        }
      }
      u = std::move(next);
    }
    return u;
  };

  std::vector<LMatrix> full;
  full.reserve(set.size());
  for (const ProductEncoding& e : set.encodings()) full.push_back(full_unitary(e));

  VerifyReport report;
  for (int i = 0; i < set.size(); ++i) {
    const LMatrix left = lrho * full[i].adjoint();
    for (int j = i + 1; j < set.size(); ++j) {
      LComplex tr = 0.0L;
      for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) tr += left(a, b) * full[j](b, a);
      }
      report.max_abs_overlap =
          std::max(report.max_abs_overlap, static_cast<double>(std::abs(tr)));
    }
  }
  report.pass = report.max_abs_overlap < tol;
  return report;
}

int ConjectureReport::counterexample_candidates() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const auto& e) {
    return e.finding == ConjectureFinding::kCounterexampleCandidate;
  }));
}

int ConjectureReport::subset_of_full_basis() const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const auto& e) {
    return e.finding == ConjectureFinding::kSubsetOfFullBasis;
  }));
}

ConjectureReport corroborate_conjecture(const std::vector<PureState>& states,
                                        const SolverConfig& cfg) {
  ConjectureReport report;
  if (states.empty()) return report;
  const SystemShape shape = states.front().shape();
  for (const PureState& s : states) {
    if (!(s.shape() == shape)) {
      throw std::invalid_argument("conjecture probe needs states of one shape");
    }
  }
  report.probed_n = shape.total_dim() - 1;
  report.entries.resize(states.size());
  SolverConfig inner = cfg;
  inner.threads = 1;
  parallel_for(0, static_cast<int>(states.size()), cfg.threads, [&](int i) {
    ConjectureEntry& e = report.entries[i];
    e.index = i;
    const DensityMatrix rho = reduce_to_senders(states[i]);
    e.at_n = find_orthogonal_set(rho, report.probed_n, inner);
    if (!e.at_n.feasible()) return;
    e.at_full = find_orthogonal_set(rho, shape.total_dim(), inner);
    e.finding = e.at_full->feasible() ? ConjectureFinding::kSubsetOfFullBasis
                                      : ConjectureFinding::kCounterexampleCandidate;
  });
  return report;
}

}  // namespace ddcnet
