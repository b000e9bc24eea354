// Copyright 2026 The sparselab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparselab/restricted_inv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <Eigen/QR>

#include "sparselab/error.hpp"
#include "sparselab/report.hpp"
#include "sparselab/seeds.hpp"
#include "sparselab/spectra.hpp"

namespace sparselab {

namespace {

constexpr double kSpreadSlack = 1e-12;

bool rows_spread(const ComplexMatrix& v, double eta, double rho) {
  const int n = static_cast<int>(v.cols());
  const int q = static_cast<int>(std::floor(eta * n));
  const double floor_value = rho / std::sqrt(static_cast<double>(n)) * (1.0 - kSpreadSlack);
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    if (order_stat(v.row(r).transpose(), q) < floor_value) return false;
  }
  return true;
}

VertexSet draw_subset(int n, int ell, std::uint64_t seed, BTMode mode) {
  std::mt19937_64 gen(seed);
  VertexSet J;
  if (mode == BTMode::bernoulli) {
    std::bernoulli_distribution coin(std::min(1.0, static_cast<double>(ell) / n));
    for (int j = 0; j < n; ++j) {
      if (coin(gen)) J.push_back(j);
    }
    return J;
  }
  if (ell > n) throw ConfigError("sample_bt_subset: ell exceeds n in uniform mode");
  VertexSet all = iota_set(n);
  std::sample(all.begin(), all.end(), std::back_inserter(J), ell, gen);
  return J;
}

void check_eta_rho(double eta, double rho) {
  if (!(eta > 0.0 && eta < 1.0)) throw ConfigError("eta must lie in (0,1)");
  if (!(rho > 0.0)) throw ConfigError("rho must be positive");
}

}  // namespace

double order_stat(const Eigen::VectorXcd& v, int q) {
  if (q <= 0) return std::numeric_limits<double>::infinity();
  if (q > v.size()) return 0.0;
  std::vector<double> mods(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) mods[static_cast<std::size_t>(i)] = std::abs(v(i));
  std::nth_element(mods.begin(), mods.begin() + (q - 1), mods.end(), std::greater<>());
  return mods[static_cast<std::size_t>(q - 1)];
}

ComplexMatrix partial_fourier_frame(int k, int n) {
  if (k < 1 || n < 1 || k > n) throw ConfigError("partial_fourier_frame: need 1 <= k <= n");
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  const double two_pi = 2.0 * std::acos(-1.0);
  ComplexMatrix v(k, n);
  for (int j = 0; j < k; ++j) {
    for (int m = 0; m < n; ++m) {
      const long long r = (static_cast<long long>(j) * m) % n;
      v(j, m) = std::polar(amp, two_pi * static_cast<double>(r) / n);
    }
  }
  return v;
}

bool rows_orthonormal(const ComplexMatrix& v, double tol) {
  const ComplexMatrix gram = v * v.adjoint();
  const ComplexMatrix id = ComplexMatrix::Identity(v.rows(), v.rows());
  return (gram - id).cwiseAbs().maxCoeff() <= tol || v.rows() == 0;
}

SpreadBasis spread_basis(const ComplexMatrix& e, int s, int max_attempts, std::uint64_t seed) {
  if (s < 1) throw ConfigError("spread_basis: s must be >= 1");
  if (max_attempts < 1) throw ConfigError("spread_basis: max_attempts must be >= 1");
  const int n = static_cast<int>(e.rows());
  SpreadBasis out;
  if (n == 0 || e.cols() == 0) return out;

  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(e);
  const int k = static_cast<int>(qr.rank());
  if (k == 0) return out;
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, k);
  const double floor_value = 1.0 / (2.0 * std::sqrt(static_cast<double>(n)));

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    out.attempts = attempt + 1;
    std::mt19937_64 gen(derive_trial_seed(seed, static_cast<std::uint64_t>(attempt), "spread"));
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    ComplexMatrix g(k, k);
    for (int c = 0; c < k; ++c) {
      for (int r = 0; r < k; ++r) {
        const double re = normal(gen);
        const double im = normal(gen);
        g(r, c) = Complex(re, im);
      }
    }
    Eigen::HouseholderQR<ComplexMatrix> hq(g);
    ComplexMatrix u = hq.householderQ() * ComplexMatrix::Identity(k, k);
    const ComplexMatrix& rr = hq.matrixQR();
    for (int c = 0; c < k; ++c) {
      const Complex d = rr(c, c);
      if (std::abs(d) > 0.0) u.col(c) *= d / std::abs(d);
    }
    ComplexMatrix basis = q * u;
    bool ok = true;
    for (int c = 0; c < k && ok; ++c) ok = order_stat(basis.col(c), s) >= floor_value;
    if (ok) {
      out.success = true;
      out.basis = std::move(basis);
      return out;
    }
  }
  return out;
}

int bt_ell(int k, double eta, double rho, double c_tilde) {
  return static_cast<int>(std::floor(c_tilde * eta * eta * eta * rho * rho * k));
}

BTSubset sample_bt_subset(const ComplexMatrix& v, double eta, double rho, std::uint64_t seed,
                          BTMode mode, const BTConstants& constants) {
  check_eta_rho(eta, rho);
  if (!rows_orthonormal(v)) throw PreconditionError("sample_bt_subset: rows of V are not orthonormal");
  BTSubset out;
  out.ell = bt_ell(static_cast<int>(v.rows()), eta, rho, constants.c_tilde);
  if (out.ell == 0) throw ConfigError("sample_bt_subset: degenerate parameters, ell = 0");
  out.spread_ok = rows_spread(v, eta, rho);
  out.J = draw_subset(static_cast<int>(v.cols()), out.ell, seed, mode);
  return out;
}

BTSample check_bt_conditions(const ComplexMatrix& v, const VertexSet& J, double eta, double rho,
                             double C_cap, double c_low) {
  BTSample out;
  out.eta = eta;
  out.rho = rho;
  out.k = static_cast<int>(v.rows());
  out.n = static_cast<int>(v.cols());
  out.J = normalized(J);
  out.ell = static_cast<int>(out.J.size());
  for (int j : out.J) {
    if (j < 0 || j >= out.n) throw IndexError("check_bt_conditions: index outside [n]");
  }
  const double kn = static_cast<double>(out.k) / out.n;
  out.norm_bound = std::sqrt(C_cap * kn / eta);
  out.lower_bound = c_low * rho * std::sqrt(eta * kn);

  out.cond_norm = true;
  for (int j : out.J) {
    if (v.col(j).norm() > out.norm_bound) out.cond_norm = false;
  }
  if (out.J.empty()) {
    out.submatrix_smin = std::numeric_limits<double>::infinity();
  } else if (static_cast<int>(out.J.size()) > out.k) {
    out.submatrix_smin = 0.0;
  } else {
    ComplexMatrix sub(out.k, static_cast<Eigen::Index>(out.J.size()));
    for (std::size_t c = 0; c < out.J.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = v.col(out.J[c]);
    out.submatrix_smin = singular_values(sub).back();
  }
  out.cond_lower = out.submatrix_smin >= out.lower_bound;
  return out;
}

BTRate bt_success_rate(const ComplexMatrix& v, double eta, double rho, int trials,
                       std::uint64_t seed, BTMode mode, const BTConstants& constants, Exec exec) {
  if (trials < 1) throw ConfigError("bt_success_rate: trials must be >= 1");
  check_eta_rho(eta, rho);
  if (!rows_orthonormal(v)) throw PreconditionError("bt_success_rate: rows of V are not orthonormal");
  BTRate out;
  out.trials = trials;
  out.ell = bt_ell(static_cast<int>(v.rows()), eta, rho, constants.c_tilde);
  if (out.ell == 0) throw ConfigError("bt_success_rate: degenerate parameters, ell = 0");
  out.lower_ref = std::pow(constants.c_hat * eta, out.ell);
  out.samples.resize(static_cast<std::size_t>(trials));
  const int n = static_cast<int>(v.cols());

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (int t = 0; t < trials; ++t) {
    const VertexSet J = draw_subset(n, out.ell, derive_trial_seed(seed, static_cast<std::uint64_t>(t), "bt"), mode);
    BTSample s = check_bt_conditions(v, J, eta, rho, constants.C_cap, constants.c_low);
    s.ell = out.ell;
    out.samples[static_cast<std::size_t>(t)] = std::move(s);
  }
  for (const auto& s : out.samples) {
    if (static_cast<int>(s.J.size()) == out.ell && s.cond_norm && s.cond_lower) ++out.successes;
  }
  out.rate = static_cast<double>(out.successes) / trials;
  const Interval w = wilson_interval(out.successes, trials);
  out.wilson_lo = w.lo;
  out.wilson_hi = w.hi;
  return out;
}

std::string to_string(ProjectionVerdict v) {
  switch (v) {
    case ProjectionVerdict::holds: return "holds";
    case ProjectionVerdict::violated: return "violated";
    case ProjectionVerdict::hypothesis_not_met: return "hypothesis_not_met";
  }
  return "unknown";
}

ProjectionCheck projection_bound_check(const ComplexMatrix& b, const ComplexMatrix& v, double s,
                                       const VertexSet& J, double eta, double rho,
                                       const BTConstants& constants) {
  check_eta_rho(eta, rho);
  const int n = static_cast<int>(b.rows());
  if (b.cols() != n) throw DimensionError("projection_bound_check: B must be square");
  if (v.cols() != n) throw DimensionError("projection_bound_check: V must have n columns");
  const int k = static_cast<int>(v.rows());
  ProjectionCheck out;
  const VertexSet I = normalized(J);
  for (int j : I) {
    if (j < 0 || j >= n) throw IndexError("projection_bound_check: index outside [n]");
  }

  auto reject = [&out](const char* why) {
    out.verdict = ProjectionVerdict::hypothesis_not_met;
    out.reason = why;
    return out;
  };
  if (k < 1 || k >= n) return reject("need 1 <= k < n");
  if (!rows_orthonormal(v)) return reject("rows of V not orthonormal");
  if (!rows_spread(v, eta, rho)) return reject("rows of V not spread");
  const ComplexMatrix bv = b * v.transpose();
  const std::vector<double> sv = singular_values(bv);
  out.op_norm = sv.empty() ? 0.0 : sv.front();
  if (out.op_norm > s) return reject("operator norm of B V^T exceeds s");
  const BTSample cond = check_bt_conditions(v, I, eta, rho, constants.C_cap, constants.c_low);
  if (!cond.cond_norm) return reject("column norm condition fails on J");
  if (!cond.cond_lower) return reject("lower bound condition fails on J");

  out.bound = std::sqrt(2.0) / (constants.c_low * rho) *
              std::sqrt(static_cast<double>(n) / (eta * k)) * s;
  out.required = (static_cast<int>(I.size()) + 1) / 2;

  const VertexSet rest = set_difference(iota_set(n), I);
  ComplexMatrix q(n, 0);
  if (!rest.empty()) {
    ComplexMatrix w(n, static_cast<Eigen::Index>(rest.size()));
    for (std::size_t c = 0; c < rest.size(); ++c) w.col(static_cast<Eigen::Index>(c)) = b.col(rest[c]);
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(w);
    const Eigen::Index r = qr.rank();
    q = qr.householderQ() * ComplexMatrix::Identity(n, r);
  }
  for (int j : I) {
    const Eigen::VectorXcd col = b.col(j);
    const Eigen::VectorXcd resid = col - q * (q.adjoint() * col);
    const double d = resid.norm();
    out.distances.push_back(d);
    if (d <= out.bound * (1.0 + 1e-10) + 1e-12 * col.norm()) ++out.qualifying;
  }
  out.verdict = out.qualifying >= out.required ? ProjectionVerdict::holds : ProjectionVerdict::violated;
  return out;
}

}  // namespace sparselab
