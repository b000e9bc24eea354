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

#include "sparselab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Jacobi>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "sparselab/error.hpp"

namespace sparselab {

namespace {

template <typename Mat>
void require_finite(const Mat& b, const char* what) {
  if (!b.allFinite()) throw DomainError(std::string(what) + ": non-finite entries");
}

template <typename Mat>
std::vector<double> svd_values(const Mat& b) {
  require_finite(b, "singular_values");
  if (b.size() == 0) return {};
  Eigen::BDCSVD<Mat> svd(b);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double zero_tolerance(const std::vector<double>& sv, std::size_t dim) {
  if (sv.empty()) return 0.0;
  return static_cast<double>(dim) * std::numeric_limits<double>::epsilon() * sv.front();
}

}  // namespace

std::vector<double> singular_values(const ComplexMatrix& b) { return svd_values(b); }
std::vector<double> singular_values(const RealMatrix& b) { return svd_values(b); }

ComplexMatrix hermitize(const ComplexMatrix& b) {
  if (b.rows() != b.cols()) throw DimensionError("hermitize: matrix must be square");
  const Eigen::Index n = b.rows();
  ComplexMatrix h = ComplexMatrix::Zero(2 * n, 2 * n);
  h.topRightCorner(n, n) = b;
  h.bottomLeftCorner(n, n) = b.adjoint();
  return h;
}

Complex stieltjes(const std::vector<double>& sv, Complex w) {
  if (!(w.imag() > 0.0)) throw DomainError("stieltjes: Im w must be positive");
  if (sv.empty()) throw DimensionError("stieltjes: empty spectrum");
  Complex acc(0.0, 0.0);
  for (double s : sv) acc += 1.0 / (s - w) + 1.0 / (-s - w);
  return acc / (2.0 * static_cast<double>(sv.size()));
}

Complex stieltjes_resolvent(const ComplexMatrix& b, Complex w) {
  if (!(w.imag() > 0.0)) throw DomainError("stieltjes: Im w must be positive");
  ComplexMatrix h = hermitize(b);
  h.diagonal().array() -= w;
  const Eigen::PartialPivLU<ComplexMatrix> lu(h);
  const ComplexMatrix inv = lu.solve(ComplexMatrix::Identity(h.rows(), h.cols()));
  return inv.trace() / static_cast<double>(h.rows());
}

double log_abs_det(const ComplexMatrix& b) {
  if (b.rows() != b.cols()) throw DimensionError("log_abs_det: matrix must be square");
  require_finite(b, "log_abs_det");
  const Eigen::PartialPivLU<ComplexMatrix> lu(b);
  const ComplexMatrix& u = lu.matrixLU();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const double mod = std::abs(u(i, i));
    if (mod == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(mod);
  }
  return acc;
}

LogPotential log_potential_report(const std::vector<double>& sv, const std::vector<double>& t_marks) {
  LogPotential r;
  const double n = static_cast<double>(sv.size());
  const double tol = zero_tolerance(sv, sv.size());
  double acc = 0.0;
  std::vector<double> logs;
  for (double s : sv) {
    if (s <= tol) {
      ++r.zero_count;
      continue;
    }
    logs.push_back(std::log(s));
    acc += logs.back();
  }
  r.singular = r.zero_count > 0;
  r.log_potential = r.singular ? -std::numeric_limits<double>::infinity() : (n > 0 ? acc / n : 0.0);
  for (double t : t_marks) {
    double tail = 0.0;
    for (double l : logs) {
      if (std::abs(l) > t) tail += std::abs(l);
    }
    r.tail_integrals[t] = n > 0 ? tail / n : 0.0;
  }
  return r;
}

LogPotential log_potential_report(const ComplexMatrix& b, const std::vector<double>& t_marks) {
  return log_potential_report(singular_values(b), t_marks);
}

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues: matrix must be square");
  require_finite(m, "eigenvalues");
  if (m.size() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw DomainError("eigenvalues: solver did not converge");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::vector<Complex> eigenvalues(const RealMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues: matrix must be square");
  require_finite(m, "eigenvalues");
  if (m.size() == 0) return {};
  Eigen::EigenSolver<RealMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw DomainError("eigenvalues: solver did not converge");
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

EsdMetrics esd_metrics(const std::vector<Complex>& eig, const std::vector<double>& radii) {
  EsdMetrics r;
  r.eigenvalues = eig;
  r.radii = radii;
  const double n = static_cast<double>(eig.size());
  double moment = 0.0;
  for (const Complex& l : eig) moment += std::norm(l);
  r.second_abs_moment = n > 0 ? moment / n : 0.0;
  for (double rad : radii) {
    std::size_t c = 0;
    for (const Complex& l : eig) c += std::abs(l) <= rad ? 1 : 0;
    r.radial_cdf.push_back(n > 0 ? static_cast<double>(c) / n : 0.0);
  }
  return r;
}

EsdMetrics esd_metrics(const ComplexMatrix& m, const std::vector<double>& radii) {
  return esd_metrics(eigenvalues(m), radii);
}

EsdMetrics esd_metrics(const RealMatrix& m, const std::vector<double>& radii) {
  return esd_metrics(eigenvalues(m), radii);
}

namespace {

struct Projection {
  double dist = 0.0;
  Eigen::VectorXcd normal;
};

// Rank-revealing QR of the other columns; handles rank-deficient spans. The
// normal is the unit component of col_j orthogonal to them when nonzero.
Projection project_out(const ComplexMatrix& b, int j) {
  const int n = static_cast<int>(b.rows());
  ComplexMatrix others(n, n - 1);
  others.leftCols(j) = b.leftCols(j);
  others.rightCols(n - 1 - j) = b.rightCols(n - 1 - j);
  const Eigen::ColPivHouseholderQR<ComplexMatrix> qr(others);
  const Eigen::VectorXcd coords = qr.householderQ().adjoint() * b.col(j);
  const Eigen::Index free = n - qr.rank();
  const double dist = coords.tail(free).norm();
  Eigen::VectorXcd unit = Eigen::VectorXcd::Zero(n);
  if (dist > 0.0) {
    unit.tail(free) = coords.tail(free) / dist;
  } else {
    unit[n - 1] = 1.0;
  }
  return {dist, qr.householderQ() * unit};
}

// Deletes column j from R = Q* B and restores triangular form by Givens
// rotations; returns nothing when the remaining columns are numerically
// rank deficient.
std::optional<Projection> downdate(const Eigen::HouseholderQR<ComplexMatrix>& qr, int j, double tol) {
  const int n = static_cast<int>(qr.rows());
  ComplexMatrix t(n, n - 1);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  t.leftCols(j) = r.leftCols(j);
  t.rightCols(n - 1 - j) = r.rightCols(n - 1 - j);
  Eigen::VectorXcd v = r.col(j);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
  e[n - 1] = 1.0;
  std::vector<Eigen::JacobiRotation<Complex>> rot;
  for (int k = j; k < n - 1; ++k) {
    Eigen::JacobiRotation<Complex> g;
    g.makeGivens(t(k, k), t(k + 1, k));
    t.rightCols(n - 1 - k).applyOnTheLeft(k, k + 1, g.adjoint());
    v.applyOnTheLeft(k, k + 1, g.adjoint());
    rot.push_back(g);
  }
  for (int k = 0; k < n - 1; ++k) {
    if (std::abs(t(k, k)) <= tol) return std::nullopt;
  }
  for (auto it = rot.rbegin(); it != rot.rend(); ++it) {
    const int k = j + static_cast<int>(rot.rend() - it) - 1;
    e.applyOnTheLeft(k, k + 1, *it);
  }
  return Projection{std::abs(v[n - 1]), qr.householderQ() * e};
}

}  // namespace

ColumnDistances column_distances(const ComplexMatrix& b, Exec exec) {
  if (b.rows() != b.cols()) throw DimensionError("column_distances: matrix must be square");
  require_finite(b, "column_distances");
  const int n = static_cast<int>(b.rows());
  ColumnDistances r;
  r.dist.assign(n, 0.0);
  r.inner.assign(n, Complex(0.0, 0.0));
  r.normals = ComplexMatrix::Zero(n, n);
  const Eigen::HouseholderQR<ComplexMatrix> qr(b);
  const double rank_tol = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * b.norm();
#pragma omp parallel for schedule(dynamic, 1) if (exec == Exec::parallel)
  for (int j = 0; j < n; ++j) {
    const Eigen::VectorXcd col = b.col(j);
    if (n == 1) {
      r.normals(0, 0) = 1.0;
      r.inner[0] = col[0];
      r.dist[0] = std::abs(col[0]);
      continue;
    }
    std::optional<Projection> fast = downdate(qr, j, rank_tol);
    const Projection p = fast ? std::move(*fast) : project_out(b, j);
    r.dist[j] = p.dist;
    r.normals.col(j) = p.normal;
    r.inner[j] = p.normal.dot(col);
  }
  const std::vector<double> sv = singular_values(b);
  const double tol = zero_tolerance(sv, sv.size());
  bool singular = false;
  for (double s : sv) {
    if (s <= tol) singular = true;
    r.sum_inv_s2 += 1.0 / (s * s);
  }
  for (double d : r.dist) r.sum_inv_d2 += 1.0 / (d * d);
  if (!singular) {
    r.negsec_relative_error = std::abs(r.sum_inv_s2 - r.sum_inv_d2) / r.sum_inv_s2;
  }
  return r;
}

VertexSet max_set(const Eigen::VectorXcd& x, double r) {
  const int n = static_cast<int>(x.size());
  const int count = std::clamp(static_cast<int>(std::floor(r)), 0, n);
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(x[a]) > std::abs(x[b]); });
  idx.resize(count);
  return normalized(std::move(idx));
}

RowEvent row_event_diagnostic(const ShiftedMatrix& b, const Eigen::VectorXcd& x, int q, double tau,
                              double c_const) {
  if (!b.source) throw PreconditionError("row_event_diagnostic: matrix has no source sample");
  const int n = b.n();
  if (x.size() != n) throw DimensionError("row_event_diagnostic: x does not match the matrix");
  const double p = b.source->p;
  const int q_lo = static_cast<int>(std::ceil(tau / p));
  const int q_hi = static_cast<int>(std::floor(1.0 / p));
  if (q < q_lo || q > q_hi || q < 1 || q > n) throw ConfigError("row_event_diagnostic: q out of range");
  const double pn = b.source->pn();
  const double alpha = b.source->alpha;
  const VertexSet top_q = max_set(x, q);
  const VertexSet top_half = max_set(x, q / 2.0);
  std::vector<double> mods(n);
  for (int j = 0; j < n; ++j) mods[j] = std::abs(x[j]);
  std::sort(mods.begin(), mods.end(), std::greater<>());
  RowEvent r;
  r.x_q = mods[q - 1];
  r.in_max_q.assign(n, 0);
  r.omega.assign(n, 0);
  for (int i : top_q) r.in_max_q[i] = 1;
  for (int i = 0; i < n; ++i) {
    if (r.in_max_q[i]) continue;
    const auto row = b.values.row(i);
    if (!(row.cwiseAbs().sum() <= c_const * pn)) continue;
    bool zero = true;
    for (int j : top_half) zero = zero && row[j] == Complex(0.0, 0.0);
    if (!zero) continue;
    const Complex ip = (row * x)(0);
    if (std::abs(ip) >= r.x_q / (2.0 * alpha)) {
      r.omega[i] = 1;
      ++r.s_count;
    }
  }
  return r;
}

SpectralReport spectral_report(const ComplexMatrix& b, bool with_eigenvalues,
                               const std::vector<double>& t_marks, const std::vector<Complex>& w_grid) {
  SpectralReport r;
  r.singular_values = singular_values(b);
  r.s_min = r.singular_values.empty() ? 0.0 : r.singular_values.back();
  if (with_eigenvalues) r.eigenvalues = eigenvalues(b);
  const LogPotential lp = log_potential_report(r.singular_values, t_marks);
  r.log_potential = lp.log_potential;
  r.tail_integrals = lp.tail_integrals;
  for (const Complex& w : w_grid) r.stieltjes_samples.emplace_back(w, stieltjes(r.singular_values, w));
  return r;
}

}  // namespace sparselab
