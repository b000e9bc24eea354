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

#ifndef SPARSELAB_SPECTRA_HPP_
#define SPARSELAB_SPECTRA_HPP_

#include <map>
#include <optional>
#include <vector>

#include "sparselab/exec.hpp"
#include "sparselab/sampling.hpp"
#include "sparselab/vertex_set.hpp"

namespace sparselab {

// Non-increasing; throws DomainError on non-finite entries.
std::vector<double> singular_values(const ComplexMatrix& b);
std::vector<double> singular_values(const RealMatrix& b);

// [[0, B], [B^*, 0]] for square B.
ComplexMatrix hermitize(const ComplexMatrix& b);

// (1/2n) sum_i [1/(s_i - w) + 1/(-s_i - w)]; Im w <= 0 is a DomainError.
Complex stieltjes(const std::vector<double>& sv, Complex w);

// (1/2n) tr (H - w)^-1 by an LU solve of the hermitization of B.
Complex stieltjes_resolvent(const ComplexMatrix& b, Complex w);

// log|det B| from an LU factorization; -inf when singular.
double log_abs_det(const ComplexMatrix& b);

struct LogPotential {
  double log_potential = 0.0;  // (1/n) sum log s_j; -inf when singular
  bool singular = false;
  std::size_t zero_count = 0;
  // (1/n) sum over nonzero s_j with |log s_j| > T of |log s_j|.
  std::map<double, double> tail_integrals;
};

LogPotential log_potential_report(const std::vector<double>& sv, const std::vector<double>& t_marks);
LogPotential log_potential_report(const ComplexMatrix& b, const std::vector<double>& t_marks);

struct EsdMetrics {
  std::vector<Complex> eigenvalues;
  std::vector<double> radii;
  std::vector<double> radial_cdf;  // #{|lambda| <= r} / n
  double second_abs_moment = 0.0;  // (1/n) sum |lambda|^2
};

std::vector<Complex> eigenvalues(const ComplexMatrix& m);
std::vector<Complex> eigenvalues(const RealMatrix& m);

EsdMetrics esd_metrics(const std::vector<Complex>& eig, const std::vector<double>& radii);
EsdMetrics esd_metrics(const ComplexMatrix& m, const std::vector<double>& radii);
EsdMetrics esd_metrics(const RealMatrix& m, const std::vector<double>& radii);

// Limit law references for the uniform measure on the unit disc.
inline double disc_radial_cdf(double r) { return r <= 0.0 ? 0.0 : (r >= 1.0 ? 1.0 : r * r); }
inline constexpr double kDiscSecondMoment = 0.5;

struct ColumnDistances {
  std::vector<double> dist;         // dist(col_j, span of the other columns)
  ComplexMatrix normals;            // column j: unit vector orthogonal to the other columns
  std::vector<Complex> inner;       // <nu_j, col_j>
  double sum_inv_s2 = 0.0;
  double sum_inv_d2 = 0.0;
  std::optional<double> negsec_relative_error;  // empty when B is singular
};

ColumnDistances column_distances(const ComplexMatrix& b, Exec exec = Exec::parallel);

struct RowEvent {
  std::size_t s_count = 0;
  std::vector<char> in_max_q;    // row excluded (belongs to Max_q(x))
  std::vector<char> omega;       // event flag per row
  double x_q = 0.0;              // x*_q
};

// Max_r(x): floor(r) indices of largest modulus, smaller index first on ties.
VertexSet max_set(const Eigen::VectorXcd& x, double r);

// Per-row evaluation of the event "l1 norm <= C pn, zero on Max_{q/2}(x),
// |sum_j a_ij x_j| >= x*_q / (2 alpha)" over rows outside Max_q(x).
RowEvent row_event_diagnostic(const ShiftedMatrix& b, const Eigen::VectorXcd& x, int q, double tau,
                              double c_const = 4.0);

struct SpectralReport {
  std::vector<double> singular_values;
  std::optional<std::vector<Complex>> eigenvalues;
  double s_min = 0.0;
  double log_potential = 0.0;
  std::map<double, double> tail_integrals;
  std::vector<std::pair<Complex, Complex>> stieltjes_samples;
};

SpectralReport spectral_report(const ComplexMatrix& b, bool with_eigenvalues,
                               const std::vector<double>& t_marks, const std::vector<Complex>& w_grid);

}  // namespace sparselab

#endif  // SPARSELAB_SPECTRA_HPP_
