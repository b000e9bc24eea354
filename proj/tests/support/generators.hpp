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


#ifndef SPARSELAB_TESTS_SUPPORT_GENERATORS_HPP_
#define SPARSELAB_TESTS_SUPPORT_GENERATORS_HPP_

// Random instance builders shared by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

#include "sparselab/compression.hpp"
#include "sparselab/graph.hpp"
#include "sparselab/restricted_inv.hpp"
#include "sparselab/types_chains.hpp"
#include "support/oracles.hpp"

namespace gen {

using sparselab::ComplexMatrix;
using sparselab::Complex;

struct MapInstance {
  ComplexMatrix b;
  double K = 0.0;
  sparselab::AdmissibleMap phi;
};

// Random matrix with a nonzero diagonal and a random maximal-ish matching
// of left vertices whose supports are disjoint and of infinite type.
// Returns false when no pair can be glued.
inline bool admissible_instance(std::mt19937_64& rng, int m, MapInstance& out) {
  std::uniform_real_distribution<double> kd(0.5, 3.0);
  std::uniform_real_distribution<double> dens(0.15, 0.4);
  out.b = oracle::random_sparse(m, dens(rng), 0.6, rng);
  out.K = kd(rng);
  const auto g = sparselab::build_graph(out.b, 1.0);
  const auto p = sparselab::classify_types(g, out.K);
  std::vector<int> ok_rows;
  for (int i = 0; i < m; ++i) {
    if (sparselab::is_subset(g.left_out[i], p.infinite)) ok_rows.push_back(i);
  }
  std::vector<std::pair<int, int>> candidates;
  for (std::size_t a = 0; a < ok_rows.size(); ++a) {
    for (std::size_t c = a + 1; c < ok_rows.size(); ++c) {
      const int i1 = ok_rows[a];
      const int i2 = ok_rows[c];
      if (sparselab::set_intersection(g.left_out[i1], g.left_out[i2]).empty()) candidates.emplace_back(i1, i2);
    }
  }
  if (candidates.empty()) return false;
  std::shuffle(candidates.begin(), candidates.end(), rng);
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  std::vector<std::pair<int, int>> pairs;
  std::bernoulli_distribution keep(0.7);
  for (const auto& [i1, i2] : candidates) {
    if (used[i1] || used[i2]) continue;
    if (!pairs.empty() && !keep(rng)) continue;
    used[i1] = used[i2] = 1;
    pairs.emplace_back(i1, i2);
  }
  out.phi = sparselab::glue_pairs(m, pairs, out.K);
  return true;
}

struct ShellInstance {
  ComplexMatrix b;
  Eigen::VectorXcd x;
  sparselab::VertexSet M;
  sparselab::VertexSet J;
  int d = 1;
  double alpha = 1.0;
};

// Rows outside M are adjusted so that they nearly annihilate x; x has
// entries spread over several orders of magnitude.
inline ShellInstance shell_instance(std::mt19937_64& rng, int max_n) {
  std::uniform_int_distribution<int> nd(4, max_n);
  std::uniform_int_distribution<int> dd(1, 3);
  std::uniform_real_distribution<double> logmag(-3.0, 0.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  std::bernoulli_distribution coin(0.5);
  std::bernoulli_distribution in_m(0.2);
  ShellInstance s;
  const int n = nd(rng);
  s.alpha = coin(rng) ? 1.0 : 2.0;
  s.d = dd(rng);
  s.b = oracle::random_sparse(n, std::min(0.5, 4.0 / n), 0.6, rng);
  s.x.resize(n);
  for (int j = 0; j < n; ++j) s.x[j] = std::polar(std::pow(10.0, logmag(rng)), phase(rng));
  for (int i = 0; i < n; ++i) {
    if (in_m(rng)) s.M.push_back(i);
  }
  const bool annihilate = std::bernoulli_distribution(0.8)(rng);
  for (int i = 0; i < n && annihilate; ++i) {
    if (sparselab::contains(s.M, i)) continue;
    std::vector<int> support;
    for (int j = 0; j < n; ++j) {
      if (s.b(i, j) != Complex(0, 0)) support.push_back(j);
    }
    if (support.size() < 2) continue;
    const int c = support[std::uniform_int_distribution<std::size_t>(0, support.size() - 1)(rng)];
    Complex acc(0, 0);
    for (int j : support) {
      if (j != c) acc += s.b(i, j) * s.x[j];
    }
    s.b(i, c) = -acc / s.x[c];
  }
  std::uniform_int_distribution<int> js(1, std::max(1, n / 4));
  std::vector<int> cols(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) cols[j] = j;
  std::shuffle(cols.begin(), cols.end(), rng);
  s.J.assign(cols.begin(), cols.begin() + js(rng));
  std::sort(s.J.begin(), s.J.end());
  return s;
}

struct ProjectionInstance {
  ComplexMatrix b;
  ComplexMatrix v;  // k x n, orthonormal rows
  double s = 0.0;
  double eta = 0.5;
  double rho = 1.0;
  sparselab::VertexSet J;
  sparselab::BTConstants constants;
};

// V is either a partial Fourier frame or a Haar-random orthonormal system;
// rho is the largest value the spread hypothesis allows, c_low the largest
// value condition (3) allows for the drawn J, and s = ||B V^T|| exactly.
// B = G (I - W W^*) + noise * E with W = V^T.
inline ProjectionInstance projection_instance(std::mt19937_64& rng, int max_n) {
  std::uniform_int_distribution<int> nd(6, max_n);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> noise(0.0, 0.3);
  ProjectionInstance p;
  const int n = nd(rng);
  const int k = std::uniform_int_distribution<int>(2, std::max(2, n / 2))(rng);
  if (coin(rng)) {
    p.v = sparselab::partial_fourier_frame(k, n);
  } else {
    Eigen::HouseholderQR<ComplexMatrix> qr(oracle::gaussian(n, k, rng));
    p.v = ComplexMatrix(qr.householderQ() * ComplexMatrix::Identity(n, k)).transpose();
  }
  p.eta = std::uniform_real_distribution<double>(0.2, 0.8)(rng);
  const int q = static_cast<int>(std::floor(p.eta * n));
  double rho = INFINITY;
  for (int r = 0; r < k; ++r) {
    rho = std::min(rho, sparselab::order_stat(p.v.row(r).transpose(), q) * std::sqrt(static_cast<double>(n)));
  }
  p.rho = rho;
  const ComplexMatrix w = p.v.transpose();
  const ComplexMatrix proj = ComplexMatrix::Identity(n, n) - w * w.adjoint();
  p.b = oracle::gaussian(n, n, rng) * proj + noise(rng) * oracle::gaussian(n, n, rng);
  Eigen::JacobiSVD<ComplexMatrix> svd(p.b * w);
  p.s = svd.singularValues()[0] * (1.0 + 1e-12);
  const int ell = std::uniform_int_distribution<int>(1, std::max(1, std::min(k, n / 3)))(rng);
  std::vector<int> cols(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) cols[j] = j;
  std::shuffle(cols.begin(), cols.end(), rng);
  p.J.assign(cols.begin(), cols.begin() + ell);
  std::sort(p.J.begin(), p.J.end());
  ComplexMatrix sub(k, ell);
  double max_norm = 0.0;
  for (int c = 0; c < ell; ++c) {
    sub.col(c) = p.v.col(p.J[c]);
    max_norm = std::max(max_norm, sub.col(c).norm());
  }
  const double smin = Eigen::JacobiSVD<ComplexMatrix>(sub).singularValues()[ell - 1];
  const double scale = p.rho * std::sqrt(p.eta * k / n);
  p.constants.c_low = smin / scale * (1.0 - 1e-9);
  p.constants.C_cap = std::max(16.0, max_norm * max_norm * p.eta * n / k * (1.0 + 1e-9));
  return p;
}

}  // namespace gen

#endif  // SPARSELAB_TESTS_SUPPORT_GENERATORS_HPP_
