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

#include "sparselab/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "sparselab/graph.hpp"
#include "sparselab/restricted_inv.hpp"
#include "sparselab/seeds.hpp"
#include "sparselab/shells.hpp"
#include "sparselab/spectra.hpp"
#include "sparselab/types_chains.hpp"

namespace sparselab {

namespace {

ComplexMatrix gaussian_matrix(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(gen);
      const double im = normal(gen);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

SelftestResult negative_second_moment(std::uint64_t seed, int count) {
  SelftestResult r{"negative_second_moment", count, 0};
  for (int t = 0; t < count; ++t) {
    std::mt19937_64 gen(derive_trial_seed(seed, t, "negsec"));
    const int n = 4 + t % 20;
    const ComplexMatrix b = gaussian_matrix(n, n, gen) + 3.0 * ComplexMatrix::Identity(n, n);
    const ColumnDistances cd = column_distances(b, Exec::serial);
    if (!cd.negsec_relative_error || *cd.negsec_relative_error > 1e-8) ++r.failures;
  }
  return r;
}

SelftestResult hermitization(std::uint64_t seed, int count) {
  SelftestResult r{"hermitization", count, 0};
  for (int t = 0; t < count; ++t) {
    std::mt19937_64 gen(derive_trial_seed(seed, t, "herm"));
    const int n = 2 + t % 16;
    const ComplexMatrix b = gaussian_matrix(n, n, gen);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitize(b), Eigen::EigenvaluesOnly);
    std::vector<double> eig(es.eigenvalues().data(), es.eigenvalues().data() + 2 * n);
    std::vector<double> ref;
    for (double s : singular_values(b)) {
      ref.push_back(s);
      ref.push_back(-s);
    }
    std::sort(eig.begin(), eig.end());
    std::sort(ref.begin(), ref.end());
    for (int k = 0; k < 2 * n; ++k) {
      if (std::abs(eig[k] - ref[k]) > 1e-9) {
        ++r.failures;
        break;
      }
    }
  }
  return r;
}

SelftestResult girko_and_stieltjes(std::uint64_t seed, int count) {
  SelftestResult r{"girko_and_stieltjes", count, 0};
  for (int t = 0; t < count; ++t) {
    std::mt19937_64 gen(derive_trial_seed(seed, t, "girko"));
    const int n = 3 + t % 12;
    const ComplexMatrix b = gaussian_matrix(n, n, gen);
    const auto sv = singular_values(b);
    const double lp = log_potential_report(sv, {}).log_potential;
    bool ok = std::abs(log_abs_det(b) / n - lp) <= 1e-9;
    const Complex w(0.3, 0.7);
    ok = ok && std::abs(stieltjes(sv, w) - stieltjes_resolvent(b, w)) <= 1e-9;
    if (!ok) ++r.failures;
  }
  return r;
}

BipartiteDigraph random_graph(int m, std::mt19937_64& gen) {
  std::bernoulli_distribution arrow(0.45);
  std::bernoulli_distribution strong(0.5);
  std::vector<std::pair<int, int>> arrows;
  std::vector<std::pair<int, int>> strongs;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j || arrow(gen)) {
        arrows.emplace_back(i, j);
        if (i == j || strong(gen)) strongs.emplace_back(i, j);
      }
    }
  }
  return BipartiteDigraph::from_edges(m, m, arrows, strongs);
}

SelftestResult hereditary_types(std::uint64_t seed, int count) {
  SelftestResult r{"hereditary_types", count, 0};
  for (int t = 0; t < count; ++t) {
    std::mt19937_64 gen(derive_trial_seed(seed, t, "hered"));
    const int m = 2 + t % 7;
    const BipartiteDigraph g = random_graph(m, gen);
    const double K = std::uniform_real_distribution<double>(0.5, 4.0)(gen);
    std::bernoulli_distribution drop(0.3);
    VertexSet removed;
    for (int j = 0; j < m; ++j) {
      if (drop(gen)) removed.push_back(j);
    }
    const TypePartition whole = classify_types(g, K);
    const TypePartition sub = classify_types(remove_right(g, removed), K);
    bool ok = true;
    for (std::size_t l = 0; l < sub.layers.size() && ok; ++l) {
      for (int j : sub.layers[l]) {
        const int a = whole.assignment[j];
        if (a < 1 || a > static_cast<int>(l) + 1) ok = false;
      }
    }
    if (!ok) ++r.failures;
  }
  return r;
}

SelftestResult shell_order_statistics(std::uint64_t seed, int count) {
  SelftestResult r{"shell_order_statistics", count, 0};
  for (int t = 0; t < count; ++t) {
    std::mt19937_64 gen(derive_trial_seed(seed, t, "shell"));
    const int n = 6 + t % 20;
    const double alpha = 2.0;
    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution nz(0.3);
    Eigen::VectorXcd x(n);
    for (int j = 0; j < n; ++j) x[j] = Complex(normal(gen), 0.0);
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (nz(gen)) b(i, j) = 2.0 * normal(gen);
      }
      const int c = std::uniform_int_distribution<int>(0, n - 1)(gen);
      b(i, c) = 0.0;
      b(i, c) = -(b.row(i) * x)(0) / x[c];
    }
    const VertexSet J = max_set(x, 1 + t % 3);
    const ShellBuild sb = build_shell_from_vector(b, x, {}, J, 2, alpha);
    if (!sb.ok) {
      --r.instances;
      continue;
    }
    bool ok = validate_shell(sb.shell, build_graph(b, alpha)).valid;
    for (std::size_t q = 0; q < sb.shell.layers.size() && ok; ++q) {
      ok = order_stat(x, static_cast<int>(sb.shell.layers[q].size())) >= sb.thresholds[q];
    }
    if (!ok) ++r.failures;
  }
  return r;
}

SelftestResult projection_distance(std::uint64_t seed, int count) {
  SelftestResult r{"projection_distance", count, 0};
  for (int t = 0; t < count; ++t) {
    std::mt19937_64 gen(derive_trial_seed(seed, t, "proj"));
    const int n = 8 + t % 16;
    const int k = n / 2;
    const double eta = 0.5;
    const double rho = 1.0;
    const ComplexMatrix v = partial_fourier_frame(k, n);
    const ComplexMatrix w = v.transpose();
    const ComplexMatrix g = gaussian_matrix(n, n, gen);
    const ComplexMatrix e = 0.1 * gaussian_matrix(n, n, gen);
    const ComplexMatrix b = g * (ComplexMatrix::Identity(n, n) - w * w.adjoint()) + e;
    const double s = singular_values(ComplexMatrix(b * w)).front();
    const int ell = 1 + t % 3;
    VertexSet all = iota_set(n);
    VertexSet J;
    std::sample(all.begin(), all.end(), std::back_inserter(J), ell, gen);
    const BTSample cond = check_bt_conditions(v, J, eta, rho, 16.0, 1.0);
    BTConstants constants;
    constants.c_low = cond.submatrix_smin / (rho * std::sqrt(eta * k / static_cast<double>(n)));
    if (!(constants.c_low > 0.0)) {
      --r.instances;
      continue;
    }
    const ProjectionCheck pc = projection_bound_check(b, v, s, J, eta, rho, constants);
    if (pc.verdict == ProjectionVerdict::hypothesis_not_met) {
      --r.instances;
    } else if (pc.verdict == ProjectionVerdict::violated) {
      ++r.failures;
    }
  }
  return r;
}

}  // namespace

std::vector<SelftestResult> run_selftest(std::uint64_t seed, int scale) {
  const int c = std::max(scale, 1);
  return {negative_second_moment(seed, 20 * c), hermitization(seed, 20 * c),
          girko_and_stieltjes(seed, 20 * c),    hereditary_types(seed, 100 * c),
          shell_order_statistics(seed, 50 * c), projection_distance(seed, 50 * c)};
}

}  // namespace sparselab
