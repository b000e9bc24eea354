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

#include "sparselab/shells.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>

#include "sparselab/error.hpp"
#include "sparselab/types_chains.hpp"

namespace sparselab {

std::vector<double> shell_thresholds(double min_center, double alpha, double L, int d) {
  std::vector<double> t(static_cast<std::size_t>(d) + 1);
  t[0] = min_center;
  const double factor = 2.0 * alpha * L;
  for (int q = 1; q <= d; ++q) {
    t[q] = factor > 0.0 ? t[q - 1] / factor : std::numeric_limits<double>::infinity();
  }
  return t;
}

ShellBuild build_shell_from_vector(const ComplexMatrix& b, const Eigen::VectorXcd& x,
                                   const VertexSet& m_rows, const VertexSet& j_cols, int d,
                                   double alpha) {
  if (x.size() != b.cols()) throw DimensionError("build_shell_from_vector: x does not match B");
  if (d < 1) throw ConfigError("shell depth must be >= 1");
  if (!(alpha >= 1.0)) throw ConfigError("alpha must be >= 1");
  const VertexSet J = normalized(j_cols);
  const VertexSet M = normalized(m_rows);
  if (J.empty()) throw PreconditionError("build_shell_from_vector: J must be nonempty");
  for (int j : J) {
    if (j < 0 || j >= b.cols()) throw IndexError("build_shell_from_vector: J out of range");
  }
  for (int i : M) {
    if (i < 0 || i >= b.rows()) throw IndexError("build_shell_from_vector: M out of range");
  }
  const Eigen::VectorXd ax = x.cwiseAbs();
  double min_center = std::numeric_limits<double>::infinity();
  for (int j : J) min_center = std::min(min_center, ax[j]);
  if (!(min_center > 0.0)) {
    throw PreconditionError("build_shell_from_vector: x must be nonzero on every index of J");
  }

  const int rows = static_cast<int>(b.rows());
  const int cols = static_cast<int>(b.cols());
  std::vector<char> in_m(rows, 0);
  for (int i : M) in_m[i] = 1;

  ShellBuild out;
  out.min_center = min_center;
  double L = 0.0;
  for (int i = 0; i < rows; ++i) {
    if (!in_m[i]) L = std::max(L, b.row(i).cwiseAbs().sum());
  }
  out.L = L;
  out.thresholds = shell_thresholds(min_center, alpha, L, d);
  const double t_d = out.thresholds[d];
  const double rhs = t_d / (2.0 * alpha);
  const Eigen::VectorXcd bx = b * x;
  for (int i = 0; i < rows; ++i) {
    if (!in_m[i] && !(std::abs(bx[i]) <= rhs)) {
      out.failure = ShellFailure::hypothesis;
      out.row = i;
      return out;
    }
  }

  const double strong = 1.0 / alpha;
  const double factor = 2.0 * alpha * L;
  Shell& s = out.shell;
  s.M = M;
  s.layers.push_back(J);
  for (int q = 0; q < d; ++q) {
    VertexSet next;
    for (int l : s.layers[q]) {
      if (!(ax[l] >= t_d)) continue;
      for (int i = 0; i < rows; ++i) {
        if (in_m[i] || !(std::abs(b(i, l)) >= strong)) continue;
        const double floor_h = ax[l] / factor;
        int best = -1;
        for (int h = 0; h < cols; ++h) {
          if (h == l || b(i, h) == Complex(0.0, 0.0) || !(ax[h] >= floor_h)) continue;
          if (best < 0 || ax[h] > ax[best]) best = h;
        }
        if (best < 0) {
          out.failure = ShellFailure::no_witness;
          out.row = i;
          return out;
        }
        next.push_back(best);
        s.witness.push_back({q, i, l, best});
      }
    }
    s.layers.push_back(normalized(std::move(next)));
  }
  out.ok = true;
  return out;
}

ShellValidation validate_shell(const Shell& s, const BipartiteDigraph& g) {
  ShellValidation v;
  const int d = s.depth();
  for (int l = 0; l < d; ++l) {
    const VertexSet& next = s.layers[l + 1];
    for (int j : s.layers[l]) {
      if (j < 0 || j >= g.n_right) throw IndexError("validate_shell: vertex out of range");
      for (int i : g.arrow_out[j]) {
        if (contains(s.M, i)) continue;
        bool met = false;
        for (int jp : g.left_out[i]) {
          if (jp != j && contains(next, jp)) {
            met = true;
            break;
          }
        }
        if (!met) {
          v.valid = false;
          v.violations.push_back({l, j, i});
        }
      }
    }
  }
  return v;
}

std::vector<VertexSet> maximal_layers(const BipartiteDigraph& g, const VertexSet& m_rows, int d) {
  if (d < 1) throw ConfigError("shell depth must be >= 1");
  const VertexSet M = normalized(m_rows);
  std::vector<VertexSet> f(static_cast<std::size_t>(d) + 1);
  f[d] = g.right_vertices;
  for (int l = d - 1; l >= 0; --l) {
    for (int j : g.right_vertices) {
      bool ok = true;
      for (int i : g.arrow_out[j]) {
        if (contains(M, i)) continue;
        bool met = false;
        for (int jp : g.left_out[i]) {
          if (jp != j && contains(f[l + 1], jp)) {
            met = true;
            break;
          }
        }
        if (!met) {
          ok = false;
          break;
        }
      }
      if (ok) f[l].push_back(j);
    }
  }
  return f;
}

std::optional<Shell> maximal_shell(const BipartiteDigraph& g, const VertexSet& m_rows,
                                   const VertexSet& j_cols, int d) {
  auto f = maximal_layers(g, m_rows, d);
  const VertexSet J = normalized(j_cols);
  if (!is_subset(J, f[0])) return std::nullopt;
  Shell s;
  s.M = normalized(m_rows);
  s.layers = std::move(f);
  s.layers[0] = J;
  return s;
}

std::optional<Shell> minimal_shell(const BipartiteDigraph& g, const VertexSet& m_rows,
                                   const VertexSet& j_cols, int d) {
  const auto f = maximal_layers(g, m_rows, d);
  const VertexSet J = normalized(j_cols);
  if (!is_subset(J, f[0])) return std::nullopt;
  Shell s;
  s.M = normalized(m_rows);
  s.layers.push_back(J);
  for (int l = 0; l < d; ++l) {
    VertexSet next;
    for (int j : s.layers[l]) {
      for (int i : g.arrow_out[j]) {
        if (contains(s.M, i)) continue;
        bool met = false;
        for (int jp : g.left_out[i]) {
          if (jp != j && contains(next, jp)) {
            met = true;
            break;
          }
        }
        if (met) continue;
        for (int jp : g.left_out[i]) {
          if (jp != j && contains(f[l + 1], jp)) {
            next.insert(std::lower_bound(next.begin(), next.end(), jp), jp);
            s.witness.push_back({l, i, j, jp});
            break;
          }
        }
      }
    }
    s.layers.push_back(std::move(next));
  }
  return s;
}

std::string to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::holds: return "holds";
    case GrowthVerdict::violated: return "violated";
    case GrowthVerdict::hypothesis_not_met: return "hypothesis_not_met";
    case GrowthVerdict::report_only: return "report_only";
  }
  return "report_only";
}

bool expansion_holds_exhaustive(const BipartiteDigraph& g, double slack, int max_size) {
  const VertexSet& right = g.right_vertices;
  const int m = static_cast<int>(right.size());
  if (m > 20) throw PreconditionError("exhaustive expansion check needs at most 20 right vertices");
  const std::size_t words = (static_cast<std::size_t>(g.n_left) + 63) / 64;
  std::vector<std::vector<std::uint64_t>> bits(m, std::vector<std::uint64_t>(words, 0));
  for (int a = 0; a < m; ++a) {
    for (int i : g.arrow_in[right[a]]) bits[a][i / 64] |= std::uint64_t{1} << (i % 64);
  }
  // Subsets are visited in increasing mask order; each union reuses the
  // union of the mask without its lowest element.
  const std::uint32_t total = std::uint32_t{1} << m;
  std::vector<std::vector<std::uint64_t>> unions(total);
  std::vector<std::size_t> degree_sum(total, 0);
  unions[0].assign(words, 0);
  for (std::uint32_t mask = 1; mask < total; ++mask) {
    const int low = __builtin_ctz(mask);
    const std::uint32_t rest = mask & (mask - 1);
    unions[mask] = unions[rest];
    for (std::size_t w = 0; w < words; ++w) unions[mask][w] |= bits[low][w];
    degree_sum[mask] = degree_sum[rest] + g.arrow_in[right[low]].size();
    const int size = __builtin_popcount(mask);
    if (size > max_size) continue;
    std::size_t hood = 0;
    for (std::uint64_t word : unions[mask]) hood += static_cast<std::size_t>(__builtin_popcountll(word));
    if (static_cast<double>(hood) < static_cast<double>(degree_sum[mask]) - slack * size) return false;
  }
  return true;
}

GrowthCheck shell_growth_check(const Shell& s, const BipartiteDigraph& g, double K, double epsilon,
                               double delta, const VertexSet& j_cols) {
  if (!(epsilon > 0.0 && epsilon < 1.0 / 32.0)) throw ConfigError("epsilon must lie in (0, 1/32)");
  if (!(delta > 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in (0, 1]");
  if (!(K > 0.0)) throw ConfigError("K must be positive");
  GrowthCheck out;
  const VertexSet J = normalized(j_cols);
  const double m = static_cast<double>(g.right_vertices.size());
  for (const auto& layer : s.layers) out.sizes.push_back(layer.size());
  const double cap = std::floor(delta * m / 4.0);
  for (int l = 0; l <= s.depth(); ++l) {
    out.bounds.push_back(std::min(cap, std::pow(32.0 * epsilon, -l) * static_cast<double>(J.size())));
  }
  auto reject = [&](std::string why) {
    out.verdict = GrowthVerdict::hypothesis_not_met;
    out.failed_hypothesis = std::move(why);
    return out;
  };
  if (s.layers.empty() || s.depth() < 1) return reject("shell depth must be >= 1");
  if (J.empty()) return reject("J is empty");
  if (s.layers[0] != J) return reject("shell is not centered in J");
  if (!validate_shell(s, g).valid) return reject("not a shell");
  if (static_cast<double>(J.size()) > delta * m / 2.0) return reject("|J| > delta m / 2");
  const TypePartition types = classify_types(g, K);
  if (!is_subset(J, types.infinite)) return reject("J not in the infinite type");
  double m_out = 0.0;
  for (int i : s.M) m_out += static_cast<double>(g.left_out[i].size());
  if (2.0 / K * m_out > static_cast<double>(J.size()) / 2.0) return reject("M too heavy");
  const int max_size = static_cast<int>(std::floor(delta * m));
  const double slack = epsilon * K;
  if (m <= 16) {
    out.exhaustive = true;
    if (!expansion_holds_exhaustive(g, slack, max_size)) return reject("expansion");
  } else {
    ExpansionOptions opts;
    opts.exec = Exec::serial;
    if (!expansion_check(g, slack, 1.0, max_size, opts).holds) return reject("expansion");
  }
  bool ok = true;
  for (int l = 0; l <= s.depth(); ++l) {
    if (static_cast<double>(out.sizes[l]) < out.bounds[l]) ok = false;
  }
  if (!out.exhaustive) {
    out.verdict = GrowthVerdict::report_only;
  } else {
    out.verdict = ok ? GrowthVerdict::holds : GrowthVerdict::violated;
  }
  return out;
}

std::vector<double> order_stat_profile(const Eigen::VectorXd& x, const std::vector<int>& marks) {
  std::vector<double> a(x.data(), x.data() + x.size());
  for (double& v : a) v = std::abs(v);
  std::sort(a.begin(), a.end(), std::greater<>());
  std::vector<double> out;
  for (int q : marks) {
    if (q < 1 || q > static_cast<int>(a.size())) throw IndexError("order_stat_profile: mark out of range");
    out.push_back(a[q - 1]);
  }
  return out;
}

std::vector<double> order_stat_profile(const Eigen::VectorXcd& x, const std::vector<int>& marks) {
  return order_stat_profile(Eigen::VectorXd(x.cwiseAbs()), marks);
}

void write_shell(std::ostream& os, const Shell& s) {
  for (const auto& layer : s.layers) {
    for (std::size_t k = 0; k < layer.size(); ++k) os << (k ? " " : "") << layer[k];
    os << '\n';
  }
  if (!os) throw IoError("failed writing shell");
}

}  // namespace sparselab
