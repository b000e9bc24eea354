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

#include "sparselab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "sparselab/error.hpp"
#include "sparselab/seeds.hpp"

namespace sparselab {

BipartiteDigraph BipartiteDigraph::from_edges(int n_left, int n_right,
                                              const std::vector<std::pair<int, int>>& arrows,
                                              const std::vector<std::pair<int, int>>& strong) {
  if (n_left < 0 || n_right < 0) throw DimensionError("graph sizes must be non-negative");
  BipartiteDigraph g;
  g.n_left = n_left;
  g.n_right = n_right;
  g.arrow_in.assign(n_right, {});
  g.arrow_out.assign(n_right, {});
  g.left_out.assign(n_left, {});
  g.left_in.assign(n_left, {});
  auto check = [&](int i, int j) {
    if (i < 0 || i >= n_left || j < 0 || j >= n_right) throw IndexError("graph edge out of range");
  };
  for (auto [i, j] : arrows) {
    check(i, j);
    g.arrow_in[j].push_back(i);
    g.left_out[i].push_back(j);
  }
  for (auto [i, j] : strong) {
    check(i, j);
    g.arrow_out[j].push_back(i);
    g.left_in[i].push_back(j);
  }
  for (auto* lists : {&g.arrow_in, &g.arrow_out, &g.left_out, &g.left_in}) {
    for (auto& s : *lists) s = normalized(std::move(s));
  }
  for (int j = 0; j < n_right; ++j) {
    if (!is_subset(g.arrow_out[j], g.arrow_in[j])) {
      throw PreconditionError("strong edge without matching arrow edge");
    }
  }
  g.has_horizontal = n_left == n_right && n_right > 0;
  for (int i = 0; i < n_right && g.has_horizontal; ++i) {
    g.has_horizontal = contains(g.arrow_out[i], i);
  }
  g.right_vertices = iota_set(n_right);
  return g;
}

bool BipartiteDigraph::operator==(const BipartiteDigraph& o) const {
  return n_left == o.n_left && n_right == o.n_right && arrow_in == o.arrow_in &&
         arrow_out == o.arrow_out && has_horizontal == o.has_horizontal &&
         right_vertices == o.right_vertices;
}

namespace {

template <typename Mat>
BipartiteDigraph build_from_dense(const Mat& b, double alpha) {
  if (!(alpha >= 1.0)) throw ConfigError("alpha must be >= 1");
  const double bound = 1.0 / alpha;
  std::vector<std::pair<int, int>> arrows;
  std::vector<std::pair<int, int>> strong;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const double mod = std::abs(b(i, j));
      if (mod != 0.0) arrows.emplace_back(static_cast<int>(i), static_cast<int>(j));
      if (mod != 0.0 && mod >= bound) strong.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return BipartiteDigraph::from_edges(static_cast<int>(b.rows()), static_cast<int>(b.cols()),
                                      arrows, strong);
}

template <typename Mat>
void require_square(const Mat& b) {
  if (b.rows() != b.cols()) throw DimensionError("build_graph: matrix must be square");
}

}  // namespace

BipartiteDigraph build_graph(const ComplexMatrix& b, double alpha) {
  require_square(b);
  return build_from_dense(b, alpha);
}

BipartiteDigraph build_graph(const RealMatrix& b, double alpha) {
  require_square(b);
  return build_from_dense(b, alpha);
}

BipartiteDigraph build_graph(const ShiftedMatrix& b, double alpha) { return build_graph(b.values, alpha); }

BipartiteDigraph build_graph(const MatrixSample& a, double alpha) { return build_graph(a.entries, alpha); }

BipartiteDigraph build_graph_rect(const ComplexMatrix& b, double alpha) {
  return build_from_dense(b, alpha);
}

BipartiteDigraph transpose(const BipartiteDigraph& g) {
  BipartiteDigraph t;
  t.n_left = g.n_right;
  t.n_right = g.n_left;
  t.arrow_in = g.left_out;
  t.left_out = g.arrow_in;
  t.arrow_out = g.left_in;
  t.left_in = g.arrow_out;
  t.has_horizontal = g.has_horizontal;
  t.right_vertices = iota_set(t.n_right);
  return t;
}

BipartiteDigraph remove_right(const BipartiteDigraph& g, const VertexSet& removed) {
  VertexSet gone = normalized(removed);
  for (int j : gone) {
    if (j < 0 || j >= g.n_right) throw IndexError("remove_right: vertex out of range");
  }
  BipartiteDigraph h = g;
  for (int j : gone) {
    h.arrow_in[j].clear();
    h.arrow_out[j].clear();
  }
  for (int i = 0; i < h.n_left; ++i) {
    h.left_out[i] = set_difference(h.left_out[i], gone);
    h.left_in[i] = set_difference(h.left_in[i], gone);
  }
  h.right_vertices = set_difference(g.right_vertices, gone);
  h.has_horizontal = h.has_horizontal && gone.empty();
  return h;
}

VertexSet neighbors(const BipartiteDigraph& g, Side side, Direction dir, const VertexSet& set) {
  const std::vector<VertexSet>* lists = nullptr;
  if (side == Side::right) {
    lists = dir == Direction::in ? &g.arrow_in : &g.arrow_out;
  } else {
    lists = dir == Direction::in ? &g.left_in : &g.left_out;
  }
  VertexSet out;
  for (int v : set) {
    if (v < 0 || v >= static_cast<int>(lists->size())) throw IndexError("neighbors: vertex out of range");
    const auto& s = (*lists)[v];
    out.insert(out.end(), s.begin(), s.end());
  }
  return normalized(std::move(out));
}

VertexSet in_neighbors(const BipartiteDigraph& g, const VertexSet& right_set) {
  return neighbors(g, Side::right, Direction::in, right_set);
}

VertexSet out_neighbors(const BipartiteDigraph& g, const VertexSet& right_set) {
  return neighbors(g, Side::right, Direction::out, right_set);
}

double expansion_deficit(const BipartiteDigraph& g, const VertexSet& set, double slack) {
  double total = 0.0;
  for (int j : set) total += static_cast<double>(g.arrow_in[j].size());
  return total - static_cast<double>(in_neighbors(g, set).size()) -
         slack * static_cast<double>(set.size());
}

namespace {

struct Candidate {
  VertexSet set;
  double deficit;
};

bool worse_first(const Candidate& a, const Candidate& b) {
  if (a.deficit != b.deficit) return a.deficit > b.deficit;
  return a.set < b.set;
}

class ExpansionScanner {
 public:
  ExpansionScanner(const BipartiteDigraph& g, double slack, std::size_t keep)
      : g_(g), slack_(slack), keep_(keep) {}

  void consider(VertexSet set) {
    ++checked_;
    const double d = expansion_deficit(g_, set, slack_);
    max_deficit_ = std::max(max_deficit_, d);
    if (d > 0.0) {
      found_.push_back({std::move(set), d});
      if (found_.size() > 4 * keep_ + 64) trim();
    }
  }

  void merge(ExpansionScanner&& other) {
    checked_ += other.checked_;
    max_deficit_ = std::max(max_deficit_, other.max_deficit_);
    for (auto& c : other.found_) found_.push_back(std::move(c));
    trim();
  }

  void trim() {
    std::sort(found_.begin(), found_.end(), worse_first);
    found_.erase(std::unique(found_.begin(), found_.end(),
                             [](const Candidate& a, const Candidate& b) { return a.set == b.set; }),
                 found_.end());
    if (found_.size() > keep_) found_.resize(keep_);
  }

  std::size_t checked_ = 0;
  double max_deficit_ = -std::numeric_limits<double>::infinity();
  std::vector<Candidate> found_;

 private:
  const BipartiteDigraph& g_;
  double slack_;
  std::size_t keep_;
};

// Right vertices sharing at least one in-neighbor with j.
std::vector<VertexSet> co_occurrence(const BipartiteDigraph& g) {
  std::vector<VertexSet> co(g.n_right);
  for (int j : g.right_vertices) {
    VertexSet acc;
    for (int i : g.arrow_in[j]) acc.insert(acc.end(), g.left_out[i].begin(), g.left_out[i].end());
    acc = normalized(std::move(acc));
    acc.erase(std::remove(acc.begin(), acc.end(), j), acc.end());
    co[j] = std::move(acc);
  }
  return co;
}

bool co_linked(const std::vector<VertexSet>& co, int a, int b) { return contains(co[a], b); }

}  // namespace

ExpansionReport expansion_check(const BipartiteDigraph& g, double epsilon, double pn, int k_max,
                                const ExpansionOptions& options) {
  ExpansionReport report;
  const double slack = epsilon * pn;
  const std::vector<VertexSet> co = co_occurrence(g);
  const int n = g.n_right;
  const bool parallel = options.exec == Exec::parallel;
  ExpansionScanner total(g, slack, options.max_reported);

  // Pairs and connected triples. A set whose co-occurrence graph is
  // disconnected has a deficit no larger than one of its components, so
  // only connected sets need to be listed.
  if (k_max >= 2) {
    std::vector<ExpansionScanner> parts;
#pragma omp parallel if (parallel)
    {
      ExpansionScanner local(g, slack, options.max_reported);
#pragma omp for schedule(dynamic, 16) nowait
      for (int a = 0; a < n; ++a) {
        for (int b : co[a]) {
          if (b <= a) continue;
          local.consider({a, b});
          if (k_max < 3) continue;
          VertexSet thirds = set_union(co[a], co[b]);
          for (int c : thirds) {
            if (c == a || c == b) continue;
            VertexSet t = normalized({a, b, c});
            // Count each triple once, from its smallest linked pair.
            std::pair<int, int> first{-1, -1};
            const std::pair<int, int> pairs[3] = {{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}};
            for (const auto& pr : pairs) {
              if (co_linked(co, pr.first, pr.second)) {
                first = pr;
                break;
              }
            }
            if (first == std::pair<int, int>{a, b}) local.consider(std::move(t));
          }
        }
      }
#pragma omp critical
      parts.push_back(std::move(local));
    }
    for (auto& p : parts) total.merge(std::move(p));
  }

  if (k_max > 3) {
    report.sampled = true;
    VertexSet order = g.right_vertices;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return g.arrow_in[a].size() > g.arrow_in[b].size();
    });
    // Top-degree prefixes.
    for (int s = 4; s <= k_max && s <= static_cast<int>(order.size()); ++s) {
      total.consider(normalized(VertexSet(order.begin(), order.begin() + s)));
    }
    // Greedy growth from the highest-degree vertices: add the co-occurring
    // vertex with the largest overlap with the current in-neighborhood.
    const int starts = std::min<int>(static_cast<int>(order.size()), 32);
    for (int s = 0; s < starts; ++s) {
      VertexSet set{order[s]};
      VertexSet hood = g.arrow_in[order[s]];
      while (static_cast<int>(set.size()) < k_max) {
        int best = -1;
        std::size_t best_gain = 0;
        VertexSet frontier;
        for (int v : set) frontier = set_union(frontier, co[v]);
        frontier = set_difference(frontier, set);
        for (int v : frontier) {
          const std::size_t gain = set_intersection(hood, g.arrow_in[v]).size();
          if (best < 0 || gain > best_gain) {
            best = v;
            best_gain = gain;
          }
        }
        if (best < 0) break;
        set = normalized([&] { VertexSet t = set; t.push_back(best); return t; }());
        hood = set_union(hood, g.arrow_in[best]);
        if (set.size() >= 4) total.consider(set);
      }
    }
    // Random connected sets.
    std::vector<ExpansionScanner> parts;
    const auto samples = static_cast<long long>(options.random_samples);
#pragma omp parallel if (parallel)
    {
      ExpansionScanner local(g, slack, options.max_reported);
#pragma omp for schedule(dynamic, 8) nowait
      for (long long s = 0; s < samples; ++s) {
        if (order.empty()) continue;
        std::mt19937_64 gen(derive_trial_seed(options.seed, static_cast<std::uint64_t>(s), "expansion"));
        std::uniform_int_distribution<int> pick_start(0, static_cast<int>(order.size()) - 1);
        std::uniform_int_distribution<int> pick_size(4, k_max);
        const int target = pick_size(gen);
        VertexSet set{order[pick_start(gen)]};
        while (static_cast<int>(set.size()) < target) {
          VertexSet frontier;
          for (int v : set) frontier = set_union(frontier, co[v]);
          frontier = set_difference(frontier, set);
          if (frontier.empty()) break;
          std::uniform_int_distribution<int> pick(0, static_cast<int>(frontier.size()) - 1);
          set.push_back(frontier[pick(gen)]);
          set = normalized(std::move(set));
        }
        if (set.size() >= 4) local.consider(std::move(set));
      }
#pragma omp critical
      parts.push_back(std::move(local));
    }
    for (auto& p : parts) total.merge(std::move(p));
  }

  total.trim();
  report.sets_checked = total.checked_;
  report.max_deficit = total.max_deficit_;
  report.holds = total.found_.empty();
  for (auto& c : total.found_) report.worst_violations.push_back({std::move(c.set), c.deficit});
  return report;
}

namespace {

std::vector<std::size_t> tail_counts(const std::vector<VertexSet>& lists, const VertexSet* only,
                                     double pn) {
  std::vector<std::size_t> degrees;
  if (only) {
    for (int v : *only) degrees.push_back(lists[v].size());
  } else {
    for (const auto& s : lists) degrees.push_back(s.size());
  }
  std::vector<std::size_t> counts;
  for (int u = 0;; ++u) {
    const double threshold = 2.0 * pn + u;
    std::size_t c = 0;
    for (std::size_t d : degrees) c += static_cast<double>(d) >= threshold ? 1 : 0;
    counts.push_back(c);
    if (c == 0) break;
  }
  return counts;
}

double certify(const std::vector<std::size_t>& counts, double pn, int n) {
  double c = std::numeric_limits<double>::infinity();
  for (std::size_t u = 0; u < counts.size(); ++u) {
    if (counts[u] == 0) continue;
    const double ratio = static_cast<double>(counts[u]) / n;
    c = std::min(c, std::max(0.0, -std::log(ratio) / (pn + static_cast<double>(u))));
  }
  return c;
}

}  // namespace

DegreeTailReport degree_tail_report(const BipartiteDigraph& g, double pn) {
  DegreeTailReport r;
  r.pn = pn;
  r.n = std::max(g.n_left, g.n_right);
  r.left_out_counts = tail_counts(g.left_out, nullptr, pn);
  r.right_in_counts = tail_counts(g.arrow_in, &g.right_vertices, pn);
  if (pn > 0.0) {
    r.certified_c = std::min(certify(r.left_out_counts, pn, std::max(g.n_left, 1)),
                             certify(r.right_in_counts, pn, std::max(g.n_right, 1)));
  } else {
    const bool any = r.left_out_counts[0] > 0 || r.right_in_counts[0] > 0;
    r.certified_c = any ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return r;
}

UnionSupportReport union_support_check(const BipartiteDigraph& g, double pn, double c) {
  UnionSupportReport r;
  auto sorted_degrees = [](const std::vector<VertexSet>& lists, const VertexSet* only) {
    std::vector<double> d;
    if (only) {
      for (int v : *only) d.push_back(static_cast<double>(lists[v].size()));
    } else {
      for (const auto& s : lists) d.push_back(static_cast<double>(s.size()));
    }
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
  };
  const std::vector<double> left = sorted_degrees(g.left_out, nullptr);
  const std::vector<double> right = sorted_degrees(g.arrow_in, &g.right_vertices);
  const int n = std::max(g.n_left, g.n_right);
  double acc_l = 0.0;
  double acc_r = 0.0;
  for (int s = 1; s <= n; ++s) {
    if (s <= static_cast<int>(left.size())) acc_l += left[s - 1];
    if (s <= static_cast<int>(right.size())) acc_r += right[s - 1];
    r.left_sums.push_back(acc_l);
    r.right_sums.push_back(acc_r);
    const double log_term = std::log(static_cast<double>(n) / s);
    double bound = std::numeric_limits<double>::infinity();
    if (c > 0.0) {
      double w = 0.0;
      if (std::isfinite(c)) w = std::max(0.0, std::ceil(log_term / c - pn));
      const double t = 2.0 * pn + w;
      double tail = 0.0;
      if (std::isfinite(c)) {
        tail = n * std::exp(-c * (pn + w)) * (t + 1.0 / (1.0 - std::exp(-c)));
      }
      bound = s * t + tail;
    }
    r.certified_bounds.push_back(bound);
    const double denom = (pn + log_term) * s;
    if (denom > 0.0) {
      r.c_empirical = std::max(r.c_empirical, std::max(acc_l, acc_r) / denom);
      r.c_certified = std::max(r.c_certified, bound / denom);
    }
    if (acc_l > bound || acc_r > bound) r.holds = false;
  }
  return r;
}

L1TailReport l1_tail_report(const RealMatrix& a, double pn, const std::vector<double>& extra_r) {
  L1TailReport rep;
  if (!(pn > 0.0)) return rep;
  const Eigen::VectorXd rows = a.cwiseAbs().rowwise().sum();
  const Eigen::VectorXd cols = a.cwiseAbs().colwise().sum().transpose();
  const double biggest = std::max(rows.size() ? rows.maxCoeff() : 0.0, cols.size() ? cols.maxCoeff() : 0.0);
  int top = 0;
  if (biggest > 0.0) top = std::max(0, static_cast<int>(std::ceil(std::log2(biggest / (pn * pn)))));
  std::vector<double> radii;
  for (int t = 0; t <= top; ++t) radii.push_back(pn * std::ldexp(1.0, t));
  for (double r : extra_r) radii.push_back(r);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  const double n = static_cast<double>(std::max(a.rows(), a.cols()));
  for (double r : radii) {
    L1TailRow row;
    row.r = r;
    row.rows = static_cast<std::size_t>((rows.array() >= r * pn).count());
    row.cols = static_cast<std::size_t>((cols.array() >= r * pn).count());
    row.allowed = n / std::pow(r, 0.9);
    row.holds = static_cast<double>(row.rows) <= row.allowed && static_cast<double>(row.cols) <= row.allowed;
    rep.holds = rep.holds && row.holds;
    rep.grid.push_back(row);
  }
  return rep;
}

L1TailReport l1_tail_report(const MatrixSample& a, const std::vector<double>& extra_r) {
  return l1_tail_report(a.entries, a.pn(), extra_r);
}

void write_graph(std::ostream& os, const BipartiteDigraph& g) {
  os << g.n_left << ' ' << g.n_right << '\n';
  for (int i = 0; i < g.n_left; ++i) {
    for (int j : g.left_out[i]) os << "A " << i << ' ' << j << '\n';
  }
  for (int i = 0; i < g.n_left; ++i) {
    for (int j : g.left_in[i]) os << "O " << i << ' ' << j << '\n';
  }
  if (!os) throw IoError("failed writing graph");
}

BipartiteDigraph read_graph(std::istream& is) {
  int n_left = 0;
  int n_right = 0;
  if (!(is >> n_left >> n_right)) throw IoError("graph file: malformed header");
  std::vector<std::pair<int, int>> arrows;
  std::vector<std::pair<int, int>> strong;
  std::string tag;
  int i = 0;
  int j = 0;
  while (is >> tag >> i >> j) {
    if (tag == "A") {
      arrows.emplace_back(i, j);
    } else if (tag == "O") {
      strong.emplace_back(i, j);
    } else {
      throw IoError("graph file: unknown edge tag " + tag);
    }
  }
  if (!is.eof()) throw IoError("graph file: malformed edge line");
  return BipartiteDigraph::from_edges(n_left, n_right, arrows, strong);
}

}  // namespace sparselab
