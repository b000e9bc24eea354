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

#include "sparselab/types_chains.hpp"

#include <algorithm>
#include <functional>

#include "sparselab/error.hpp"

namespace sparselab {

VertexSet TypePartition::finite() const {
  VertexSet out;
  for (const auto& layer : layers) out.insert(out.end(), layer.begin(), layer.end());
  return normalized(std::move(out));
}

TypePartition classify_types(const BipartiteDigraph& g, double K) {
  TypePartition p;
  p.K = K;
  p.n_right = g.n_right;
  p.assignment.assign(g.n_right, -1);
  for (int j : g.right_vertices) p.assignment[j] = 0;
  std::vector<char> covered(g.n_left, 0);
  VertexSet pending = g.right_vertices;
  for (int round = 1; !pending.empty(); ++round) {
    VertexSet layer;
    VertexSet rest;
    for (int j : pending) {
      std::size_t outside = 0;
      for (int i : g.arrow_out[j]) outside += covered[i] ? 0 : 1;
      (static_cast<double>(outside) <= K ? layer : rest).push_back(j);
    }
    if (layer.empty()) break;
    for (int j : layer) {
      p.assignment[j] = round;
      for (int i : g.arrow_in[j]) covered[i] = 1;
    }
    p.layers.push_back(std::move(layer));
    pending = std::move(rest);
  }
  p.infinite = std::move(pending);
  for (int i = 0; i < g.n_left; ++i) {
    if (covered[i]) p.closure_in.push_back(i);
  }
  return p;
}

FiniteTypeMass finite_type_mass(const TypePartition& p, const BipartiteDigraph& g) {
  if (p.n_right != g.n_right || static_cast<int>(p.assignment.size()) != g.n_right) {
    throw DimensionError("finite_type_mass: partition does not match graph");
  }
  FiniteTypeMass m;
  m.count = in_neighbors(g, p.finite()).size();
  m.fraction = g.n_left > 0 ? static_cast<double>(m.count) / g.n_left : 0.0;
  return m;
}

double default_census_k(double pn, double alpha) { return pn / (2.0 * alpha) / 2.0; }

std::string to_string(ChainKind kind) {
  switch (kind) {
    case ChainKind::cycle_free: return "cycle_free";
    case ChainKind::cyclic: return "cyclic";
    case ChainKind::general: return "general";
    case ChainKind::invalid: return "invalid";
  }
  return "invalid";
}

ChainKind classify_chain(const std::vector<int>& v) {
  const std::size_t k = v.size();
  for (std::size_t l = 0; l + 1 < k; ++l) {
    if (v[l] == v[l + 1]) return ChainKind::invalid;
  }
  std::vector<int> head(v.begin(), v.end() - (k > 0 ? 1 : 0));
  std::sort(head.begin(), head.end());
  if (std::adjacent_find(head.begin(), head.end()) != head.end()) return ChainKind::general;
  if (k == 0) return ChainKind::cycle_free;
  const bool repeats = std::binary_search(head.begin(), head.end(), v.back());
  return repeats ? ChainKind::cyclic : ChainKind::cycle_free;
}

namespace {

void require_horizontal(const BipartiteDigraph& g) {
  if (!g.has_horizontal) throw PreconditionError("chains require horizontal edges");
}

}  // namespace

ChainList enumerate_chains(const BipartiteDigraph& g, int k, const std::optional<VertexSet>& from,
                           std::size_t cap) {
  require_horizontal(g);
  if (k < 1) throw ConfigError("chain length must be >= 1");
  ChainList out;
  if (cap == 0) {
    out.truncated = true;
    return out;
  }
  const VertexSet starts = from ? normalized(*from) : g.right_vertices;
  std::vector<int> path;
  std::function<bool()> extend = [&]() -> bool {
    if (static_cast<int>(path.size()) == k) {
      if (out.chains.size() == cap) {
        out.truncated = true;
        return false;
      }
      out.chains.push_back({path, classify_chain(path), std::nullopt});
      return true;
    }
    const int last = path.back();
    for (int next : g.left_out[last]) {
      if (next == last) continue;
      path.push_back(next);
      const bool go_on = extend();
      path.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  for (int s : starts) {
    if (s < 0 || s >= g.n_right) throw IndexError("enumerate_chains: start out of range");
    path.assign(1, s);
    if (!extend()) break;
  }
  return out;
}

std::vector<char> self_balancing_vertices(const BipartiteDigraph& g, const TypePartition& p) {
  // cover[i] counts finite-type right vertices having i as in-neighbor.
  std::vector<int> cover(g.n_left, 0);
  for (int j = 0; j < g.n_right; ++j) {
    if (!p.is_finite(j)) continue;
    for (int i : g.arrow_in[j]) ++cover[i];
  }
  std::vector<char> flags(g.n_right, 0);
  for (int j = 0; j < g.n_right; ++j) {
    if (!p.is_finite(j)) continue;
    bool ok = true;
    for (int i : g.arrow_out[j]) {
      // i is an in-neighbor of j itself, which must not be counted.
      const int self = contains(g.arrow_in[j], i) ? 1 : 0;
      if (cover[i] - self < 1) {
        ok = false;
        break;
      }
    }
    flags[j] = ok ? 1 : 0;
  }
  return flags;
}

bool is_self_balancing(const std::vector<int>& vertices, const std::vector<char>& flags) {
  return std::all_of(vertices.begin(), vertices.end(), [&](int j) { return flags[j] != 0; });
}

bool is_self_balancing(const Chain& chain, const BipartiteDigraph& g, const TypePartition& p) {
  return is_self_balancing(chain.vertices, self_balancing_vertices(g, p));
}

namespace {

struct StartTally {
  std::vector<std::size_t> cycle_free;
  std::vector<std::size_t> cyclic;
  std::vector<std::size_t> sb_cf;
  std::vector<char> sb_cyclic;
  std::size_t visited = 0;
  bool exhausted = false;
};

StartTally tally_from(const BipartiteDigraph& g, const std::vector<char>& sb, int start, int k_max,
                      std::size_t budget) {
  StartTally t;
  t.cycle_free.assign(k_max, 0);
  t.cyclic.assign(k_max, 0);
  t.sb_cf.assign(k_max, 0);
  t.sb_cyclic.assign(k_max, 0);
  std::vector<char> on_path(g.n_right, 0);
  std::vector<int> path;
  auto take = [&]() {
    if (t.visited == budget) {
      t.exhausted = true;
      return false;
    }
    ++t.visited;
    return true;
  };
  // Only cycle-free prefixes can be extended to cycle-free or cyclic chains.
  std::function<bool(bool)> walk = [&](bool all_sb) -> bool {
    const int len = static_cast<int>(path.size());
    if (len == k_max) return true;
    const int last = path.back();
    for (int next : g.left_out[last]) {
      if (next == last) continue;
      if (!take()) return false;
      const bool balanced = all_sb && sb[next];
      if (on_path[next]) {
        ++t.cyclic[len];
        if (balanced) t.sb_cyclic[len] = 1;
        continue;
      }
      ++t.cycle_free[len];
      if (balanced) ++t.sb_cf[len];
      on_path[next] = 1;
      path.push_back(next);
      const bool go_on = walk(balanced);
      path.pop_back();
      on_path[next] = 0;
      if (!go_on) return false;
    }
    return true;
  };
  if (!take()) return t;
  ++t.cycle_free[0];
  if (sb[start]) ++t.sb_cf[0];
  on_path[start] = 1;
  path.push_back(start);
  walk(sb[start] != 0);
  return t;
}

}  // namespace

ChainCensus chain_census(const BipartiteDigraph& g, const TypePartition& p, int k_max,
                         std::size_t cap, Exec exec) {
  require_horizontal(g);
  if (k_max < 1) throw ConfigError("k_max must be >= 1");
  ChainCensus census;
  census.K = p.K;
  const std::vector<char> sb = self_balancing_vertices(g, p);
  const VertexSet& starts = g.right_vertices;
  const int count = static_cast<int>(starts.size());

  std::vector<StartTally> tallies(starts.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
  for (int s = 0; s < count; ++s) tallies[s] = tally_from(g, sb, starts[s], k_max, cap);

  census.rows.resize(k_max);
  for (int k = 0; k < k_max; ++k) census.rows[k].k = k + 1;
  std::size_t remaining = cap;
  auto absorb = [&](const StartTally& t) {
    for (int k = 0; k < k_max; ++k) {
      census.rows[k].cycle_free += t.cycle_free[k];
      census.rows[k].cyclic += t.cyclic[k];
      census.rows[k].self_balancing_cf += t.sb_cf[k];
      census.rows[k].self_balancing_cyclic_found =
          census.rows[k].self_balancing_cyclic_found || t.sb_cyclic[k];
    }
    census.visited += t.visited;
  };
  for (int s = 0; s < count; ++s) {
    if (!tallies[s].exhausted && tallies[s].visited <= remaining) {
      absorb(tallies[s]);
      remaining -= tallies[s].visited;
      continue;
    }
    absorb(tally_from(g, sb, starts[s], k_max, remaining));
    census.truncated = true;
    break;
  }
  for (auto& row : census.rows) row.truncated = census.truncated;
  return census;
}

}  // namespace sparselab
