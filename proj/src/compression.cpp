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

#include "sparselab/compression.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>

#include "sparselab/error.hpp"

namespace sparselab {

std::vector<VertexSet> AdmissibleMap::preimages() const {
  std::vector<VertexSet> pre(m);
  for (int i = 0; i < n; ++i) pre[table[i]].push_back(i);
  return pre;
}

bool AdmissibleMap::is_glued(int i) const {
  for (const auto& [a, b] : glued_pairs) {
    if (a == i || b == i) return true;
  }
  return false;
}

AdmissibleMap identity_map(int n, double K) { return glue_pairs(n, {}, K); }

AdmissibleMap glue_pairs(int n, std::vector<std::pair<int, int>> pairs, double K) {
  if (n < 0) throw ConfigError("map size must be non-negative");
  std::vector<int> partner(n, -1);
  for (auto& [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw IndexError("glue_pairs: vertex out of range");
    if (a == b) throw ConfigError("glue_pairs: a vertex cannot be glued to itself");
    if (partner[a] >= 0 || partner[b] >= 0) throw ConfigError("glue_pairs: vertex glued twice");
    if (a > b) std::swap(a, b);
    partner[a] = b;
    partner[b] = a;
  }
  std::sort(pairs.begin(), pairs.end());
  AdmissibleMap phi;
  phi.n = n;
  phi.K = K;
  phi.glued_pairs = std::move(pairs);
  phi.table.assign(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (phi.table[i] >= 0) continue;
    phi.table[i] = next;
    if (partner[i] >= 0) phi.table[partner[i]] = next;
    ++next;
  }
  phi.m = next;
  return phi;
}

std::string to_string(MapStage stage) {
  switch (stage) {
    case MapStage::none: return "none";
    case MapStage::filter: return "filter";
    case MapStage::pairing: return "pairing";
    case MapStage::thinning: return "thinning";
  }
  return "none";
}

double lightness(const AdmissibleMap& phi, const BipartiteDigraph& g) {
  std::vector<char> glued(phi.n, 0);
  for (const auto& [a, b] : phi.glued_pairs) glued[a] = glued[b] = 1;
  std::size_t worst = 0;
  for (int j = 0; j < g.n_right; ++j) {
    std::size_t c = 0;
    for (int i : g.arrow_in[j]) c += glued[i];
    worst = std::max(worst, c);
  }
  return static_cast<double>(worst);
}

MapBuildResult build_admissible_map(const BipartiteDigraph& g, const TypePartition& p,
                                    const VertexSet& j_set, double epsilon, double pn,
                                    std::uint64_t seed, const MapBuildOptions& options) {
  if (!(epsilon > 0.0 && epsilon < 1.0 / 32.0)) throw ConfigError("epsilon must lie in (0, 1/32)");
  if (options.retry_budget < 1) throw ConfigError("retry budget must be >= 1");
  const VertexSet j_norm = normalized(j_set);
  for (int i : j_norm) {
    if (i < 0 || i >= g.n_left) throw IndexError("build_admissible_map: vertex out of range");
  }
  const double ell = static_cast<double>(j_norm.size());
  const int target = options.target_pairs ? *options.target_pairs
                                          : static_cast<int>(std::floor(epsilon * ell));
  MapBuildResult res;
  if (target <= 0) {
    res.ok = true;
    res.map = identity_map(g.n_left, p.K);
    return res;
  }

  // Step 1: drop heavy rows, rows touching finite types and in-neighbors of
  // heavy columns.
  VertexSet heavy;
  for (int j : g.right_vertices) {
    if (static_cast<double>(g.arrow_in[j].size()) >= 2.0 * pn) heavy.push_back(j);
  }
  const VertexSet heavy_in = in_neighbors(g, heavy);
  VertexSet kept;
  for (int i : j_norm) {
    const auto& out = g.left_out[i];
    if (static_cast<double>(out.size()) > 2.0 * pn) continue;
    if (!is_subset(out, p.infinite)) continue;
    if (contains(heavy_in, i)) continue;
    kept.push_back(i);
  }
  res.filtered = kept.size();
  if (static_cast<int>(kept.size()) < 2 * target) {
    res.failed_stage = MapStage::filter;
    return res;
  }

  // Step 2: greedy pairing in a seeded random order.
  std::mt19937_64 gen(seed);
  std::shuffle(kept.begin(), kept.end(), gen);
  std::vector<std::pair<int, int>> h1;
  std::vector<char> used(kept.size(), 0);
  for (std::size_t a = 0; a < kept.size(); ++a) {
    if (used[a]) continue;
    for (std::size_t b = a + 1; b < kept.size(); ++b) {
      if (used[b]) continue;
      if (!set_intersection(g.left_out[kept[a]], g.left_out[kept[b]]).empty()) continue;
      used[a] = used[b] = 1;
      h1.emplace_back(kept[a], kept[b]);
      break;
    }
  }
  res.paired = h1.size();
  if (static_cast<int>(h1.size()) < target) {
    res.failed_stage = MapStage::pairing;
    return res;
  }

  // Step 3: random thinning against the lightness bound.
  const double light_cap = 64.0 * epsilon * pn;
  const std::size_t q_size = std::min(
      h1.size(), std::max<std::size_t>(static_cast<std::size_t>(target),
                                       static_cast<std::size_t>(std::floor(2.0 * epsilon * ell))));
  for (int attempt = 0; attempt < options.retry_budget; ++attempt) {
    std::vector<std::pair<int, int>> q;
    std::sample(h1.begin(), h1.end(), std::back_inserter(q), q_size, gen);
    std::vector<int> load(g.n_right, 0);
    for (const auto& [a, b] : q) {
      for (int u : set_union(g.left_out[a], g.left_out[b])) ++load[u];
    }
    std::vector<std::pair<int, int>> h2;
    for (const auto& [a, b] : q) {
      bool fine = true;
      for (int u : set_union(g.left_out[a], g.left_out[b])) {
        if (load[u] > light_cap) {
          fine = false;
          break;
        }
      }
      if (fine) h2.emplace_back(a, b);
      if (static_cast<int>(h2.size()) == target) break;
    }
    if (static_cast<int>(h2.size()) == target) {
      res.ok = true;
      res.map = glue_pairs(g.n_left, h2, p.K);
      res.map.lightness_u = lightness(res.map, g);
      return res;
    }
  }
  res.failed_stage = MapStage::thinning;
  return res;
}

MapValidation validate_map(const AdmissibleMap& phi, const BipartiteDigraph& g, const TypePartition& p) {
  MapValidation v;
  auto fail = [&](std::string msg) {
    v.admissible = false;
    v.violations.push_back(std::move(msg));
  };
  if (phi.n != g.n_left || static_cast<int>(phi.table.size()) != phi.n) {
    fail("domain size does not match the graph");
    return v;
  }
  std::vector<VertexSet> pre(std::max(phi.m, 0));
  for (int i = 0; i < phi.n; ++i) {
    const int t = phi.table[i];
    if (t < 0 || t >= phi.m) {
      fail("image of " + std::to_string(i) + " out of range");
      return v;
    }
    pre[t].push_back(i);
  }
  std::vector<std::pair<int, int>> derived;
  for (int t = 0; t < phi.m; ++t) {
    if (pre[t].empty()) fail("not surjective: " + std::to_string(t) + " has no preimage");
    if (pre[t].size() > 2) fail("preimage of " + std::to_string(t) + " has more than two elements");
    if (pre[t].size() == 2) derived.emplace_back(pre[t][0], pre[t][1]);
  }
  if (derived != phi.glued_pairs) fail("glued pair list does not match the table");
  for (const auto& [a, b] : derived) {
    const auto& oa = g.left_out[a];
    const auto& ob = g.left_out[b];
    const std::string name = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    if (!set_intersection(oa, ob).empty()) fail("pair " + name + " has overlapping out-neighbors");
    if (!is_subset(set_union(oa, ob), p.infinite)) {
      fail("pair " + name + " has an out-neighbor of finite type");
    }
  }
  AdmissibleMap canon = phi;
  canon.glued_pairs = derived;
  v.lightness_u = lightness(canon, g);
  return v;
}

BipartiteDigraph compress_graph(const BipartiteDigraph& g, const AdmissibleMap& phi) {
  if (phi.n != g.n_left) throw DimensionError("compress_graph: map does not match graph");
  std::vector<std::pair<int, int>> arrows;
  std::vector<std::pair<int, int>> strong;
  for (int i = 0; i < g.n_left; ++i) {
    for (int j : g.left_out[i]) arrows.emplace_back(phi.table[i], j);
    for (int j : g.left_in[i]) strong.emplace_back(phi.table[i], j);
  }
  BipartiteDigraph out = BipartiteDigraph::from_edges(phi.m, g.n_right, arrows, strong);
  out.right_vertices = g.right_vertices;
  return out;
}

Compressed apply_compression(const ComplexMatrix& b, const AdmissibleMap& phi, double alpha) {
  if (b.rows() != b.cols()) throw DimensionError("apply_compression: matrix must be square");
  if (b.rows() != phi.n) throw DimensionError("apply_compression: map does not match matrix");
  const BipartiteDigraph g = build_graph(b, alpha);
  const TypePartition p = classify_types(g, phi.K);
  const MapValidation v = validate_map(phi, g, p);
  if (!v.admissible) throw PreconditionError("apply_compression: map is not admissible: " + v.violations.front());
  Compressed c;
  c.matrix = ComplexMatrix::Zero(phi.m, b.cols());
  for (int i = 0; i < phi.n; ++i) c.matrix.row(phi.table[i]) += b.row(i);
  c.graph = build_graph_rect(c.matrix, alpha);
  return c;
}

Compressed apply_compression(const ShiftedMatrix& b, const AdmissibleMap& phi) {
  return apply_compression(b.values, phi, b.alpha());
}

ChainList enumerate_phi_chains(const BipartiteDigraph& gphi, const AdmissibleMap& phi, int k,
                               std::size_t cap) {
  if (k < 1) throw ConfigError("chain length must be >= 1");
  if (gphi.n_left != phi.m || gphi.n_right != phi.n) {
    throw DimensionError("enumerate_phi_chains: map does not match compressed graph");
  }
  ChainList out;
  if (cap == 0) {
    out.truncated = true;
    return out;
  }
  std::vector<int> path;
  bool stop = false;
  // Explicit stack of (depth, next candidate position).
  for (int s : gphi.right_vertices) {
    path.assign(1, s);
    std::vector<std::size_t> pos(1, 0);
    while (!pos.empty() && !stop) {
      if (static_cast<int>(path.size()) == k) {
        if (out.chains.size() == cap) {
          out.truncated = true;
          stop = true;
          break;
        }
        out.chains.push_back({path, classify_chain(path), std::nullopt});
        path.pop_back();
        pos.pop_back();
        continue;
      }
      const int last = path.back();
      const auto& next = gphi.left_out[phi.table[last]];
      std::size_t& at = pos.back();
      while (at < next.size() && next[at] == last) ++at;
      if (at == next.size()) {
        path.pop_back();
        pos.pop_back();
        continue;
      }
      path.push_back(next[at++]);
      pos.push_back(0);
    }
    if (stop) break;
  }
  return out;
}

VertexSet chain_sources(const BipartiteDigraph& gphi, const AdmissibleMap& phi, const VertexSet& s,
                        int k) {
  if (k < 1) throw ConfigError("chain length must be >= 1");
  const auto pre = phi.preimages();
  VertexSet w = normalized(s);
  VertexSet frontier = w;
  for (int step = 1; step < k && !frontier.empty(); ++step) {
    VertexSet fresh;
    for (int j2 : frontier) {
      // j -> phi(j) -> j2 with j != j2.
      for (int t : gphi.arrow_in[j2]) {
        for (int j : pre[t]) {
          if (j != j2 && !contains(w, j)) fresh.push_back(j);
        }
      }
    }
    fresh = normalized(std::move(fresh));
    w = set_union(w, fresh);
    frontier = std::move(fresh);
  }
  return w;
}

std::size_t chain_source_count(const BipartiteDigraph& gphi, const AdmissibleMap& phi,
                               const VertexSet& s, int k) {
  return chain_sources(gphi, phi, s, k).size();
}

VertexSet contact_set(const BipartiteDigraph& gphi, const VertexSet& v) {
  const VertexSet vs = normalized(v);
  VertexSet out;
  for (int j : gphi.right_vertices) {
    if (!set_intersection(gphi.arrow_in[j], vs).empty()) out.push_back(j);
  }
  return out;
}

double source_count_constant(std::size_t count, std::size_t s_size, int n, double pn, int k) {
  if (k <= 1 || s_size == 0 || count <= s_size) return 0.0;
  const double growth = std::pow(static_cast<double>(count) / s_size, 1.0 / (k - 1));
  return growth / (pn + std::log(static_cast<double>(n) / s_size));
}

void write_map(std::ostream& os, const AdmissibleMap& phi) {
  os << phi.n << ' ' << phi.m << '\n';
  for (int i = 0; i < phi.n; ++i) os << i << ' ' << phi.table[i] << '\n';
  if (!os) throw IoError("failed writing map");
}

AdmissibleMap read_map(std::istream& is) {
  int n = 0;
  int m = 0;
  if (!(is >> n >> m) || n < 0 || m < 0) throw IoError("map file: malformed header");
  std::vector<int> table(n, -1);
  for (int k = 0; k < n; ++k) {
    int i = 0;
    int t = 0;
    if (!(is >> i >> t)) throw IoError("map file: truncated");
    if (i < 0 || i >= n || t < 0 || t >= m) throw IoError("map file: index out of range");
    table[i] = t;
  }
  std::vector<VertexSet> pre(m);
  for (int i = 0; i < n; ++i) {
    if (table[i] < 0) throw IoError("map file: missing entry");
    pre[table[i]].push_back(i);
  }
  AdmissibleMap phi;
  phi.n = n;
  phi.m = m;
  phi.table = std::move(table);
  for (const auto& s : pre) {
    if (s.size() == 2) phi.glued_pairs.emplace_back(s[0], s[1]);
  }
  return phi;
}

}  // namespace sparselab
