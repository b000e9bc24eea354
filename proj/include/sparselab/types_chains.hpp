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

#ifndef SPARSELAB_TYPES_CHAINS_HPP_
#define SPARSELAB_TYPES_CHAINS_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sparselab/exec.hpp"
#include "sparselab/graph.hpp"

namespace sparselab {

// Vertex types T_{K,l}. assignment[j] is the layer index l >= 1 for finite
// types, 0 for infinite type and -1 for right vertices absent from the graph.
struct TypePartition {
  double K = 0.0;
  int n_right = 0;
  std::vector<int> assignment;
  std::vector<VertexSet> layers;  // layers[l-1] = T_{K,l}
  VertexSet infinite;
  VertexSet closure_in;           // in-neighbors of all finite-type vertices

  VertexSet finite() const;
  bool is_finite(int j) const { return assignment[j] > 0; }
  bool is_infinite(int j) const { return assignment[j] == 0; }
};

TypePartition classify_types(const BipartiteDigraph& g, double K);

struct FiniteTypeMass {
  std::size_t count = 0;
  double fraction = 0.0;
};

FiniteTypeMass finite_type_mass(const TypePartition& p, const BipartiteDigraph& g);

// K_0 / 2 with K_0 = pn / (2 alpha).
double default_census_k(double pn, double alpha);

enum class ChainKind { cycle_free, cyclic, general, invalid };
std::string to_string(ChainKind kind);

ChainKind classify_chain(const std::vector<int>& vertices);

struct Chain {
  std::vector<int> vertices;
  ChainKind kind = ChainKind::cycle_free;
  std::optional<bool> self_balancing;
};

struct ChainList {
  std::vector<Chain> chains;
  bool truncated = false;
};

// Chains j_1, ..., j_k with j_{l+1} an out-neighbor of the left vertex j_l
// other than j_l, in lexicographic order. Requires horizontal edges.
ChainList enumerate_chains(const BipartiteDigraph& g, int k,
                           const std::optional<VertexSet>& from = std::nullopt,
                           std::size_t cap = static_cast<std::size_t>(-1));

// Per-vertex part of the self-balancing condition: j has finite type and
// out(j) lies in the in-neighborhood of the other finite-type vertices.
std::vector<char> self_balancing_vertices(const BipartiteDigraph& g, const TypePartition& p);

bool is_self_balancing(const Chain& chain, const BipartiteDigraph& g, const TypePartition& p);
bool is_self_balancing(const std::vector<int>& vertices, const std::vector<char>& flags);

struct CensusRow {
  int k = 0;
  std::size_t cycle_free = 0;
  std::size_t cyclic = 0;
  std::size_t self_balancing_cf = 0;
  bool self_balancing_cyclic_found = false;
  bool truncated = false;
};

struct ChainCensus {
  double K = 0.0;
  std::vector<CensusRow> rows;  // rows[k-1]
  bool truncated = false;
  std::size_t visited = 0;
};

// Counts cycle-free and cyclic chains of every length up to k_max. At most
// `cap` chains are visited, taking start vertices in increasing order; the
// result does not depend on the execution mode.
ChainCensus chain_census(const BipartiteDigraph& g, const TypePartition& p, int k_max,
                         std::size_t cap, Exec exec = Exec::parallel);

}  // namespace sparselab

#endif  // SPARSELAB_TYPES_CHAINS_HPP_
