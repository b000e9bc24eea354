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

#ifndef SPARSELAB_COMPRESSION_HPP_
#define SPARSELAB_COMPRESSION_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparselab/graph.hpp"
#include "sparselab/types_chains.hpp"

namespace sparselab {

// Surjection phi: [n] -> [m] gluing disjoint pairs of left vertices. Image
// indices follow ascending minimum preimage.
struct AdmissibleMap {
  int n = 0;
  int m = 0;
  std::vector<int> table;
  std::vector<std::pair<int, int>> glued_pairs;  // (smaller, larger), sorted
  double lightness_u = 0.0;
  double K = 0.0;

  std::vector<VertexSet> preimages() const;
  bool is_glued(int i) const;
};

AdmissibleMap identity_map(int n, double K = 0.0);

// Builds the canonical map gluing exactly the given pairs. Throws
// ConfigError if a vertex appears twice or a pair is degenerate.
AdmissibleMap glue_pairs(int n, std::vector<std::pair<int, int>> pairs, double K = 0.0);

enum class MapStage { none, filter, pairing, thinning };
std::string to_string(MapStage stage);

struct MapBuildOptions {
  int retry_budget = 16;
  // Number of pairs to glue; floor(epsilon * |J|) when empty.
  std::optional<int> target_pairs;
};

struct MapBuildResult {
  bool ok = false;
  AdmissibleMap map;
  MapStage failed_stage = MapStage::none;
  std::size_t filtered = 0;   // |J'|
  std::size_t paired = 0;     // |H_1|
};

// Three-step construction: filter J, greedily pair vertices with disjoint
// out-neighborhoods, then thin a random subset of pairs so that no right
// vertex sees more than 64*epsilon*pn glued in-neighbors.
MapBuildResult build_admissible_map(const BipartiteDigraph& g, const TypePartition& p,
                                    const VertexSet& j_set, double epsilon, double pn,
                                    std::uint64_t seed, const MapBuildOptions& options = {});

struct MapValidation {
  bool admissible = true;
  double lightness_u = 0.0;
  std::vector<std::string> violations;
};

MapValidation validate_map(const AdmissibleMap& phi, const BipartiteDigraph& g, const TypePartition& p);

// Glued-in-neighbor count maximized over right vertices.
double lightness(const AdmissibleMap& phi, const BipartiteDigraph& g);

struct Compressed {
  ComplexMatrix matrix;    // m x n, rows summed over preimages
  BipartiteDigraph graph;  // graph of the compressed matrix
};

// Throws PreconditionError when phi is not admissible for the graph of b
// with parameter phi.K.
Compressed apply_compression(const ComplexMatrix& b, const AdmissibleMap& phi, double alpha);
Compressed apply_compression(const ShiftedMatrix& b, const AdmissibleMap& phi);

// Compressed graph built directly from G (same result as the graph of the
// compressed matrix).
BipartiteDigraph compress_graph(const BipartiteDigraph& g, const AdmissibleMap& phi);

// phi-chains: j_{l+1} is an out-neighbor of phi(j_l) other than j_l.
ChainList enumerate_phi_chains(const BipartiteDigraph& gphi, const AdmissibleMap& phi, int k,
                               std::size_t cap = static_cast<std::size_t>(-1));

// Right vertices starting a phi-chain of length at most k that ends in S.
VertexSet chain_sources(const BipartiteDigraph& gphi, const AdmissibleMap& phi, const VertexSet& s,
                        int k);
std::size_t chain_source_count(const BipartiteDigraph& gphi, const AdmissibleMap& phi,
                               const VertexSet& s, int k);

// Right vertices whose compressed in-neighborhood meets V.
VertexSet contact_set(const BipartiteDigraph& gphi, const VertexSet& v);

// Smallest C with count <= (C (pn + log(n/|S|)))^(k-1) |S|.
double source_count_constant(std::size_t count, std::size_t s_size, int n, double pn, int k);

void write_map(std::ostream& os, const AdmissibleMap& phi);
AdmissibleMap read_map(std::istream& is);

}  // namespace sparselab

#endif  // SPARSELAB_COMPRESSION_HPP_
