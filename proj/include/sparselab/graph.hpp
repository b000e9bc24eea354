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

#ifndef SPARSELAB_GRAPH_HPP_
#define SPARSELAB_GRAPH_HPP_

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <utility>
#include <vector>

#include "sparselab/exec.hpp"
#include "sparselab/sampling.hpp"
#include "sparselab/vertex_set.hpp"

namespace sparselab {

// Bipartite digraph G_B of a matrix: i -> j when b_ij != 0 and i <- j when
// |b_ij| >= 1/alpha. Right-side lists are indexed by column, left-side lists
// by row; both are sorted and are exact transposes of each other.
struct BipartiteDigraph {
  int n_left = 0;
  int n_right = 0;
  std::vector<VertexSet> arrow_in;   // right j: {i : i -> j}
  std::vector<VertexSet> arrow_out;  // right j: {i : i <- j}
  std::vector<VertexSet> left_out;   // left i: {j : i -> j}
  std::vector<VertexSet> left_in;    // left i: {j : i <- j}
  bool has_horizontal = false;
  // Right vertices present in the graph. Removing right vertices keeps the
  // parent indexing, so removed vertices simply drop out of this set.
  VertexSet right_vertices;

  // Builds all four adjacency views from the two edge relations. Every
  // strong edge must also be listed as an arrow edge.
  static BipartiteDigraph from_edges(int n_left, int n_right,
                                     const std::vector<std::pair<int, int>>& arrows,
                                     const std::vector<std::pair<int, int>>& strong);

  bool operator==(const BipartiteDigraph& other) const;
};

// Square inputs only (DimensionError otherwise).
BipartiteDigraph build_graph(const ComplexMatrix& b, double alpha);
BipartiteDigraph build_graph(const RealMatrix& b, double alpha);
BipartiteDigraph build_graph(const ShiftedMatrix& b, double alpha);
BipartiteDigraph build_graph(const MatrixSample& a, double alpha);

// Same edge rule for an arbitrary m x n matrix (compressed matrices).
// has_horizontal is false for non-square inputs.
BipartiteDigraph build_graph_rect(const ComplexMatrix& b, double alpha);

// Swaps the roles of left and right vertices.
BipartiteDigraph transpose(const BipartiteDigraph& g);

// G with the right vertices in `removed` deleted; indices are kept.
BipartiteDigraph remove_right(const BipartiteDigraph& g, const VertexSet& removed);

enum class Side { left, right };
enum class Direction { in, out };

VertexSet neighbors(const BipartiteDigraph& g, Side side, Direction dir, const VertexSet& set);
// Right-side shorthands.
VertexSet in_neighbors(const BipartiteDigraph& g, const VertexSet& right_set);
VertexSet out_neighbors(const BipartiteDigraph& g, const VertexSet& right_set);

struct ExpansionViolation {
  VertexSet set;
  double deficit = 0.0;
};

struct ExpansionOptions {
  std::size_t random_samples = 512;
  std::size_t max_reported = 16;
  std::uint64_t seed = 0x5eed;
  Exec exec = Exec::parallel;
};

struct ExpansionReport {
  bool holds = true;
  bool sampled = false;
  double max_deficit = -std::numeric_limits<double>::infinity();
  std::size_t sets_checked = 0;
  std::vector<ExpansionViolation> worst_violations;
};

// Checks |in(I)| >= sum_i |in(i)| - epsilon*pn*|I| over right sets with
// 2 <= |I| <= k_max. Sizes up to 3 are exhaustive; larger sizes are covered
// by greedy growth, top-degree prefixes and random connected samples.
ExpansionReport expansion_check(const BipartiteDigraph& g, double epsilon, double pn, int k_max,
                                const ExpansionOptions& options = {});

// sum_i |in(i)| - |in(I)| - slack*|I|.
double expansion_deficit(const BipartiteDigraph& g, const VertexSet& set, double slack);

struct DegreeTailReport {
  double pn = 0.0;
  int n = 0;
  // Entry u counts vertices with degree >= 2pn + u.
  std::vector<std::size_t> left_out_counts;
  std::vector<std::size_t> right_in_counts;
  // Largest c with every count <= exp(-c (pn + u)) n; +inf when all counts
  // are zero and 0 when some count equals n.
  double certified_c = std::numeric_limits<double>::infinity();
};

DegreeTailReport degree_tail_report(const BipartiteDigraph& g, double pn);

struct UnionSupportReport {
  // Worst sets of each size s = 1..n: the s largest degrees on each side.
  std::vector<double> left_sums;
  std::vector<double> right_sums;
  std::vector<double> certified_bounds;
  double c_empirical = 0.0;   // max sum / ((pn + log(n/s)) s)
  double c_certified = 0.0;   // same ratio for the certified bound
  bool holds = true;          // every sum below its certified bound
};

// Degree sums over worst-case sets compared with the bound implied by the
// tail certificate c of degree_tail_report.
UnionSupportReport union_support_check(const BipartiteDigraph& g, double pn, double c);

struct L1TailRow {
  double r = 0.0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  double allowed = 0.0;  // n / r^0.9
  bool holds = true;
};

struct L1TailReport {
  std::vector<L1TailRow> grid;
  bool holds = true;
};

// Counts rows/columns with l1 norm >= r*pn for r on the grid pn*2^t and on
// the extra values given.
L1TailReport l1_tail_report(const RealMatrix& a, double pn, const std::vector<double>& extra_r = {});
L1TailReport l1_tail_report(const MatrixSample& a, const std::vector<double>& extra_r = {});

void write_graph(std::ostream& os, const BipartiteDigraph& g);
BipartiteDigraph read_graph(std::istream& is);

}  // namespace sparselab

#endif  // SPARSELAB_GRAPH_HPP_
