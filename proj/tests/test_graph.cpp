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


#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "sparselab/error.hpp"
#include "sparselab/graph.hpp"
#include "support/oracles.hpp"

namespace sparselab {
namespace {

BipartiteDigraph graph_of(std::initializer_list<std::initializer_list<double>> rows, double alpha = 1.0) {
  const int n = static_cast<int>(rows.size());
  ComplexMatrix b(n, n);
  int i = 0;
  for (const auto& r : rows) {
    int j = 0;
    for (double v : r) b(i, j++) = v;
    ++i;
  }
  return build_graph(b, alpha);
}

TEST(BuildGraph, Identity) {
  const auto g = build_graph(ComplexMatrix(ComplexMatrix::Identity(3, 3)), 1.0);
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(g.arrow_in[j], VertexSet{j});
    EXPECT_EQ(g.arrow_out[j], VertexSet{j});
  }
  EXPECT_TRUE(g.has_horizontal);
}

TEST(BuildGraph, WeakEntryIsArrowOnly) {
  const auto g = graph_of({{1, 0}, {0.5, 1}});
  EXPECT_EQ(g.arrow_in[0], (VertexSet{0, 1}));
  EXPECT_EQ(g.arrow_out[0], VertexSet{0});
  EXPECT_EQ(g.arrow_in[1], VertexSet{1});
  EXPECT_EQ(g.arrow_out[1], VertexSet{1});
}

TEST(BuildGraph, ZeroMatrix) {
  const auto g = build_graph(ComplexMatrix(ComplexMatrix::Zero(3, 3)), 1.0);
  for (int j = 0; j < 3; ++j) {
    EXPECT_TRUE(g.arrow_in[j].empty());
    EXPECT_TRUE(g.arrow_out[j].empty());
  }
  EXPECT_FALSE(g.has_horizontal);
}

TEST(BuildGraph, NonSquareIsDimensionError) {
  EXPECT_THROW(build_graph(ComplexMatrix(2, 3), 1.0), DimensionError);
}

TEST(BuildGraph, MatchesPatternOracle) {
  std::mt19937_64 gen(5);
  for (int rep = 0; rep < 50; ++rep) {
    const auto b = oracle::random_sparse(7, 0.3, 0.5, gen, rep % 2 == 0);
    const auto g = build_graph(b, 1.0);
    const auto p = oracle::pattern_of(b, 1.0);
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) {
        EXPECT_EQ(contains(g.arrow_in[j], i), p.arrow[i][j] != 0);
        EXPECT_EQ(contains(g.arrow_out[j], i), p.strong[i][j] != 0);
        EXPECT_EQ(contains(g.left_out[i], j), p.arrow[i][j] != 0);
        EXPECT_EQ(contains(g.left_in[i], j), p.strong[i][j] != 0);
      }
    }
  }
}

TEST(Neighbors, Examples) {
  const auto id = build_graph(ComplexMatrix(ComplexMatrix::Identity(3, 3)), 1.0);
  EXPECT_TRUE(in_neighbors(id, {}).empty());
  EXPECT_EQ(in_neighbors(id, {0, 1}), (VertexSet{0, 1}));
  const auto g = graph_of({{1, 1}, {0, 1}});
  EXPECT_EQ(in_neighbors(g, {1}), (VertexSet{0, 1}));
  EXPECT_EQ(neighbors(g, Side::left, Direction::out, {0}), (VertexSet{0, 1}));
  EXPECT_THROW(in_neighbors(g, {5}), IndexError);
}

TEST(GraphInvariants, TransposeDualityUnionAndMonotonicity) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  std::bernoulli_distribution nz(0.3);
  for (int rep = 0; rep < 30; ++rep) {
    const int n = 9;
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (nz(gen)) b(i, j) = Complex(ud(gen), ud(gen));
      }
    }
    const auto g = build_graph(b, 2.0);
    const auto gt = build_graph(ComplexMatrix(b.transpose()), 2.0);
    EXPECT_EQ(transpose(g).arrow_in, gt.arrow_in);
    EXPECT_EQ(transpose(g).arrow_out, gt.arrow_out);
    for (int i = 0; i < n; ++i) {
      for (int j : g.left_in[i]) EXPECT_TRUE(contains(g.left_out[i], j));
    }
    const VertexSet set{1, 4, 7};
    VertexSet u;
    for (int j : set) u = set_union(u, g.arrow_in[j]);
    EXPECT_EQ(in_neighbors(g, set), u);
    const auto g4 = build_graph(b, 4.0);
    for (int j = 0; j < n; ++j) {
      EXPECT_EQ(g4.arrow_in[j], g.arrow_in[j]);
      EXPECT_TRUE(is_subset(g.arrow_out[j], g4.arrow_out[j]));
    }
  }
}

TEST(Expansion, DisjointAndIdentityHold) {
  const auto id = build_graph(ComplexMatrix(ComplexMatrix::Identity(6, 6)), 1.0);
  EXPECT_TRUE(expansion_check(id, 0.01, 2.0, 4).holds);
}

TEST(Expansion, SharedInNeighborsViolate) {
  const auto g = BipartiteDigraph::from_edges(3, 2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}}, {});
  const auto r = expansion_check(g, 0.1, 10.0, 2);
  EXPECT_FALSE(r.holds);
  EXPECT_DOUBLE_EQ(r.max_deficit, 1.0);
  EXPECT_DOUBLE_EQ(expansion_deficit(g, {0, 1}, 1.0), 1.0);
}

TEST(Expansion, AgreesWithExhaustiveOverSmallSets) {
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 40; ++rep) {
    const auto g = build_graph(oracle::random_sparse(8, 0.35, 0.5, gen), 1.0);
    const double slack = 0.5 * (rep % 5);
    bool brute = true;
    for (int a = 0; a < 8; ++a) {
      for (int b = a + 1; b < 8; ++b) {
        brute = brute && expansion_deficit(g, {a, b}, slack) <= 0.0;
        for (int c = b + 1; c < 8; ++c) brute = brute && expansion_deficit(g, {a, b, c}, slack) <= 0.0;
      }
    }
    EXPECT_EQ(expansion_check(g, slack / 2.0, 2.0, 3).holds, brute);
  }
}

TEST(DegreeTail, Examples) {
  const auto id = build_graph(ComplexMatrix(ComplexMatrix::Identity(10, 10)), 1.0);
  const auto r = degree_tail_report(id, 1.0);
  for (auto c : r.left_out_counts) EXPECT_EQ(c, 0u);
  for (auto c : r.right_in_counts) EXPECT_EQ(c, 0u);
  const auto star = BipartiteDigraph::from_edges(4, 4, {{0, 0}, {1, 0}, {2, 0}, {3, 0}}, {});
  const auto s = degree_tail_report(star, 1.0);
  ASSERT_FALSE(s.right_in_counts.empty());
  EXPECT_EQ(s.right_in_counts[0], 1u);
  const auto empty = BipartiteDigraph::from_edges(4, 4, {}, {});
  for (auto c : degree_tail_report(empty, 1.0).right_in_counts) EXPECT_EQ(c, 0u);
}

TEST(DegreeTail, UnionSupportBoundWhenCertified) {
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 10; ++rep) {
    const auto g = build_graph(oracle::random_sparse(30, 0.1, 0.5, gen), 1.0);
    const auto tail = degree_tail_report(g, 3.0);
    if (!(tail.certified_c > 0.0)) continue;
    const auto u = union_support_check(g, 3.0, tail.certified_c);
    EXPECT_TRUE(u.holds);
  }
}

TEST(L1Tail, Examples) {
  EXPECT_TRUE(l1_tail_report(RealMatrix::Zero(5, 5), 1.0).holds);
  const auto ones = l1_tail_report(RealMatrix::Ones(4, 4), 4.0);
  ASSERT_FALSE(ones.grid.empty());
  EXPECT_DOUBLE_EQ(ones.grid.front().r, 4.0);
  EXPECT_EQ(ones.grid.front().rows, 0u);
  RealMatrix a = RealMatrix::Zero(10, 10);
  a(0, 0) = 100.0;
  const auto r = l1_tail_report(a, 1.0, {10.0});
  bool seen = false;
  for (const auto& row : r.grid) {
    if (row.r == 10.0) {
      seen = true;
      EXPECT_EQ(row.rows, 1u);
      EXPECT_TRUE(row.holds);
    }
  }
  EXPECT_TRUE(seen);
}

TEST(GraphIo, RoundTrip) {
  std::mt19937_64 gen(2);
  const auto g = build_graph(oracle::random_sparse(6, 0.3, 0.5, gen), 1.0);
  std::stringstream ss;
  write_graph(ss, g);
  EXPECT_EQ(read_graph(ss), g);
}

}  // namespace
}  // namespace sparselab
