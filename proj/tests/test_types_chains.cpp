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

#include <gtest/gtest.h>

#include "sparselab/error.hpp"
#include "sparselab/graph.hpp"
#include "sparselab/types_chains.hpp"
#include "support/oracles.hpp"

namespace sparselab {
namespace {

ComplexMatrix upper3() {
  ComplexMatrix b = ComplexMatrix::Zero(3, 3);
  b(0, 0) = b(1, 1) = b(1, 2) = b(2, 2) = 1.0;
  return b;
}

std::vector<std::vector<int>> vertex_lists(const ChainList& l) {
  std::vector<std::vector<int>> out;
  for (const auto& c : l.chains) out.push_back(c.vertices);
  return out;
}

TEST(Types, ZeroKWithHorizontalEdges) {
  const auto g = build_graph(ComplexMatrix(ComplexMatrix::Identity(4, 4)), 1.0);
  const auto p = classify_types(g, 0.0);
  EXPECT_TRUE(p.layers.empty() || p.finite().empty());
  EXPECT_EQ(p.infinite, iota_set(4));
}

TEST(Types, HandTracedLayers) {
  const auto g = build_graph(upper3(), 1.0);
  const auto p = classify_types(g, 1.0);
  ASSERT_GE(p.layers.size(), 2u);
  EXPECT_EQ(p.layers[0], (VertexSet{0, 1}));
  EXPECT_EQ(p.layers[1], VertexSet{2});
  EXPECT_TRUE(p.infinite.empty());
}

TEST(Types, LargeKPutsEverythingInFirstLayer) {
  std::mt19937_64 gen(1);
  const auto g = build_graph(oracle::random_sparse(8, 0.4, 0.5, gen), 1.0);
  std::size_t max_out = 0;
  for (const auto& o : g.arrow_out) max_out = std::max(max_out, o.size());
  const auto p = classify_types(g, static_cast<double>(max_out));
  ASSERT_FALSE(p.layers.empty());
  EXPECT_EQ(p.layers[0], iota_set(8));
}

TEST(Types, FiniteTypeMassExamples) {
  const auto none = classify_types(build_graph(ComplexMatrix(ComplexMatrix::Identity(3, 3)), 1.0), 0.0);
  EXPECT_EQ(finite_type_mass(none, build_graph(ComplexMatrix(ComplexMatrix::Identity(3, 3)), 1.0)).count, 0u);
  const auto g = build_graph(upper3(), 1.0);
  EXPECT_EQ(finite_type_mass(classify_types(g, 1.0), g).count, 3u);
  const auto h = BipartiteDigraph::from_edges(5, 2, {{3, 0}, {4, 0}, {0, 1}, {1, 1}, {2, 1}},
                                              {{0, 1}, {1, 1}, {2, 1}});
  const auto ph = classify_types(h, 0.0);
  ASSERT_FALSE(ph.layers.empty());
  EXPECT_EQ(ph.layers[0], VertexSet{0});
  EXPECT_EQ(finite_type_mass(ph, h).count, 2u);
  EXPECT_DOUBLE_EQ(finite_type_mass(ph, h).fraction, 2.0 / 5.0);
}

TEST(Types, DefaultCensusK) { EXPECT_DOUBLE_EQ(default_census_k(10.0, 2.0), 1.25); }

TEST(Types, OracleAgreementAndInvariants) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> size(1, 8);
  std::uniform_real_distribution<double> kd(0.0, 4.0);
  for (int rep = 0; rep < 300; ++rep) {
    const int m = size(gen);
    const auto b = oracle::random_sparse(m, 0.35, 0.6, gen, rep % 3 != 0);
    const double K = kd(gen);
    const auto g = build_graph(b, 1.0);
    const auto p = classify_types(g, K);
    EXPECT_EQ(p.assignment, oracle::types(oracle::pattern_of(b, 1.0), K));
    VertexSet all;
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
      EXPECT_TRUE(set_intersection(all, p.layers[l]).empty());
      all = set_union(all, p.layers[l]);
    }
    EXPECT_EQ(set_union(all, p.infinite), iota_set(m));
    const VertexSet closure = in_neighbors(g, p.finite());
    EXPECT_EQ(p.closure_in, closure);
    for (int j : p.infinite) EXPECT_GT(static_cast<double>(set_difference(g.arrow_out[j], closure).size()), K);
  }
}

TEST(Types, HereditaryAndLocalToGlobal) {
  std::mt19937_64 gen(77);
  std::bernoulli_distribution pick(0.3);
  std::uniform_real_distribution<double> kd(0.5, 4.0);
  int armed = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const auto b = oracle::random_sparse(8, 0.3, 0.6, gen);
    const auto g = build_graph(b, 1.0);
    VertexSet removed;
    for (int j = 0; j < 8; ++j) {
      if (pick(gen)) removed.push_back(j);
    }
    const double K = kd(gen);
    const auto sub = classify_types(remove_right(g, removed), K);
    const auto full = classify_types(g, K);
    VertexSet upto;
    for (std::size_t l = 0; l < sub.layers.size(); ++l) {
      if (l < full.layers.size()) upto = set_union(upto, full.layers[l]);
      EXPECT_TRUE(is_subset(sub.layers[l], upto));
    }
    const VertexSet in_i = in_neighbors(g, removed);
    bool hyp = true;
    for (int j = 0; j < 8; ++j) {
      if (contains(removed, j)) continue;
      hyp = hyp && set_intersection(g.arrow_out[j], in_i).size() <= K / 2.0;
    }
    if (hyp) {
      ++armed;
      EXPECT_TRUE(is_subset(sub.infinite, classify_types(g, K / 2.0).infinite));
    }
  }
  EXPECT_GT(armed, 0);
}

TEST(Types, FiniteTypesGrowWithK) {
  std::mt19937_64 gen(4);
  for (int rep = 0; rep < 100; ++rep) {
    const auto g = build_graph(oracle::random_sparse(8, 0.35, 0.6, gen), 1.0);
    const double K = 0.25 * (rep % 12);
    EXPECT_TRUE(is_subset(classify_types(g, K).finite(), classify_types(g, K + 0.5).finite()));
  }
}

TEST(Chains, IdentityHasNoSteps) {
  const auto g = build_graph(ComplexMatrix(ComplexMatrix::Identity(3, 3)), 1.0);
  EXPECT_EQ(enumerate_chains(g, 1).chains.size(), 3u);
  EXPECT_TRUE(enumerate_chains(g, 2).chains.empty());
}

TEST(Chains, HandExamples) {
  const auto g = build_graph(upper3(), 1.0);
  EXPECT_EQ(vertex_lists(enumerate_chains(g, 2)), (std::vector<std::vector<int>>{{1, 2}}));
  const auto full = build_graph(ComplexMatrix(ComplexMatrix::Ones(2, 2)), 1.0);
  const auto three = enumerate_chains(full, 3);
  bool found = false;
  for (const auto& c : three.chains) {
    if (c.vertices == std::vector<int>{0, 1, 0}) {
      found = true;
      EXPECT_EQ(c.kind, ChainKind::cyclic);
    }
  }
  EXPECT_TRUE(found);
  EXPECT_THROW(enumerate_chains(build_graph(ComplexMatrix(ComplexMatrix::Zero(2, 2)), 1.0), 1),
               PreconditionError);
}

TEST(Chains, ClassifyKinds) {
  EXPECT_EQ(classify_chain({0, 1, 2}), ChainKind::cycle_free);
  EXPECT_EQ(classify_chain({0, 1, 0}), ChainKind::cyclic);
  EXPECT_EQ(classify_chain({0, 1, 0, 1}), ChainKind::general);
  EXPECT_EQ(classify_chain({0, 0}), ChainKind::invalid);
}

TEST(Chains, OracleEnumerationAndDichotomy) {
  std::mt19937_64 gen(31);
  for (int rep = 0; rep < 60; ++rep) {
    const auto b = oracle::random_sparse(6, 0.35, 0.5, gen);
    const auto g = build_graph(b, 1.0);
    const auto pat = oracle::pattern_of(b, 1.0);
    for (int k = 1; k <= 4; ++k) {
      const auto lib = enumerate_chains(g, k);
      EXPECT_EQ(vertex_lists(lib), oracle::chains(pat, k));
      for (const auto& c : lib.chains) {
        bool cyclic_prefix = false;
        for (int h = 1; h <= k; ++h) {
          cyclic_prefix = cyclic_prefix ||
                          oracle::cyclic(std::vector<int>(c.vertices.begin(), c.vertices.begin() + h));
        }
        EXPECT_NE(oracle::cycle_free(c.vertices), cyclic_prefix);
        EXPECT_EQ(c.kind == ChainKind::cycle_free, oracle::cycle_free(c.vertices));
        EXPECT_EQ(c.kind == ChainKind::cyclic, oracle::cyclic(c.vertices));
      }
    }
  }
}

TEST(SelfBalancing, Examples) {
  const auto g = build_graph(upper3(), 1.0);
  const auto p = classify_types(g, 1.0);
  EXPECT_FALSE(is_self_balancing(Chain{{2}, ChainKind::cycle_free, {}}, g, p));
  const auto pz = classify_types(g, 0.0);
  EXPECT_FALSE(is_self_balancing(Chain{{0}, ChainKind::cycle_free, {}}, g, pz));
}

TEST(SelfBalancing, OracleAndPrefixClosure) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> kd(0.5, 4.0);
  int positive = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const auto b = oracle::random_sparse(7, 0.3, 0.4, gen);
    const auto g = build_graph(b, 1.0);
    const double K = kd(gen);
    const auto p = classify_types(g, K);
    const auto pat = oracle::pattern_of(b, 1.0);
    const auto type = oracle::types(pat, K);
    for (int k = 1; k <= 3; ++k) {
      for (const auto& c : enumerate_chains(g, k).chains) {
        const bool sb = is_self_balancing(c, g, p);
        EXPECT_EQ(sb, oracle::self_balancing(pat, type, c.vertices));
        if (!sb) continue;
        ++positive;
        for (int h = 1; h < k; ++h) {
          const std::vector<int> prefix(c.vertices.begin(), c.vertices.begin() + h);
          EXPECT_TRUE(is_self_balancing(Chain{prefix, classify_chain(prefix), {}}, g, p));
        }
      }
    }
  }
  EXPECT_GT(positive, 0);
}

TEST(Census, Examples) {
  const auto id = build_graph(ComplexMatrix(ComplexMatrix::Identity(5, 5)), 1.0);
  const auto c = chain_census(id, classify_types(id, 1.0), 2, 1000);
  EXPECT_EQ(c.rows[0].self_balancing_cf, 0u);
  const auto capped = chain_census(id, classify_types(id, 1.0), 3, 0);
  EXPECT_TRUE(capped.truncated);
  for (const auto& r : capped.rows) {
    EXPECT_EQ(r.cycle_free, 0u);
    EXPECT_EQ(r.cyclic, 0u);
  }
  const auto full = build_graph(ComplexMatrix(ComplexMatrix::Ones(2, 2)), 1.0);
  const auto cf = chain_census(full, classify_types(full, 0.0), 4, 1000);
  for (const auto& r : cf.rows) {
    EXPECT_EQ(r.self_balancing_cf, 0u);
    EXPECT_FALSE(r.self_balancing_cyclic_found);
  }
}

TEST(Census, MatchesBruteForceAndExecModes) {
  std::mt19937_64 gen(91);
  std::uniform_real_distribution<double> kd(0.5, 4.0);
  for (int rep = 0; rep < 60; ++rep) {
    const auto b = oracle::random_sparse(7, 0.3, 0.4, gen);
    const auto g = build_graph(b, 1.0);
    const double K = kd(gen);
    const auto p = classify_types(g, K);
    const auto pat = oracle::pattern_of(b, 1.0);
    const auto type = oracle::types(pat, K);
    const auto serial = chain_census(g, p, 4, 1u << 20, Exec::serial);
    const auto parallel = chain_census(g, p, 4, 1u << 20, Exec::parallel);
    ASSERT_EQ(serial.rows.size(), 4u);
    for (int k = 1; k <= 4; ++k) {
      std::size_t cf = 0, cy = 0, sbcf = 0;
      bool sbcy = false;
      for (const auto& c : oracle::chains(pat, k)) {
        const bool sb = oracle::self_balancing(pat, type, c);
        if (oracle::cycle_free(c)) {
          ++cf;
          sbcf += sb ? 1 : 0;
        }
        if (oracle::cyclic(c)) {
          ++cy;
          sbcy = sbcy || sb;
        }
      }
      const auto& r = serial.rows[k - 1];
      EXPECT_EQ(r.cycle_free, cf);
      EXPECT_EQ(r.cyclic, cy);
      EXPECT_EQ(r.self_balancing_cf, sbcf);
      EXPECT_EQ(r.self_balancing_cyclic_found, sbcy);
      const auto& q = parallel.rows[k - 1];
      EXPECT_EQ(q.cycle_free, r.cycle_free);
      EXPECT_EQ(q.cyclic, r.cyclic);
      EXPECT_EQ(q.self_balancing_cf, r.self_balancing_cf);
    }
    EXPECT_EQ(serial.visited, parallel.visited);
  }
}

}  // namespace
}  // namespace sparselab
