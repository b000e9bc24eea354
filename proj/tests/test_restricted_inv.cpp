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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sparselab/error.hpp"
#include "sparselab/restricted_inv.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace sparselab {
namespace {

ComplexMatrix unit_column(int n, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, 1);
  e(j, 0) = 1.0;
  return e;
}

TEST(OrderStat, Conventions) {
  Eigen::VectorXcd v(3);
  v << Complex(0, -3), 1.0, 2.0;
  EXPECT_EQ(order_stat(v, 1), 3.0);
  EXPECT_EQ(order_stat(v, 3), 1.0);
  EXPECT_EQ(order_stat(v, 0), INFINITY);
  EXPECT_EQ(order_stat(v, 4), 0.0);
}

TEST(PartialFourier, ModulusAndOrthonormality) {
  const auto v = partial_fourier_frame(7, 20);
  for (int r = 0; r < 7; ++r) {
    for (int c = 0; c < 20; ++c) EXPECT_NEAR(std::abs(v(r, c)), 1.0 / std::sqrt(20.0), 1e-15);
  }
  EXPECT_TRUE(rows_orthonormal(v));
  ComplexMatrix w = v;
  w(0, 0) *= 2.0;
  EXPECT_FALSE(rows_orthonormal(w));
}

TEST(SpreadBasis, FullSpaceSucceedsFirstAttempt) {
  std::mt19937_64 rng(1);
  const auto r = spread_basis(oracle::gaussian(8, 8, rng), 1, 5, 3);
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.attempts, 1);
}

TEST(SpreadBasis, CoordinateLine) {
  const auto ok = spread_basis(unit_column(6, 2), 1, 4, 1);
  ASSERT_TRUE(ok.success);
  EXPECT_NEAR(std::abs(ok.basis(2, 0)), 1.0, 1e-15);
  const auto fail = spread_basis(unit_column(6, 2), 2, 4, 1);
  EXPECT_FALSE(fail.success);
  EXPECT_EQ(fail.attempts, 4);
}

TEST(SpreadBasis, OrthonormalAndSpansSubspace) {
  std::mt19937_64 rng(2);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 30;
    const int k = 6 + rep;
    const ComplexMatrix e = oracle::gaussian(n, k, rng);
    const auto r = spread_basis(e, 2, 20, rep);
    ASSERT_TRUE(r.success);
    const ComplexMatrix& u = r.basis;
    EXPECT_LE((u.adjoint() * u - ComplexMatrix::Identity(k, k)).norm(), 1e-10);
    Eigen::HouseholderQR<ComplexMatrix> qr(e);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, k);
    EXPECT_LE((u * u.adjoint() - q * q.adjoint()).norm(), 1e-9);
    for (int c = 0; c < k; ++c) EXPECT_GE(order_stat(u.col(c), 2), 0.5 / std::sqrt(30.0));
  }
}

TEST(BTSubset, FullSelectionAndSizes) {
  const ComplexMatrix v = ComplexMatrix::Identity(4, 4);
  BTConstants c;
  c.c_tilde = 8.0;
  const auto b = sample_bt_subset(v, 0.5, 1.0, 3, BTMode::bernoulli, c);
  EXPECT_EQ(b.ell, 4);
  EXPECT_EQ(b.J, iota_set(4));
  const auto f = partial_fourier_frame(20, 100);
  BTConstants d;
  d.c_tilde = 1.0;
  const auto u1 = sample_bt_subset(f, 0.5, 1.0, 9, BTMode::uniform, d);
  const auto u2 = sample_bt_subset(f, 0.5, 1.0, 9, BTMode::uniform, d);
  EXPECT_EQ(u1.ell, bt_ell(20, 0.5, 1.0, 1.0));
  EXPECT_EQ(static_cast<int>(u1.J.size()), u1.ell);
  EXPECT_EQ(u1.J, u2.J);
  EXPECT_TRUE(u1.spread_ok);
  EXPECT_THROW(sample_bt_subset(f, 0.5, 1.0, 9, BTMode::uniform, BTConstants{}), ConfigError);
  ComplexMatrix bad = f;
  bad(0, 0) = 1.0;
  EXPECT_THROW(sample_bt_subset(bad, 0.5, 1.0, 9, BTMode::uniform, d), PreconditionError);
}

TEST(BTConditions, Examples) {
  ComplexMatrix v(1, 2);
  v << std::sqrt(0.5), std::sqrt(0.5);
  const auto eq = check_bt_conditions(v, {0}, 1.0, 1.0, 16.0, 1.0);
  EXPECT_EQ(eq.submatrix_smin, std::sqrt(0.5));
  EXPECT_EQ(eq.lower_bound, std::sqrt(0.5));
  EXPECT_TRUE(eq.cond_lower);
  const auto empty = check_bt_conditions(v, {}, 1.0, 1.0, 16.0, 1.0);
  EXPECT_TRUE(empty.cond_norm);
  EXPECT_TRUE(empty.cond_lower);
  EXPECT_EQ(empty.submatrix_smin, INFINITY);
  ComplexMatrix z = ComplexMatrix::Identity(2, 3);
  const auto zc = check_bt_conditions(z, {2}, 0.5, 1.0, 16.0, 0.05);
  EXPECT_EQ(zc.submatrix_smin, 0.0);
  EXPECT_FALSE(zc.cond_lower);
}

TEST(BTConditions, ConsistencyAndMonotonicity) {
  std::mt19937_64 rng(5);
  const auto v = partial_fourier_frame(12, 60);
  ComplexMatrix w = v;
  w.col(7) *= 3.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<int> cols = iota_set(60);
    std::shuffle(cols.begin(), cols.end(), rng);
    const VertexSet J = normalized({cols.begin(), cols.begin() + 1 + rep % 10});
    const auto s = check_bt_conditions(w, J, 0.5, 1.0, 1.5, 0.3);
    EXPECT_EQ(s.cond_lower, s.submatrix_smin >= s.lower_bound);
    ComplexMatrix sub(12, static_cast<Eigen::Index>(J.size()));
    for (std::size_t c = 0; c < J.size(); ++c) sub.col(static_cast<Eigen::Index>(c)) = w.col(J[c]);
    const auto o = oracle::singular_values(sub);
    EXPECT_NEAR(s.submatrix_smin, o.back(), 1e-12);
    if (!s.cond_norm) {
      const VertexSet bigger = set_union(J, {cols[20], cols[30]});
      EXPECT_FALSE(check_bt_conditions(w, bigger, 0.5, 1.0, 1.5, 0.3).cond_norm);
    }
  }
}

TEST(BTRate, SeededSuccessAndDegenerateCase) {
  const auto f = partial_fourier_frame(30, 120);
  BTConstants c;
  c.c_tilde = 1.0;
  int found = -1;
  for (int seed = 0; seed < 30 && found < 0; ++seed) {
    if (bt_success_rate(f, 0.5, 1.0, 1, seed, BTMode::uniform, c).successes == 1) found = seed;
  }
  ASSERT_GE(found, 0);
  const auto one = bt_success_rate(f, 0.5, 1.0, 1, found, BTMode::uniform, c);
  EXPECT_EQ(one.rate, 1.0);
  const auto& s = one.samples.at(0);
  EXPECT_GE(oracle::singular_values([&] {
              ComplexMatrix sub(30, static_cast<Eigen::Index>(s.J.size()));
              for (std::size_t k = 0; k < s.J.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = f.col(s.J[k]);
              return sub;
            }()).back(),
            s.lower_bound);
  BTConstants full;
  full.c_tilde = 8.0;
  const auto id = bt_success_rate(ComplexMatrix::Identity(4, 4), 0.5, 1.0, 25, 3, BTMode::uniform, full);
  EXPECT_TRUE(id.successes == 0 || id.successes == 25);
  EXPECT_NEAR(id.lower_ref, std::pow(full.c_hat * 0.5, 4), 1e-15);
}

TEST(BTRate, ExecModesAgree) {
  const auto f = partial_fourier_frame(20, 80);
  BTConstants c;
  c.c_tilde = 1.0;
  const auto a = bt_success_rate(f, 0.5, 1.0, 40, 11, BTMode::uniform, c, Exec::serial);
  const auto b = bt_success_rate(f, 0.5, 1.0, 40, 11, BTMode::uniform, c, Exec::parallel);
  EXPECT_EQ(a.successes, b.successes);
  for (int t = 0; t < 40; ++t) {
    EXPECT_EQ(a.samples[t].J, b.samples[t].J);
    EXPECT_EQ(a.samples[t].submatrix_smin, b.samples[t].submatrix_smin);
  }
  EXPECT_LE(a.wilson_lo, a.rate);
  EXPECT_GE(a.wilson_hi, a.rate);
}

TEST(Projection, Examples) {
  const int n = 6;
  const int k = 3;
  const ComplexMatrix v = ComplexMatrix::Identity(k, n);
  const double eta = 1.0 / n;
  const auto zero = projection_bound_check(ComplexMatrix::Zero(n, n), v, 0.0, {0, 1}, eta, 1.0);
  EXPECT_EQ(zero.verdict, ProjectionVerdict::holds);
  EXPECT_EQ(zero.qualifying, 2);
  const auto id = projection_bound_check(ComplexMatrix::Identity(n, n), v, 1.0, {0, 2}, eta, 1.0);
  ASSERT_EQ(id.verdict, ProjectionVerdict::holds) << id.reason;
  EXPECT_NEAR(id.op_norm, 1.0, 1e-15);
  EXPECT_NEAR(id.bound, std::sqrt(2.0) / 0.05 * std::sqrt(n / (eta * k)), 1e-12);
  EXPECT_NEAR(id.distances[0], 1.0, 1e-15);
  EXPECT_NEAR(id.distances[1], 1.0, 1e-15);
  EXPECT_EQ(id.required, 1);
  const auto bad = projection_bound_check(ComplexMatrix::Identity(n, n), v, 0.5, {0, 2}, eta, 1.0);
  EXPECT_EQ(bad.verdict, ProjectionVerdict::hypothesis_not_met);
}

TEST(Projection, RandomInstancesAgainstOracle) {
  std::mt19937_64 rng(17);
  int verified = 0;
  for (int rep = 0; rep < 80; ++rep) {
    const auto p = gen::projection_instance(rng, 24);
    const auto r = projection_bound_check(p.b, p.v, p.s, p.J, p.eta, p.rho, p.constants);
    EXPECT_NE(r.verdict, ProjectionVerdict::violated);
    if (r.verdict != ProjectionVerdict::holds) continue;
    ++verified;
    const auto o = oracle::projected_norms(p.b, p.J);
    int count = 0;
    for (std::size_t t = 0; t < o.size(); ++t) {
      EXPECT_NEAR(r.distances[t], o[t], 1e-8 * (1.0 + o[t]));
      count += o[t] <= r.bound ? 1 : 0;
    }
    EXPECT_GE(2 * count, static_cast<int>(p.J.size()));
  }
  EXPECT_GT(verified, 40);
}

}  // namespace
}  // namespace sparselab
