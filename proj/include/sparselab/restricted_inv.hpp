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

#ifndef SPARSELAB_RESTRICTED_INV_HPP_
#define SPARSELAB_RESTRICTED_INV_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sparselab/exec.hpp"
#include "sparselab/sampling.hpp"
#include "sparselab/vertex_set.hpp"

namespace sparselab {

struct BTConstants {
  double c_tilde = 0.01;
  double c_hat = 0.1;
  double C_cap = 16.0;
  double c_low = 0.05;
};

// q-th largest modulus (1-based); +inf for q <= 0 and 0 for q > size.
double order_stat(const Eigen::VectorXcd& v, int q);

// k x n matrix whose rows are the first k discrete Fourier characters of
// length n, scaled to unit norm. Every entry has modulus 1/sqrt(n).
ComplexMatrix partial_fourier_frame(int k, int n);

bool rows_orthonormal(const ComplexMatrix& v, double tol = 1e-10);

struct SpreadBasis {
  bool success = false;
  int attempts = 0;
  ComplexMatrix basis;  // n x k, columns u_1..u_k
};

// e spans the subspace through its columns; they need not be orthonormal.
SpreadBasis spread_basis(const ComplexMatrix& e, int s, int max_attempts, std::uint64_t seed);

enum class BTMode { bernoulli, uniform };

int bt_ell(int k, double eta, double rho, double c_tilde);

struct BTSubset {
  int ell = 0;
  VertexSet J;
  bool spread_ok = true;
};

BTSubset sample_bt_subset(const ComplexMatrix& v, double eta, double rho, std::uint64_t seed,
                          BTMode mode, const BTConstants& constants = {});

struct BTSample {
  double eta = 0.0;
  double rho = 0.0;
  int k = 0;
  int n = 0;
  int ell = 0;
  VertexSet J;
  bool cond_norm = true;
  bool cond_lower = true;
  double submatrix_smin = 0.0;
  double norm_bound = 0.0;
  double lower_bound = 0.0;
};

BTSample check_bt_conditions(const ComplexMatrix& v, const VertexSet& J, double eta, double rho,
                             double C_cap, double c_low);

struct BTRate {
  int trials = 0;
  int successes = 0;
  int ell = 0;
  double rate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
  double lower_ref = 0.0;
  std::vector<BTSample> samples;
};

// A trial succeeds when |J| = ell and both conditions hold.
BTRate bt_success_rate(const ComplexMatrix& v, double eta, double rho, int trials,
                       std::uint64_t seed, BTMode mode = BTMode::uniform,
                       const BTConstants& constants = {}, Exec exec = Exec::parallel);

enum class ProjectionVerdict { holds, violated, hypothesis_not_met };

std::string to_string(ProjectionVerdict v);

struct ProjectionCheck {
  ProjectionVerdict verdict = ProjectionVerdict::hypothesis_not_met;
  std::string reason;
  double op_norm = 0.0;  // ||B V^T||
  double bound = 0.0;
  int qualifying = 0;
  int required = 0;  // ceil(|J| / 2)
  std::vector<double> distances;  // ||P_J col_j(B)|| over J in order
};

ProjectionCheck projection_bound_check(const ComplexMatrix& b, const ComplexMatrix& v, double s,
                                       const VertexSet& J, double eta, double rho,
                                       const BTConstants& constants = {});

}  // namespace sparselab

#endif  // SPARSELAB_RESTRICTED_INV_HPP_
