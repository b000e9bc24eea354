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

#ifndef SPARSELAB_SHELLS_HPP_
#define SPARSELAB_SHELLS_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparselab/graph.hpp"
#include "sparselab/sampling.hpp"

namespace sparselab {

struct ShellWitness {
  int layer = 0;  // obligation from layer `layer` to layer + 1
  int row = 0;
  int from = 0;
  int to = 0;
};

// M-shell (C_0, ..., C_d): for l < d, every j in C_l and every left i not in
// M with i <- j has some j' != j in C_{l+1} with i -> j'.
struct Shell {
  VertexSet M;
  std::vector<VertexSet> layers;
  std::vector<ShellWitness> witness;

  int depth() const { return static_cast<int>(layers.size()) - 1; }
};

enum class ShellFailure { none, hypothesis, no_witness };

struct ShellBuild {
  bool ok = false;
  Shell shell;
  ShellFailure failure = ShellFailure::none;
  int row = -1;             // offending row on failure
  double L = 0.0;           // max l1 norm over rows outside M
  double min_center = 0.0;  // min over J of |x_j|
  std::vector<double> thresholds;  // thresholds[q] = (2 alpha L)^-q * min_center
};

// (2 alpha L)^-q * min_center for q = 0..d, by repeated division. +inf
// entries when L = 0.
std::vector<double> shell_thresholds(double min_center, double alpha, double L, int d);

// Shell of the constructive order-statistics argument. Throws
// PreconditionError when x vanishes somewhere on J, DimensionError on size
// mismatch.
ShellBuild build_shell_from_vector(const ComplexMatrix& b, const Eigen::VectorXcd& x,
                                   const VertexSet& m_rows, const VertexSet& j_cols, int d,
                                   double alpha);

struct ShellViolation {
  int layer = 0;
  int j = 0;
  int i = 0;
};

struct ShellValidation {
  bool valid = true;
  std::vector<ShellViolation> violations;
};

ShellValidation validate_shell(const Shell& s, const BipartiteDigraph& g);

// Largest feasible layers F_1..F_d for a shell of depth d; center J is
// feasible iff J lies in the returned F_0. Entry 0 is F_0.
std::vector<VertexSet> maximal_layers(const BipartiteDigraph& g, const VertexSet& m_rows, int d);

// (J, F_1, ..., F_d) when J is feasible.
std::optional<Shell> maximal_shell(const BipartiteDigraph& g, const VertexSet& m_rows,
                                   const VertexSet& j_cols, int d);

// Shell whose layers only contain the smallest-index witnesses required by
// the previous layer, drawn from the maximal feasible layers.
std::optional<Shell> minimal_shell(const BipartiteDigraph& g, const VertexSet& m_rows,
                                   const VertexSet& j_cols, int d);

enum class GrowthVerdict { holds, violated, hypothesis_not_met, report_only };
std::string to_string(GrowthVerdict v);

struct GrowthCheck {
  GrowthVerdict verdict = GrowthVerdict::hypothesis_not_met;
  bool exhaustive = false;
  std::string failed_hypothesis;
  std::vector<double> bounds;      // min(floor(delta m/4), (32 eps)^-l |J|)
  std::vector<std::size_t> sizes;  // |C_l|
};

// Growth bound for shells centered in J. Hypotheses are checked first; the
// expansion hypothesis is exhaustive when m <= 16 and sampled otherwise
// (sampled mode only reports).
GrowthCheck shell_growth_check(const Shell& s, const BipartiteDigraph& g, double K, double epsilon,
                               double delta, const VertexSet& j_cols);

// Exhaustive check of |in(I)| >= sum |in(i)| - slack |I| for 1 <= |I| <= max_size.
bool expansion_holds_exhaustive(const BipartiteDigraph& g, double slack, int max_size);

// x*_q for each 1-based mark q.
std::vector<double> order_stat_profile(const Eigen::VectorXcd& x, const std::vector<int>& marks);
std::vector<double> order_stat_profile(const Eigen::VectorXd& x, const std::vector<int>& marks);

void write_shell(std::ostream& os, const Shell& s);

}  // namespace sparselab

#endif  // SPARSELAB_SHELLS_HPP_
