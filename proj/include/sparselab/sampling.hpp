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

#ifndef SPARSELAB_SAMPLING_HPP_
#define SPARSELAB_SAMPLING_HPP_

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sparselab {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

enum class DistKind { rademacher, standard_gaussian, uniform_symmetric, discrete };

std::string to_string(DistKind kind);
DistKind dist_kind_from_string(const std::string& name);

// Law of the raw entries xi. Construct through the factory functions, which
// fill in the analytic mean and variance and validate the parameters.
struct EntryDistribution {
  DistKind kind = DistKind::rademacher;
  double width = 0.0;           // uniform_symmetric: support [-width, width]
  std::vector<double> values;   // discrete
  std::vector<double> probs;    // discrete
  double mean = 0.0;
  double variance = 1.0;

  static EntryDistribution rademacher();
  static EntryDistribution standard_gaussian();
  static EntryDistribution uniform_symmetric(double width);
  static EntryDistribution discrete(std::vector<double> values, std::vector<double> probs);

  // Throws ConfigError when the invariants (normalized probabilities,
  // analytic variance) are violated.
  void validate() const;
};

// The sparse matrix A = (delta_ij * xi_ij). xi is populated for every cell,
// including cells outside the mask.
struct MatrixSample {
  int n = 0;
  double p = 0.0;
  double alpha = 1.0;
  BoolMatrix mask;
  RealMatrix xi;
  RealMatrix entries;
  std::uint64_t seed = 0;
  EntryDistribution dist;

  double pn() const { return p * n; }
};

MatrixSample sample_matrix(int n, double p, double alpha, const EntryDistribution& dist,
                           std::uint64_t seed);

// Lower-level entry point with explicit mask and value streams. sample_matrix
// derives both from its seed.
MatrixSample sample_matrix_streams(int n, double p, double alpha, const EntryDistribution& dist,
                                   std::uint64_t mask_seed, std::uint64_t xi_seed);

// Builds a sample from given raw values and mask (fixtures, file loading).
MatrixSample make_sample(const BoolMatrix& mask, const RealMatrix& xi, double p, double alpha,
                         std::uint64_t seed = 0,
                         EntryDistribution dist = EntryDistribution::rademacher());

enum class ScaleMode { raw, girko };

struct ShiftedMatrix {
  std::shared_ptr<const MatrixSample> source;
  Complex z{0.0, 0.0};
  double scale = 1.0;
  ScaleMode mode = ScaleMode::raw;
  bool shift_applied_after_scale = true;
  ComplexMatrix values;
  // Whether |scale * a_ij - z| >= 1/alpha over every cell; empty in girko mode.
  std::optional<bool> a3_satisfied;
  // Cells kept unchanged by hybrid_gaussianize (the set Q); empty otherwise.
  std::optional<BoolMatrix> frozen;

  int n() const { return static_cast<int>(values.rows()); }
  double alpha() const { return source ? source->alpha : 1.0; }
};

ShiftedMatrix shift_and_scale(std::shared_ptr<const MatrixSample> a, Complex z, ScaleMode mode);
ShiftedMatrix shift_and_scale(const MatrixSample& a, Complex z, ScaleMode mode);

// Replaces every cell with |xi_ij - theta| <= threshold by an independent
// N(gaussian_mean, 1) draw times entry_scale (the diagonal keeps its -z);
// the remaining cells (the frozen set Q) are copied bit-for-bit.
ShiftedMatrix hybrid_gaussianize(const ShiftedMatrix& b, double threshold, double theta,
                                 double gaussian_mean, std::uint64_t seed,
                                 double entry_scale = 1.0);

// Coordinate-list view of the nonzero cells, row-major order.
struct Triplet {
  int i;
  int j;
  Complex value;
};
std::vector<Triplet> nonzeros(const ComplexMatrix& m);
std::vector<Triplet> nonzeros(const RealMatrix& m);

// Text matrix file: header "n p alpha seed dist_kind theta", then one
// "i j re im" line per nonzero with %.17g floats.
struct MatrixFile {
  int n = 0;
  double p = 0.0;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::string dist_kind;
  double theta = 0.0;
  std::vector<Triplet> entries;

  ComplexMatrix dense() const;
};

void write_matrix_file(std::ostream& os, const MatrixSample& a);
void write_matrix_file(std::ostream& os, const ShiftedMatrix& b);
MatrixFile read_matrix_file(std::istream& is);

}  // namespace sparselab

#endif  // SPARSELAB_SAMPLING_HPP_
