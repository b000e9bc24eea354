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

#include "sparselab/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "sparselab/error.hpp"
#include "sparselab/seeds.hpp"

namespace sparselab {

std::string to_string(DistKind kind) {
  switch (kind) {
    case DistKind::rademacher: return "rademacher";
    case DistKind::standard_gaussian: return "standard_gaussian";
    case DistKind::uniform_symmetric: return "uniform_symmetric";
    case DistKind::discrete: return "discrete";
  }
  return "unknown";
}

DistKind dist_kind_from_string(const std::string& name) {
  if (name == "rademacher") return DistKind::rademacher;
  if (name == "standard_gaussian" || name == "gaussian") return DistKind::standard_gaussian;
  if (name == "uniform_symmetric" || name == "uniform") return DistKind::uniform_symmetric;
  if (name == "discrete") return DistKind::discrete;
  throw ConfigError("unknown distribution kind: " + name);
}

EntryDistribution EntryDistribution::rademacher() {
  EntryDistribution d;
  d.kind = DistKind::rademacher;
  d.mean = 0.0;
  d.variance = 1.0;
  return d;
}

EntryDistribution EntryDistribution::standard_gaussian() {
  EntryDistribution d;
  d.kind = DistKind::standard_gaussian;
  d.mean = 0.0;
  d.variance = 1.0;
  return d;
}

EntryDistribution EntryDistribution::uniform_symmetric(double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw ConfigError("uniform_symmetric width must be positive and finite");
  }
  EntryDistribution d;
  d.kind = DistKind::uniform_symmetric;
  d.width = width;
  d.mean = 0.0;
  d.variance = width * width / 3.0;
  return d;
}

EntryDistribution EntryDistribution::discrete(std::vector<double> values, std::vector<double> probs) {
  EntryDistribution d;
  d.kind = DistKind::discrete;
  d.values = std::move(values);
  d.probs = std::move(probs);
  if (d.values.empty() || d.values.size() != d.probs.size()) {
    throw ConfigError("discrete distribution needs matching nonempty values/probs");
  }
  double mean = 0.0;
  double second = 0.0;
  for (std::size_t k = 0; k < d.values.size(); ++k) {
    mean += d.values[k] * d.probs[k];
    second += d.values[k] * d.values[k] * d.probs[k];
  }
  d.mean = mean;
  d.variance = second - mean * mean;
  d.validate();
  return d;
}

void EntryDistribution::validate() const {
  double analytic_mean = 0.0;
  double analytic_var = 1.0;
  switch (kind) {
    case DistKind::rademacher:
    case DistKind::standard_gaussian:
      break;
    case DistKind::uniform_symmetric:
      if (!(width > 0.0)) throw ConfigError("uniform_symmetric width must be positive");
      analytic_var = width * width / 3.0;
      break;
    case DistKind::discrete: {
      if (values.empty() || values.size() != probs.size()) {
        throw ConfigError("discrete distribution needs matching nonempty values/probs");
      }
      double total = 0.0;
      double second = 0.0;
      analytic_mean = 0.0;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(probs[k] >= 0.0)) throw ConfigError("discrete probabilities must be non-negative");
        total += probs[k];
        analytic_mean += values[k] * probs[k];
        second += values[k] * values[k] * probs[k];
      }
      if (std::abs(total - 1.0) > 1e-12) {
        throw ConfigError("discrete probabilities do not sum to 1");
      }
      analytic_var = second - analytic_mean * analytic_mean;
      break;
    }
  }
  if (std::abs(mean - analytic_mean) > 1e-12 || std::abs(variance - analytic_var) > 1e-12) {
    throw ConfigError("declared mean/variance do not match the distribution kind");
  }
}

namespace {

void check_sample_args(int n, double p, double alpha) {
  if (n < 1) throw ConfigError("n must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p out of range");
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be >= 1");
}

double draw(const EntryDistribution& dist, std::mt19937_64& gen) {
  switch (dist.kind) {
    case DistKind::rademacher:
      return (gen() >> 63) ? 1.0 : -1.0;
    case DistKind::standard_gaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      return normal(gen);
    }
    case DistKind::uniform_symmetric: {
      std::uniform_real_distribution<double> uni(-dist.width, dist.width);
      return uni(gen);
    }
    case DistKind::discrete: {
      std::discrete_distribution<std::size_t> pick(dist.probs.begin(), dist.probs.end());
      return dist.values[pick(gen)];
    }
  }
  return 0.0;
}

}  // namespace

MatrixSample sample_matrix_streams(int n, double p, double alpha, const EntryDistribution& dist,
                                   std::uint64_t mask_seed, std::uint64_t xi_seed) {
  check_sample_args(n, p, alpha);
  dist.validate();
  MatrixSample s;
  s.n = n;
  s.p = p;
  s.alpha = alpha;
  s.dist = dist;
  s.mask.resize(n, n);
  s.xi.resize(n, n);
  s.entries.resize(n, n);

  std::mt19937_64 mask_gen(mask_seed);
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) s.mask(i, j) = coin(mask_gen);
  }
  std::mt19937_64 xi_gen(xi_seed);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      s.xi(i, j) = draw(dist, xi_gen);
      s.entries(i, j) = s.mask(i, j) ? s.xi(i, j) : 0.0;
    }
  }
  return s;
}

MatrixSample sample_matrix(int n, double p, double alpha, const EntryDistribution& dist,
                           std::uint64_t seed) {
  MatrixSample s = sample_matrix_streams(n, p, alpha, dist, derive_trial_seed(seed, 0, "mask"),
                                         derive_trial_seed(seed, 0, "xi"));
  s.seed = seed;
  return s;
}

MatrixSample make_sample(const BoolMatrix& mask, const RealMatrix& xi, double p, double alpha,
                         std::uint64_t seed, EntryDistribution dist) {
  if (mask.rows() != mask.cols() || xi.rows() != mask.rows() || xi.cols() != mask.cols()) {
    throw DimensionError("make_sample: mask and xi must be square and of equal size");
  }
  check_sample_args(static_cast<int>(mask.rows()), p, alpha);
  MatrixSample s;
  s.n = static_cast<int>(mask.rows());
  s.p = p;
  s.alpha = alpha;
  s.seed = seed;
  s.dist = std::move(dist);
  s.mask = mask;
  s.xi = xi;
  s.entries = mask.select(xi.array(), 0.0).matrix();
  return s;
}

ShiftedMatrix shift_and_scale(std::shared_ptr<const MatrixSample> a, Complex z, ScaleMode mode) {
  ShiftedMatrix b;
  const int n = a->n;
  b.z = z;
  b.mode = mode;
  b.scale = mode == ScaleMode::raw ? 1.0 : 1.0 / std::sqrt(a->pn());
  b.shift_applied_after_scale = true;
  b.values = (b.scale * a->entries).cast<Complex>();
  for (int i = 0; i < n; ++i) b.values(i, i) -= z;
  if (mode == ScaleMode::raw) {
    const double bound = 1.0 / a->alpha;
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      for (int i = 0; i < n; ++i) {
        if (std::abs(Complex(b.scale * a->entries(i, j), 0.0) - z) < bound) {
          ok = false;
          break;
        }
      }
    }
    b.a3_satisfied = ok;
  }
  b.source = std::move(a);
  return b;
}

ShiftedMatrix shift_and_scale(const MatrixSample& a, Complex z, ScaleMode mode) {
  return shift_and_scale(std::make_shared<const MatrixSample>(a), z, mode);
}

ShiftedMatrix hybrid_gaussianize(const ShiftedMatrix& b, double threshold, double theta,
                                 double gaussian_mean, std::uint64_t seed, double entry_scale) {
  if (!(threshold >= 0.0)) throw ConfigError("hybrid_gaussianize: threshold must be >= 0");
  if (!b.source) throw PreconditionError("hybrid_gaussianize: matrix has no source sample");
  const MatrixSample& a = *b.source;
  ShiftedMatrix out = b;
  BoolMatrix frozen(a.n, a.n);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(gaussian_mean, 1.0);
  for (int i = 0; i < a.n; ++i) {
    for (int j = 0; j < a.n; ++j) {
      const bool keep = std::abs(a.xi(i, j) - theta) > threshold;
      frozen(i, j) = keep;
      if (!keep) {
        Complex v(entry_scale * normal(gen), 0.0);
        if (i == j) v -= b.z;
        out.values(i, j) = v;
      }
    }
  }
  out.frozen = std::move(frozen);
  return out;
}

std::vector<Triplet> nonzeros(const ComplexMatrix& m) {
  std::vector<Triplet> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != Complex(0.0, 0.0)) {
        out.push_back({static_cast<int>(i), static_cast<int>(j), m(i, j)});
      }
    }
  }
  return out;
}

std::vector<Triplet> nonzeros(const RealMatrix& m) {
  std::vector<Triplet> out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) != 0.0) out.push_back({static_cast<int>(i), static_cast<int>(j), m(i, j)});
    }
  }
  return out;
}

ComplexMatrix MatrixFile::dense() const {
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (const auto& t : entries) m(t.i, t.j) = t.value;
  return m;
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix_body(std::ostream& os, const MatrixSample& a, const std::vector<Triplet>& nz) {
  os << a.n << ' ' << fmt17(a.p) << ' ' << fmt17(a.alpha) << ' ' << a.seed << ' '
     << to_string(a.dist.kind) << ' ' << fmt17(a.dist.mean) << '\n';
  for (const auto& t : nz) {
    os << t.i << ' ' << t.j << ' ' << fmt17(t.value.real()) << ' ' << fmt17(t.value.imag())
       << '\n';
  }
  if (!os) throw IoError("failed writing matrix file");
}

}  // namespace

void write_matrix_file(std::ostream& os, const MatrixSample& a) {
  write_matrix_body(os, a, nonzeros(a.entries));
}

void write_matrix_file(std::ostream& os, const ShiftedMatrix& b) {
  if (!b.source) throw PreconditionError("write_matrix_file: matrix has no source sample");
  write_matrix_body(os, *b.source, nonzeros(b.values));
}

MatrixFile read_matrix_file(std::istream& is) {
  MatrixFile f;
  std::string header;
  if (!std::getline(is, header)) throw IoError("matrix file: missing header");
  {
    std::istringstream hs(header);
    if (!(hs >> f.n >> f.p >> f.alpha >> f.seed >> f.dist_kind >> f.theta)) {
      throw IoError("matrix file: malformed header");
    }
  }
  if (f.n < 1) throw IoError("matrix file: bad dimension");
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    int i = 0;
    int j = 0;
    std::string re;
    std::string im;
    if (!(ls >> i >> j >> re >> im)) throw IoError("matrix file: malformed entry line");
    if (i < 0 || j < 0 || i >= f.n || j >= f.n) throw IoError("matrix file: index out of range");
    f.entries.push_back({i, j, Complex(std::strtod(re.c_str(), nullptr),
                                       std::strtod(im.c_str(), nullptr))});
  }
  return f;
}

}  // namespace sparselab
