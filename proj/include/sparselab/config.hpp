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

#ifndef SPARSELAB_CONFIG_HPP_
#define SPARSELAB_CONFIG_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparselab/restricted_inv.hpp"
#include "sparselab/sampling.hpp"

namespace sparselab {

enum class ExperimentKind {
  smin_survey,
  esd_survey,
  chain_census,
  shell_growth,
  bt_success,
  stieltjes_compare,
  type_mass,
  event_probe,
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);
const std::vector<ExperimentKind>& all_experiment_kinds();

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::smin_survey;
  int n = 0;
  double p = 0.0;
  double alpha = 1.0;
  Complex z{0.0, 0.0};
  EntryDistribution dist = EntryDistribution::rademacher();
  int trials = 0;
  std::uint64_t master_seed = 0;
  ScaleMode scale = ScaleMode::raw;

  // Graph, type and chain parameters. K defaults per kind.
  std::optional<double> K;
  double epsilon = 0.01;
  double delta = 0.5;
  std::optional<int> k_max;
  std::size_t census_cap = 10'000'000;

  // Shells.
  int depth = 2;
  int j_size = 4;

  // Restricted invertibility.
  int bt_k = 0;
  double eta = 0.5;
  double rho = 1.0;
  BTMode bt_mode = BTMode::uniform;
  BTConstants constants;

  // Spectra.
  std::vector<double> t_marks{0.001, 0.01, 0.1};
  std::vector<double> radii{0.3, 0.5, 0.8};
  std::vector<Complex> w_grid{{0.0, 0.5}, {0.0, 1.0}, {0.5, 0.5}};
  double hybrid_threshold = 1.0;
  double hybrid_theta = 0.0;
  double hybrid_mean = 0.0;

  // Row event probe.
  std::optional<int> q;
  double tau = 1.0;
  double c_const = 4.0;

  std::string output_path;
};

// Parses flat key=value text. Pairs may be separated by newlines or blanks;
// '#' starts a comment. Throws ConfigError naming the offending key.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Range checks shared by the parser and programmatic callers.
void validate(const ExperimentConfig& cfg);

// Canonical key=value listing with every default filled in.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg);
std::string to_text(const ExperimentConfig& cfg);

// Accepts a+bi, a-bi, bi, a and "re,im"; errors name `key`.
Complex parse_complex(const std::string& text, const std::string& key = "z");
std::string format_complex(Complex z);

}  // namespace sparselab

#endif  // SPARSELAB_CONFIG_HPP_
