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

#ifndef SPARSELAB_EXPERIMENTS_HPP_
#define SPARSELAB_EXPERIMENTS_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sparselab/config.hpp"
#include "sparselab/exec.hpp"
#include "sparselab/report.hpp"

namespace sparselab {

// Missing values (failed trials) are std::monostate.
using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;

std::string format_cell(const Cell& c);

struct TrialError {
  int trial = 0;
  std::string message;
};

struct NamedTable {
  std::string name;
  Table table;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;  // rows[t] belongs to trial t
  std::vector<TrialError> errors;
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<NamedTable> extra_tables;
  double wall_clock_seconds = 0.0;
};

// Seed of trial t; every per-trial stream derives from it.
std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial);

// Library operations each experiment kind drives.
std::vector<std::string> experiment_operations(ExperimentKind kind);

// Rows are identical for both execution modes and any thread count.
ExperimentReport run_experiment(const ExperimentConfig& cfg, Exec exec = Exec::parallel);

enum class ReportFormat { csv, json };

Table row_table(const ExperimentReport& rep);
std::string report_json(const ExperimentReport& rep);

// Writes <dir>/<kind>.csv (plus <dir>/<kind>_<table>.csv per extra table)
// or <dir>/<kind>.json and returns the written paths. Throws IoError.
std::vector<std::string> write_report(const ExperimentReport& rep, const std::string& dir,
                                      ReportFormat format);

}  // namespace sparselab

#endif  // SPARSELAB_EXPERIMENTS_HPP_
