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

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "sparselab/config.hpp"
#include "sparselab/error.hpp"
#include "sparselab/exec.hpp"
#include "sparselab/experiments.hpp"
#include "sparselab/selftest.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kIoExit = 3;

int run(const std::string& path, std::string out_dir, const std::string& format, int threads,
        bool serial) {
  using namespace sparselab;
  const ExperimentConfig cfg = load_config(path);
  if (threads > 0) set_thread_count(threads);
  if (out_dir.empty()) out_dir = cfg.output_path.empty() ? "." : cfg.output_path;
  const ExperimentReport rep = run_experiment(cfg, serial ? Exec::serial : Exec::parallel);
  const auto paths =
      write_report(rep, out_dir, format == "json" ? ReportFormat::json : ReportFormat::csv);
  for (const auto& p : paths) std::cout << p << '\n';
  std::fprintf(stderr, "%s: %d trials, %zu errors, %.3f s\n", to_string(cfg.kind).c_str(),
               cfg.trials, rep.errors.size(), rep.wall_clock_seconds);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparselab experiment runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string format = "csv";
  int threads = 0;
  bool serial = false;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment config");
  run_cmd->add_option("config", config_path, "Config file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  run_cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--threads", threads, "OpenMP thread count")->check(CLI::NonNegativeNumber);
  run_cmd->add_flag("--serial", serial, "Use the serial reference runner");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a config file");
  validate_cmd->add_option("config", validate_path, "Config file")->required();

  std::uint64_t seed = 1;
  int scale = 1;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the property suites");
  selftest_cmd->add_option("--seed", seed, "Seed");
  selftest_cmd->add_option("--scale", scale, "Instance multiplier")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  try {
    if (*run_cmd) return run(config_path, out_dir, format, threads, serial);
    if (*validate_cmd) {
      const auto cfg = sparselab::load_config(validate_path);
      std::cout << sparselab::to_text(cfg);
      return 0;
    }
    if (*selftest_cmd) {
      bool ok = true;
      for (const auto& r : sparselab::run_selftest(seed, scale)) {
        std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << " instances=" << r.instances
                  << " failures=" << r.failures << '\n';
        ok = ok && r.passed();
      }
      return ok ? 0 : 1;
    }
  } catch (const sparselab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const sparselab::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIoExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
