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

#include "sparselab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "sparselab/error.hpp"
#include "sparselab/graph.hpp"
#include "sparselab/restricted_inv.hpp"
#include "sparselab/seeds.hpp"
#include "sparselab/shells.hpp"
#include "sparselab/spectra.hpp"
#include "sparselab/types_chains.hpp"

namespace sparselab {

namespace {

using Row = std::vector<Cell>;

std::string short_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

template <typename T>
std::string join_counts(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(xs[i]);
  }
  return out;
}

Cell cell(double x) { return Cell{x}; }
Cell cell(int x) { return Cell{static_cast<std::int64_t>(x)}; }
Cell cell(std::size_t x) { return Cell{static_cast<std::uint64_t>(x)}; }
Cell cell(bool x) { return Cell{x}; }
Cell cell(std::string x) { return Cell{std::move(x)}; }

struct Trial {
  int index = 0;
  std::uint64_t seed = 0;
  std::shared_ptr<const MatrixSample> sample;
  ShiftedMatrix b;
};

struct SmallestPair {
  double s_min = 0.0;
  Eigen::VectorXcd v;
};

SmallestPair smallest_singular_pair(const ComplexMatrix& b) {
  Eigen::BDCSVD<ComplexMatrix> svd(b, Eigen::ComputeThinV);
  const Eigen::Index last = svd.singularValues().size() - 1;
  return {svd.singularValues()(last), svd.matrixV().col(last)};
}

int default_k_max(int n, double pn) {
  if (!(pn > 1.0)) return 1;
  int k = 0;
  while (std::pow(pn, k + 1) <= n * (1.0 + 1e-12)) ++k;
  return std::max(k, 1);
}

double canonical_k(double pn, double alpha) { return pn / (2.0 * alpha); }

VertexSet heavy_rows(const ComplexMatrix& b, double limit) {
  VertexSet out;
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    if (b.row(i).cwiseAbs().sum() > limit) out.push_back(static_cast<int>(i));
  }
  return out;
}

struct KindPlan {
  std::vector<std::string> columns;  // after trial,seed
  std::function<Row(const Trial&)> body;
};

KindPlan plan_for(const ExperimentConfig& cfg) {
  KindPlan plan;
  const double pn = cfg.p * cfg.n;
  switch (cfg.kind) {
    case ExperimentKind::smin_survey:
      plan.columns = {"s_min", "a3_satisfied"};
      plan.body = [](const Trial& t) {
        const auto sv = singular_values(t.b.values);
        Row r{cell(sv.back())};
        r.push_back(t.b.a3_satisfied ? cell(*t.b.a3_satisfied) : Cell{});
        return r;
      };
      break;
    case ExperimentKind::esd_survey:
      plan.columns = {"second_abs_moment"};
      for (double r : cfg.radii) plan.columns.push_back("radial_cdf_" + short_double(r));
      plan.columns.push_back("max_cdf_error");
      plan.columns.push_back("moment_error");
      plan.body = [&cfg](const Trial& t) {
        const EsdMetrics m = t.b.z.imag() == 0.0 ? esd_metrics(RealMatrix(t.b.values.real()), cfg.radii)
                                                 : esd_metrics(t.b.values, cfg.radii);
        Row r{cell(m.second_abs_moment)};
        double worst = 0.0;
        for (std::size_t k = 0; k < m.radii.size(); ++k) {
          r.push_back(cell(m.radial_cdf[k]));
          worst = std::max(worst, std::abs(m.radial_cdf[k] - disc_radial_cdf(m.radii[k])));
        }
        r.push_back(cell(worst));
        r.push_back(cell(std::abs(m.second_abs_moment - kDiscSecondMoment)));
        return r;
      };
      break;
    case ExperimentKind::chain_census: {
      const int k_max = cfg.k_max.value_or(default_k_max(cfg.n, pn));
      const double K = cfg.K.value_or(default_census_k(pn, cfg.alpha));
      plan.columns = {"K", "k_max", "finite_count", "visited", "truncated",
                      "self_balancing_cyclic_found", "cycle_free_by_k", "cyclic_by_k",
                      "self_balancing_cf_by_k"};
      plan.body = [&cfg, k_max, K](const Trial& t) {
        const BipartiteDigraph g = build_graph(t.b, cfg.alpha);
        const TypePartition part = classify_types(g, K);
        const ChainCensus c = chain_census(g, part, k_max, cfg.census_cap, Exec::serial);
        std::vector<std::size_t> cf;
        std::vector<std::size_t> cy;
        std::vector<std::size_t> sb;
        bool found = false;
        for (const auto& row : c.rows) {
          cf.push_back(row.cycle_free);
          cy.push_back(row.cyclic);
          sb.push_back(row.self_balancing_cf);
          found = found || row.self_balancing_cyclic_found;
        }
        return Row{cell(K), cell(k_max), cell(part.finite().size()), cell(c.visited),
                   cell(c.truncated), cell(found), cell(join_counts(cf)), cell(join_counts(cy)),
                   cell(join_counts(sb))};
      };
      break;
    }
    case ExperimentKind::shell_growth: {
      const double K = cfg.K.value_or(canonical_k(pn, cfg.alpha));
      plan.columns = {"s_min", "heavy_rows", "hypothesis_met", "shell_valid", "order_stat_ok",
                      "verdict", "layer_sizes"};
      plan.body = [&cfg, K, pn](const Trial& t) {
        const SmallestPair sp = smallest_singular_pair(t.b.values);
        const VertexSet J = max_set(sp.v, cfg.j_size);
        const VertexSet M = heavy_rows(t.b.values, cfg.c_const * pn);
        const ShellBuild sb = build_shell_from_vector(t.b.values, sp.v, M, J, cfg.depth, cfg.alpha);
        Row r{cell(sp.s_min), cell(M.size()), cell(sb.ok)};
        if (!sb.ok) {
          r.insert(r.end(), {Cell{}, Cell{}, cell(to_string(GrowthVerdict::hypothesis_not_met)), Cell{}});
          return r;
        }
        const BipartiteDigraph g = build_graph(t.b, cfg.alpha);
        const bool valid = validate_shell(sb.shell, g).valid;
        std::vector<std::size_t> sizes;
        bool order_ok = true;
        for (std::size_t q = 0; q < sb.shell.layers.size(); ++q) {
          sizes.push_back(sb.shell.layers[q].size());
          order_ok = order_ok && order_stat(sp.v, static_cast<int>(sizes.back())) >= sb.thresholds[q];
        }
        const GrowthCheck gc = shell_growth_check(sb.shell, g, K, cfg.epsilon, cfg.delta, J);
        r.insert(r.end(), {cell(valid), cell(order_ok), cell(to_string(gc.verdict)), cell(join_counts(sizes))});
        return r;
      };
      break;
    }
    case ExperimentKind::stieltjes_compare:
      plan.columns = {"resolvent_max_diff", "hybrid_max_diff", "frozen_fraction", "girko_diff"};
      plan.body = [&cfg](const Trial& t) {
        const ComplexMatrix& b = t.b.values;
        const auto sv = singular_values(b);
        const ShiftedMatrix h = hybrid_gaussianize(t.b, cfg.hybrid_threshold, cfg.hybrid_theta,
                                                   cfg.hybrid_mean, derive_trial_seed(t.seed, 0, "hybrid"),
                                                   t.b.scale);
        const auto svh = singular_values(h.values);
        double res_diff = 0.0;
        double hyb_diff = 0.0;
        for (const Complex& w : cfg.w_grid) {
          const Complex m = stieltjes(sv, w);
          res_diff = std::max(res_diff, std::abs(m - stieltjes_resolvent(b, w)));
          hyb_diff = std::max(hyb_diff, std::abs(m - stieltjes(svh, w)));
        }
        const double frozen = static_cast<double>(h.frozen->count()) / static_cast<double>(h.frozen->size());
        const LogPotential lp = log_potential_report(sv, {});
        const double girko = std::abs(log_abs_det(b) / static_cast<double>(b.rows()) - lp.log_potential);
        return Row{cell(res_diff), cell(hyb_diff), cell(frozen), cell(girko)};
      };
      break;
    case ExperimentKind::type_mass: {
      const double K = cfg.K.value_or(canonical_k(pn, cfg.alpha));
      plan.columns = {"K", "layers", "finite_count", "infinite_count", "mass_count", "mass_fraction"};
      plan.body = [&cfg, K](const Trial& t) {
        const BipartiteDigraph g = build_graph(t.b, cfg.alpha);
        const TypePartition part = classify_types(g, K);
        const FiniteTypeMass m = finite_type_mass(part, g);
        return Row{cell(K), cell(part.layers.size()), cell(part.finite().size()),
                   cell(part.infinite.size()), cell(m.count), cell(m.fraction)};
      };
      break;
    }
    case ExperimentKind::event_probe: {
      const int q = cfg.q.value_or(static_cast<int>(std::ceil(cfg.tau / cfg.p)));
      const int q_lo = static_cast<int>(std::ceil(cfg.tau / cfg.p));
      const int q_hi = static_cast<int>(std::floor(1.0 / cfg.p));
      if (q < q_lo || q > q_hi || q > cfg.n) throw ConfigError("q out of range");
      plan.columns = {"s_min", "q", "x_q", "s_count", "min_dist", "negsec_rel_error"};
      plan.body = [&cfg, q](const Trial& t) {
        const SmallestPair sp = smallest_singular_pair(t.b.values);
        const RowEvent ev = row_event_diagnostic(t.b, sp.v, q, cfg.tau, cfg.c_const);
        const ColumnDistances cd = column_distances(t.b.values, Exec::serial);
        const double min_dist = *std::min_element(cd.dist.begin(), cd.dist.end());
        Row r{cell(sp.s_min), cell(q), cell(ev.x_q), cell(ev.s_count), cell(min_dist)};
        r.push_back(cd.negsec_relative_error ? cell(*cd.negsec_relative_error) : Cell{});
        return r;
      };
      break;
    }
    case ExperimentKind::bt_success:
      break;
  }
  return plan;
}

ExperimentReport run_bt(const ExperimentConfig& cfg, Exec exec) {
  ExperimentReport rep;
  rep.config = cfg;
  rep.columns = {"trial", "ell", "|J|", "cond_norm", "cond_lower", "submatrix_smin"};
  const ComplexMatrix v = partial_fourier_frame(cfg.bt_k, cfg.n);
  const BTRate rate =
      bt_success_rate(v, cfg.eta, cfg.rho, cfg.trials, cfg.master_seed, cfg.bt_mode, cfg.constants, exec);
  for (int t = 0; t < cfg.trials; ++t) {
    const BTSample& s = rate.samples[static_cast<std::size_t>(t)];
    rep.rows.push_back({cell(t), cell(s.ell), cell(s.J.size()), cell(s.cond_norm), cell(s.cond_lower),
                        cell(s.submatrix_smin)});
  }
  rep.summary = {{"ell", std::to_string(rate.ell)},
                 {"successes", std::to_string(rate.successes)},
                 {"rate", format_double(rate.rate)},
                 {"wilson_lo", format_double(rate.wilson_lo)},
                 {"wilson_hi", format_double(rate.wilson_hi)},
                 {"lower_ref", format_double(rate.lower_ref)}};
  return rep;
}

bool is_numeric(const Cell& c) {
  return std::holds_alternative<std::int64_t>(c) || std::holds_alternative<std::uint64_t>(c) ||
         std::holds_alternative<double>(c);
}

double as_double(const Cell& c) {
  if (auto p = std::get_if<std::int64_t>(&c)) return static_cast<double>(*p);
  if (auto p = std::get_if<std::uint64_t>(&c)) return static_cast<double>(*p);
  return std::get<double>(c);
}

std::string json_cell(const Cell& c) {
  if (std::holds_alternative<std::monostate>(c)) return "null";
  if (auto p = std::get_if<bool>(&c)) return *p ? "true" : "false";
  if (auto p = std::get_if<double>(&c)) return json_number(*p);
  if (auto p = std::get_if<std::string>(&c)) return json_string(*p);
  return format_cell(c);
}

void add_census_table(ExperimentReport& rep) {
  const auto col = [&rep](const std::string& name) {
    return static_cast<std::size_t>(std::find(rep.columns.begin(), rep.columns.end(), name) - rep.columns.begin());
  };
  const std::size_t cf_col = col("cycle_free_by_k");
  const std::size_t cy_col = col("cyclic_by_k");
  const std::size_t sb_col = col("self_balancing_cf_by_k");
  const std::size_t found_col = col("self_balancing_cyclic_found");
  const std::size_t trunc_col = col("truncated");
  const int k_max = rep.config.k_max.value_or(default_k_max(rep.config.n, rep.config.p * rep.config.n));
  std::vector<std::vector<double>> cf(k_max), cy(k_max), sb(k_max);
  bool found = false;
  bool truncated = false;
  auto parse = [](const Cell& c) {
    std::vector<double> out;
    if (auto s = std::get_if<std::string>(&c)) {
      std::size_t pos = 0;
      while (pos < s->size()) {
        std::size_t end = s->find(';', pos);
        if (end == std::string::npos) end = s->size();
        out.push_back(std::stod(s->substr(pos, end - pos)));
        pos = end + 1;
      }
    }
    return out;
  };
  for (const auto& row : rep.rows) {
    if (auto b = std::get_if<bool>(&row[found_col])) found = found || *b;
    if (auto b = std::get_if<bool>(&row[trunc_col])) truncated = truncated || *b;
    const auto a = parse(row[cf_col]);
    const auto c = parse(row[cy_col]);
    const auto s = parse(row[sb_col]);
    for (int k = 0; k < k_max && k < static_cast<int>(a.size()); ++k) {
      cf[k].push_back(a[k]);
      cy[k].push_back(c[k]);
      sb[k].push_back(s[k]);
    }
  }
  Table t;
  t.columns = {"k", "cycle_free", "cyclic", "self_balancing_cf", "self_balancing_cyclic_found", "truncated"};
  for (int k = 0; k < k_max; ++k) {
    t.rows.push_back({std::to_string(k + 1), format_double(quantile(cf[k], 0.5)),
                      format_double(quantile(cy[k], 0.5)), format_double(quantile(sb[k], 0.5)),
                      found ? "true" : "false", truncated ? "true" : "false"});
  }
  rep.extra_tables.push_back({"census", std::move(t)});
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << body;
  out.close();
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      c);
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, int trial) {
  return derive_trial_seed(cfg.master_seed, static_cast<std::uint64_t>(trial), "trial");
}

std::vector<std::string> experiment_operations(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::smin_survey: return {"sample_matrix", "shift_and_scale", "singular_values"};
    case ExperimentKind::esd_survey: return {"sample_matrix", "shift_and_scale", "eigenvalues", "esd_metrics"};
    case ExperimentKind::chain_census:
      return {"sample_matrix", "build_graph", "classify_types", "chain_census"};
    case ExperimentKind::shell_growth:
      return {"sample_matrix", "build_shell_from_vector", "validate_shell", "shell_growth_check"};
    case ExperimentKind::bt_success: return {"sample_bt_subset", "check_bt_conditions", "bt_success_rate"};
    case ExperimentKind::stieltjes_compare:
      return {"sample_matrix", "hybrid_gaussianize", "stieltjes", "stieltjes_resolvent", "log_abs_det"};
    case ExperimentKind::type_mass: return {"sample_matrix", "build_graph", "classify_types", "finite_type_mass"};
    case ExperimentKind::event_probe:
      return {"sample_matrix", "row_event_diagnostic", "column_distances", "max_set"};
  }
  return {};
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, Exec exec) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  ExperimentReport rep;
  if (cfg.kind == ExperimentKind::bt_success) {
    rep = run_bt(cfg, exec);
  } else {
    rep.config = cfg;
    const KindPlan plan = plan_for(cfg);
    rep.columns = {"trial", "seed"};
    rep.columns.insert(rep.columns.end(), plan.columns.begin(), plan.columns.end());
    rep.rows.assign(static_cast<std::size_t>(cfg.trials), Row{});
    std::vector<std::string> messages(static_cast<std::size_t>(cfg.trials));

#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (int t = 0; t < cfg.trials; ++t) {
      Trial trial;
      trial.index = t;
      trial.seed = trial_seed(cfg, t);
      Row row{cell(t), Cell{trial.seed}};
      try {
        trial.sample = std::make_shared<const MatrixSample>(
            sample_matrix(cfg.n, cfg.p, cfg.alpha, cfg.dist, trial.seed));
        trial.b = shift_and_scale(trial.sample, cfg.z, cfg.scale);
        Row body = plan.body(trial);
        row.insert(row.end(), body.begin(), body.end());
      } catch (const std::exception& e) {
        messages[static_cast<std::size_t>(t)] = e.what();
        row.resize(rep.columns.size());
      }
      rep.rows[static_cast<std::size_t>(t)] = std::move(row);
    }
    for (int t = 0; t < cfg.trials; ++t) {
      if (!messages[static_cast<std::size_t>(t)].empty()) {
        rep.errors.push_back({t, messages[static_cast<std::size_t>(t)]});
      }
    }
    if (cfg.kind == ExperimentKind::chain_census) add_census_table(rep);
  }
  rep.wall_clock_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Table row_table(const ExperimentReport& rep) {
  Table t;
  t.columns = rep.columns;
  for (const auto& row : rep.rows) {
    std::vector<std::string> fields;
    for (const auto& c : row) fields.push_back(format_cell(c));
    t.rows.push_back(std::move(fields));
  }
  return t;
}

std::string report_json(const ExperimentReport& rep) {
  std::string out = "{\n";
  out += "  \"kind\": " + json_string(to_string(rep.config.kind)) + ",\n";
  out += "  \"config\": {";
  const auto echo = config_echo(rep.config);
  for (std::size_t k = 0; k < echo.size(); ++k) {
    out += (k ? ", " : "") + json_string(echo[k].first) + ": " + json_string(echo[k].second);
  }
  out += "},\n  \"columns\": [";
  for (std::size_t k = 0; k < rep.columns.size(); ++k) out += (k ? ", " : "") + json_string(rep.columns[k]);
  out += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < rep.rows.size(); ++r) {
    out += r ? ",\n    [" : "\n    [";
    for (std::size_t k = 0; k < rep.rows[r].size(); ++k) out += (k ? ", " : "") + json_cell(rep.rows[r][k]);
    out += "]";
  }
  out += rep.rows.empty() ? "],\n" : "\n  ],\n";

  out += "  \"aggregates\": {";
  bool first = true;
  for (std::size_t k = 0; k < rep.columns.size(); ++k) {
    const std::string& name = rep.columns[k];
    if (name == "trial" || name == "seed") continue;
    std::vector<double> values;
    int trues = 0;
    int bools = 0;
    for (const auto& row : rep.rows) {
      if (k >= row.size()) continue;
      if (auto b = std::get_if<bool>(&row[k])) {
        ++bools;
        trues += *b ? 1 : 0;
      } else if (is_numeric(row[k])) {
        values.push_back(as_double(row[k]));
      }
    }
    std::string entry;
    if (bools > 0) {
      const Interval w = wilson_interval(trues, bools);
      entry = "{\"true\": " + std::to_string(trues) + ", \"total\": " + std::to_string(bools) +
              ", \"frequency\": " + json_number(static_cast<double>(trues) / bools) +
              ", \"wilson_lo\": " + json_number(w.lo) + ", \"wilson_hi\": " + json_number(w.hi) + "}";
    } else if (!values.empty()) {
      const Summary s = summarize(values);
      entry = "{\"count\": " + std::to_string(s.count) + ", \"mean\": " + json_number(s.mean) +
              ", \"median\": " + json_number(s.median) + ", \"q05\": " + json_number(s.q05) +
              ", \"q95\": " + json_number(s.q95) + ", \"min\": " + json_number(s.min) +
              ", \"max\": " + json_number(s.max) + "}";
    } else {
      continue;
    }
    out += (first ? "\n    " : ",\n    ") + json_string(name) + ": " + entry;
    first = false;
  }
  out += first ? "},\n" : "\n  },\n";

  out += "  \"summary\": {";
  for (std::size_t k = 0; k < rep.summary.size(); ++k) {
    out += (k ? ", " : "") + json_string(rep.summary[k].first) + ": " + json_string(rep.summary[k].second);
  }
  out += "},\n  \"errors\": [";
  for (std::size_t k = 0; k < rep.errors.size(); ++k) {
    out += (k ? ", " : "") + std::string("{\"trial\": ") + std::to_string(rep.errors[k].trial) +
           ", \"message\": " + json_string(rep.errors[k].message) + "}";
  }
  out += "],\n";
  for (const auto& extra : rep.extra_tables) {
    out += "  " + json_string(extra.name) + ": [";
    for (std::size_t r = 0; r < extra.table.rows.size(); ++r) {
      out += r ? ", {" : "{";
      for (std::size_t k = 0; k < extra.table.columns.size(); ++k) {
        out += (k ? ", " : "") + json_string(extra.table.columns[k]) + ": " + json_string(extra.table.rows[r][k]);
      }
      out += "}";
    }
    out += "],\n";
  }
  out += "  \"wall_clock_seconds\": " + json_number(rep.wall_clock_seconds) + "\n}\n";
  return out;
}

std::vector<std::string> write_report(const ExperimentReport& rep, const std::string& dir,
                                      ReportFormat format) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
  const std::string stem = to_string(rep.config.kind);
  std::vector<std::string> paths;
  if (format == ReportFormat::json) {
    const fs::path path = fs::path(dir) / (stem + ".json");
    write_file(path, report_json(rep));
    paths.push_back(path.string());
    return paths;
  }
  auto emit = [&](const fs::path& path, const Table& t) {
    std::ostringstream os;
    write_csv(os, t);
    write_file(path, os.str());
    paths.push_back(path.string());
  };
  emit(fs::path(dir) / (stem + ".csv"), row_table(rep));
  for (const auto& extra : rep.extra_tables) emit(fs::path(dir) / (stem + "_" + extra.name + ".csv"), extra.table);
  return paths;
}

}  // namespace sparselab
