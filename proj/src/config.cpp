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

#include "sparselab/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include "sparselab/error.hpp"
#include "sparselab/report.hpp"

namespace sparselab {

namespace {

const std::vector<std::pair<ExperimentKind, const char*>> kKindNames = {
    {ExperimentKind::smin_survey, "smin_survey"},
    {ExperimentKind::esd_survey, "esd_survey"},
    {ExperimentKind::chain_census, "chain_census"},
    {ExperimentKind::shell_growth, "shell_growth"},
    {ExperimentKind::bt_success, "bt_success"},
    {ExperimentKind::stieltjes_compare, "stieltjes_compare"},
    {ExperimentKind::type_mass, "type_mass"},
    {ExperimentKind::event_probe, "event_probe"},
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: " + v);
  }
  if (used != v.size()) throw ConfigError(key + ": not a number: " + v);
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: " + v);
  }
  if (used != v.size()) throw ConfigError(key + ": not an integer: " + v);
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  if (v.empty() || v[0] == '-') throw ConfigError(key + ": not an unsigned integer: " + v);
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(v, &used, 0);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an unsigned integer: " + v);
  }
  if (used != v.size()) throw ConfigError(key + ": not an unsigned integer: " + v);
  return out;
}

std::vector<std::string> split(const std::string& v, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
  std::vector<double> out;
  for (const auto& s : split(v, ',')) out.push_back(to_double(key, s));
  return out;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F f, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += f(xs[i]);
  }
  return out;
}

std::string dist_text(const EntryDistribution& d) { return to_string(d.kind); }

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (const auto& [k, s] : kKindNames) {
    if (name == s) return k;
  }
  throw ConfigError("unknown kind: " + name);
}

const std::vector<ExperimentKind>& all_experiment_kinds() {
  static const std::vector<ExperimentKind> kinds = [] {
    std::vector<ExperimentKind> out;
    for (const auto& kv : kKindNames) out.push_back(kv.first);
    return out;
  }();
  return kinds;
}

Complex parse_complex(const std::string& text, const std::string& key) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw ConfigError(key + ": empty complex value");
  const auto comma = s.find(',');
  if (comma != std::string::npos) {
    return {to_double(key, s.substr(0, comma)), to_double(key, s.substr(comma + 1))};
  }
  if (s.back() != 'i' && s.back() != 'j') return {to_double(key, s), 0.0};
  s.pop_back();
  std::size_t split_at = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  std::string re_part = split_at == std::string::npos ? "" : s.substr(0, split_at);
  std::string im_part = split_at == std::string::npos ? s : s.substr(split_at);
  double im = 0.0;
  if (im_part.empty() || im_part == "+") {
    im = 1.0;
  } else if (im_part == "-") {
    im = -1.0;
  } else {
    im = to_double(key, im_part);
  }
  const double re = re_part.empty() ? 0.0 : to_double(key, re_part);
  return {re, im};
}

std::string format_complex(Complex z) {
  std::string out = format_double(z.real());
  const double im = z.imag();
  if (std::signbit(im)) {
    out += format_double(im);
  } else {
    out += "+" + format_double(im);
  }
  return out + "i";
}

void validate(const ExperimentConfig& c) {
  if (c.n < 1 || c.n > 4096) throw ConfigError("n out of range");
  if (c.kind != ExperimentKind::bt_success && !(c.p > 0.0 && c.p <= 1.0)) {
    throw ConfigError("p out of range");
  }
  if (!(c.alpha >= 1.0) || !std::isfinite(c.alpha)) throw ConfigError("alpha out of range");
  if (c.trials < 1) throw ConfigError("trials out of range");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0 / 32.0)) throw ConfigError("epsilon out of range");
  if (!(c.delta > 0.0 && c.delta <= 1.0)) throw ConfigError("delta out of range");
  if (c.K && !(*c.K >= 0.0)) throw ConfigError("K out of range");
  if (c.k_max && *c.k_max < 1) throw ConfigError("k_max out of range");
  if (c.depth < 1) throw ConfigError("depth out of range");
  if (c.j_size < 1 || c.j_size > c.n) throw ConfigError("j_size out of range");
  if (!(c.eta > 0.0 && c.eta < 1.0)) throw ConfigError("eta out of range");
  if (!(c.rho > 0.0)) throw ConfigError("rho out of range");
  if (c.kind == ExperimentKind::bt_success && (c.bt_k < 1 || c.bt_k >= c.n)) {
    throw ConfigError("bt_k out of range");
  }
  if (!(c.constants.c_tilde > 0.0)) throw ConfigError("c_tilde out of range");
  if (!(c.constants.c_hat > 0.0)) throw ConfigError("c_hat out of range");
  if (!(c.constants.C_cap > 0.0)) throw ConfigError("C_cap out of range");
  if (!(c.constants.c_low > 0.0)) throw ConfigError("c_low out of range");
  for (double t : c.t_marks) {
    if (!(t > 0.0)) throw ConfigError("t_marks out of range");
  }
  for (double r : c.radii) {
    if (!(r >= 0.0)) throw ConfigError("radii out of range");
  }
  for (const Complex& w : c.w_grid) {
    if (!(w.imag() > 0.0)) throw ConfigError("w_grid out of range");
  }
  if (!(c.hybrid_threshold >= 0.0)) throw ConfigError("hybrid_threshold out of range");
  if (!(c.tau > 0.0)) throw ConfigError("tau out of range");
  if (c.q && *c.q < 1) throw ConfigError("q out of range");
  if (!(c.c_const > 0.0)) throw ConfigError("c_const out of range");
  c.dist.validate();
}

ExperimentConfig parse_config(const std::string& text) {
  std::string body;
  {
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      body += line + '\n';
    }
  }
  static const std::regex pair_re(R"(([A-Za-z_][A-Za-z0-9_]*)\s*=\s*([^\s=]+))");
  std::map<std::string, std::string> kv;
  std::string rest;
  auto last = body.cbegin();
  for (std::sregex_iterator it(body.begin(), body.end(), pair_re), end; it != end; ++it) {
    rest.append(last, body.cbegin() + it->position());
    last = body.cbegin() + it->position() + it->length();
    const std::string key = (*it)[1];
    if (kv.count(key)) throw ConfigError("duplicate key: " + key);
    kv[key] = (*it)[2];
  }
  rest.append(last, body.cend());
  if (!trim(rest).empty()) throw ConfigError("malformed entry: " + trim(rest));

  ExperimentConfig c;
  if (!kv.count("kind")) throw ConfigError("missing required key: kind");
  c.kind = experiment_kind_from_string(kv["kind"]);
  c.scale = (c.kind == ExperimentKind::esd_survey || c.kind == ExperimentKind::stieltjes_compare)
                ? ScaleMode::girko
                : ScaleMode::raw;

  std::vector<std::string> required = {"n", "trials", "master_seed"};
  if (c.kind != ExperimentKind::bt_success) required.push_back("p");
  if (c.kind == ExperimentKind::bt_success) required.push_back("bt_k");
  for (const auto& key : required) {
    if (!kv.count(key)) throw ConfigError("missing required key: " + key);
  }

  std::string dist_name = "rademacher";
  std::optional<double> width;
  std::vector<double> dvalues;
  std::vector<double> dprobs;

  const std::map<std::string, std::function<void(const std::string&, const std::string&)>> setters = {
      {"kind", [](const std::string&, const std::string&) {}},
      {"n", [&](auto& k, auto& v) { c.n = static_cast<int>(to_int(k, v)); }},
      {"p", [&](auto& k, auto& v) { c.p = to_double(k, v); }},
      {"alpha", [&](auto& k, auto& v) { c.alpha = to_double(k, v); }},
      {"z", [&](auto& k, auto& v) { c.z = parse_complex(v, k); }},
      {"dist", [&](auto&, auto& v) { dist_name = v; }},
      {"dist_width", [&](auto& k, auto& v) { width = to_double(k, v); }},
      {"dist_values", [&](auto& k, auto& v) { dvalues = to_doubles(k, v); }},
      {"dist_probs", [&](auto& k, auto& v) { dprobs = to_doubles(k, v); }},
      {"trials", [&](auto& k, auto& v) { c.trials = static_cast<int>(to_int(k, v)); }},
      {"master_seed", [&](auto& k, auto& v) { c.master_seed = to_u64(k, v); }},
      {"scale", [&](auto&, auto& v) {
         if (v == "raw") {
           c.scale = ScaleMode::raw;
         } else if (v == "girko") {
           c.scale = ScaleMode::girko;
         } else {
           throw ConfigError("scale: unknown mode " + v);
         }
       }},
      {"K", [&](auto& k, auto& v) { c.K = to_double(k, v); }},
      {"epsilon", [&](auto& k, auto& v) { c.epsilon = to_double(k, v); }},
      {"delta", [&](auto& k, auto& v) { c.delta = to_double(k, v); }},
      {"k_max", [&](auto& k, auto& v) { c.k_max = static_cast<int>(to_int(k, v)); }},
      {"census_cap", [&](auto& k, auto& v) { c.census_cap = to_u64(k, v); }},
      {"depth", [&](auto& k, auto& v) { c.depth = static_cast<int>(to_int(k, v)); }},
      {"j_size", [&](auto& k, auto& v) { c.j_size = static_cast<int>(to_int(k, v)); }},
      {"bt_k", [&](auto& k, auto& v) { c.bt_k = static_cast<int>(to_int(k, v)); }},
      {"eta", [&](auto& k, auto& v) { c.eta = to_double(k, v); }},
      {"rho", [&](auto& k, auto& v) { c.rho = to_double(k, v); }},
      {"bt_mode", [&](auto&, auto& v) {
         if (v == "uniform") {
           c.bt_mode = BTMode::uniform;
         } else if (v == "bernoulli") {
           c.bt_mode = BTMode::bernoulli;
         } else {
           throw ConfigError("bt_mode: unknown mode " + v);
         }
       }},
      {"c_tilde", [&](auto& k, auto& v) { c.constants.c_tilde = to_double(k, v); }},
      {"c_hat", [&](auto& k, auto& v) { c.constants.c_hat = to_double(k, v); }},
      {"C_cap", [&](auto& k, auto& v) { c.constants.C_cap = to_double(k, v); }},
      {"c_low", [&](auto& k, auto& v) { c.constants.c_low = to_double(k, v); }},
      {"t_marks", [&](auto& k, auto& v) { c.t_marks = to_doubles(k, v); }},
      {"radii", [&](auto& k, auto& v) { c.radii = to_doubles(k, v); }},
      {"w_grid", [&](auto& k, auto& v) {
         c.w_grid.clear();
         for (const auto& s : split(v, ';')) c.w_grid.push_back(parse_complex(s, k));
       }},
      {"hybrid_threshold", [&](auto& k, auto& v) { c.hybrid_threshold = to_double(k, v); }},
      {"hybrid_theta", [&](auto& k, auto& v) { c.hybrid_theta = to_double(k, v); }},
      {"hybrid_mean", [&](auto& k, auto& v) { c.hybrid_mean = to_double(k, v); }},
      {"q", [&](auto& k, auto& v) { c.q = static_cast<int>(to_int(k, v)); }},
      {"tau", [&](auto& k, auto& v) { c.tau = to_double(k, v); }},
      {"c_const", [&](auto& k, auto& v) { c.c_const = to_double(k, v); }},
      {"output_path", [&](auto&, auto& v) { c.output_path = v; }},
  };
  for (const auto& [key, value] : kv) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key: " + key);
    it->second(key, value);
  }

  switch (dist_kind_from_string(dist_name)) {
    case DistKind::rademacher: c.dist = EntryDistribution::rademacher(); break;
    case DistKind::standard_gaussian: c.dist = EntryDistribution::standard_gaussian(); break;
    case DistKind::uniform_symmetric:
      if (!width) throw ConfigError("missing required key: dist_width");
      c.dist = EntryDistribution::uniform_symmetric(*width);
      break;
    case DistKind::discrete:
      c.dist = EntryDistribution::discrete(dvalues, dprobs);
      break;
  }
  if (c.kind == ExperimentKind::bt_success && !kv.count("p")) c.p = 1.0;
  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&out](const std::string& k, std::string v) { out.emplace_back(k, std::move(v)); };
  auto num = [](double x) { return format_double(x); };
  add("kind", to_string(c.kind));
  add("n", std::to_string(c.n));
  add("p", num(c.p));
  add("alpha", num(c.alpha));
  add("z", format_complex(c.z));
  add("dist", dist_text(c.dist));
  if (c.dist.kind == DistKind::uniform_symmetric) add("dist_width", num(c.dist.width));
  if (c.dist.kind == DistKind::discrete) {
    add("dist_values", join(c.dist.values, num));
    add("dist_probs", join(c.dist.probs, num));
  }
  add("trials", std::to_string(c.trials));
  add("master_seed", std::to_string(c.master_seed));
  add("scale", c.scale == ScaleMode::raw ? "raw" : "girko");
  if (c.K) add("K", num(*c.K));
  add("epsilon", num(c.epsilon));
  add("delta", num(c.delta));
  if (c.k_max) add("k_max", std::to_string(*c.k_max));
  add("census_cap", std::to_string(c.census_cap));
  add("depth", std::to_string(c.depth));
  add("j_size", std::to_string(c.j_size));
  if (c.bt_k > 0) add("bt_k", std::to_string(c.bt_k));
  add("eta", num(c.eta));
  add("rho", num(c.rho));
  add("bt_mode", c.bt_mode == BTMode::uniform ? "uniform" : "bernoulli");
  add("c_tilde", num(c.constants.c_tilde));
  add("c_hat", num(c.constants.c_hat));
  add("C_cap", num(c.constants.C_cap));
  add("c_low", num(c.constants.c_low));
  add("t_marks", join(c.t_marks, num));
  add("radii", join(c.radii, num));
  add("w_grid", join(c.w_grid, format_complex, ';'));
  add("hybrid_threshold", num(c.hybrid_threshold));
  add("hybrid_theta", num(c.hybrid_theta));
  add("hybrid_mean", num(c.hybrid_mean));
  if (c.q) add("q", std::to_string(*c.q));
  add("tau", num(c.tau));
  add("c_const", num(c.c_const));
  if (!c.output_path.empty()) add("output_path", c.output_path);
  return out;
}

std::string to_text(const ExperimentConfig& c) {
  std::string out;
  for (const auto& [k, v] : config_echo(c)) out += k + "=" + v + "\n";
  return out;
}

}  // namespace sparselab
