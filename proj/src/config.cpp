// Copyright 2026 The sirw Authors.
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

#include "sirw/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sirw/error.hpp"

namespace sirw {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void check_key(const std::string& key) {
  if (!is_known_key(key)) throw Error(ErrorCode::kInvalidArgument, "unknown config key", key);
}

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  throw Error(ErrorCode::kInvalidArgument, "config values must be scalars", key);
}

}  // namespace

const std::vector<KeyInfo>& known_keys() {
  static const std::vector<KeyInfo> keys = {
      {"lambda", "infection rate per S-I edge"},
      {"gamma", "recovery rate"},
      {"omega", "break rate per S-I edge"},
      {"alpha", "rewiring probability of a broken edge"},
      {"mu", "mean degree of the Erdos-Renyi graph"},
      {"n", "population size"},
      {"init.kind", "single | positive"},
      {"init.i0_fraction", "initially infected fraction for init.kind=positive"},
      {"seed", "master seed"},
      {"threshold", "outbreak threshold as a fraction of n"},
      {"checkpoint_stride", "events between trajectory checkpoints"},
      {"replicates", "independent runs"},
      {"edge_attach", "poisson | binomial"},
      {"workers", "worker threads (does not affect results)"},
      {"ode.init", "zero | positive:<i0>"},
      {"ode.rel_tol", "ODE relative tolerance"},
      {"ode.abs_tol", "ODE absolute tolerance"},
      {"phase.offsets", "comma list of relative offsets above lambda_c"},
      {"sweep.lambda_grid", "comma list or start:stop:count"},
      {"sweep.variants", "comma list of evoSIR, delSIR, custom"},
      {"sweep.save_trajectories", "write per-replicate trajectories"},
  };
  return keys;
}

bool is_known_key(const std::string& key) {
  const auto& keys = known_keys();
  return std::any_of(keys.begin(), keys.end(), [&](const KeyInfo& k) { return key == k.name; });
}

std::string env_name(const std::string& key) {
  std::string out = "SIRW_";
  for (char c : key) {
    out.push_back(c == '.' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

Config Config::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file '" + path + "'", "config");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str(), path);
}

Config Config::from_text(const std::string& text, const std::string& origin) {
  Config cfg;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kInvalidArgument, origin + ": " + e.what(), "config");
    }
    const nlohmann::json& obj = doc.contains("config") ? doc.at("config") : doc;
    if (!obj.is_object()) {
      throw Error(ErrorCode::kInvalidArgument, origin + ": expected a JSON object", "config");
    }
    for (const auto& [k, v] : obj.items()) cfg.set(k, json_scalar(v, k));
    return cfg;
  }
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kInvalidArgument,
                  origin + ":" + std::to_string(lineno) + ": expected key = value", "config");
    }
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void Config::set(const std::string& key, const std::string& value) {
  check_key(key);
  values_[key] = value;
}

void Config::erase(const std::string& key) { values_.erase(key); }

void Config::apply_env() {
  for (const KeyInfo& k : known_keys()) {
    if (const char* v = std::getenv(env_name(k.name).c_str())) values_[k.name] = v;
  }
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

const std::string& Config::require(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw Error(ErrorCode::kMissingKey, "missing required key", key);
  return it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto v = get(key);
  return v ? parse_double(*v, key) : fallback;
}

double Config::require_double(const std::string& key) const {
  return parse_double(require(key), key);
}

std::int64_t Config::get_int(const std::string& key, std::int64_t fallback) const {
  const auto v = get(key);
  return v ? parse_int(*v, key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  const auto v = get(key);
  return v ? parse_u64(*v, key) : fallback;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const auto v = get(key);
  return v ? parse_bool(*v, key) : fallback;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
  return parse_double_list(require(key), key);
}

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(out)) {
    throw Error(ErrorCode::kInvalidArgument, "expected a finite number, got '" + text + "'", key);
  }
  return out;
}

std::int64_t parse_int(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    // Accept integral floats such as 1e5.
    const double d = parse_double(t, key);
    if (d != std::floor(d) || std::abs(d) > 9.0e15) {
      throw Error(ErrorCode::kInvalidArgument, "expected an integer, got '" + text + "'", key);
    }
    return static_cast<std::int64_t>(d);
  }
  return out;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected an unsigned 64-bit integer, got '" + text + "'", key);
  }
  return out;
}

bool parse_bool(const std::string& text, const std::string& key) {
  const std::string t = lower(trim(text));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw Error(ErrorCode::kInvalidArgument, "expected a boolean, got '" + text + "'", key);
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::istringstream ss(t);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) {
      throw Error(ErrorCode::kInvalidArgument, "range must be start:stop:count", key);
    }
    const double a = parse_double(parts[0], key);
    const double b = parse_double(parts[1], key);
    const std::int64_t count = parse_int(parts[2], key);
    if (count < 1 || (count == 1 && a != b)) {
      throw Error(ErrorCode::kInvalidArgument, "range count must be >= 2", key);
    }
    for (std::int64_t k = 0; k < count; ++k) {
      out.push_back(count == 1 ? a
                               : a + (b - a) * static_cast<double>(k) /
                                         static_cast<double>(count - 1));
    }
    return out;
  }
  std::istringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, key));
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty list", key);
  return out;
}

ModelParams resolve_params(const Config& config, bool need_n) {
  ModelParams p;
  p.lambda = config.require_double("lambda");
  p.gamma = config.require_double("gamma");
  p.omega = config.require_double("omega");
  p.alpha = config.require_double("alpha");
  p.mu = config.require_double("mu");
  p.n = need_n ? parse_int(config.require("n"), "n") : config.get_int("n", 1000000);
  require_valid(p);
  return p;
}

InitialCondition resolve_init(const Config& config) {
  const std::string kind = lower(config.get("init.kind").value_or("single"));
  if (kind == "single" || kind == "single_seed" || kind == "singleseed") {
    return InitialCondition::single_seed();
  }
  if (kind == "positive" || kind == "positive_fraction" || kind == "positivefraction") {
    return InitialCondition::positive(config.require_double("init.i0_fraction"));
  }
  throw Error(ErrorCode::kInvalidArgument, "init.kind must be single or positive", "init.kind");
}

EdgeAttach resolve_edge_attach(const Config& config) {
  const std::string v = lower(config.get("edge_attach").value_or("poisson"));
  if (v == "poisson") return EdgeAttach::kPoisson;
  if (v == "binomial") return EdgeAttach::kBinomial;
  throw Error(ErrorCode::kInvalidArgument, "edge_attach must be poisson or binomial",
              "edge_attach");
}

HatInitial resolve_hat_initial(const Config& config, const ModelParams& params) {
  const std::string v = lower(trim(config.get("ode.init").value_or("zero")));
  if (v == "zero") return HatInitial::zero();
  const std::string prefix = "positive:";
  if (v.rfind(prefix, 0) == 0) {
    const double i0 = parse_double(v.substr(prefix.size()), "ode.init");
    if (!(i0 > 0.0 && i0 < 1.0)) {
      throw Error(ErrorCode::kDegenerateInitial, "i0 must lie in (0, 1)", "ode.init");
    }
    return HatInitial::from(InitialCondition::positive(i0), params);
  }
  throw Error(ErrorCode::kInvalidArgument, "ode.init must be zero or positive:<i0>", "ode.init");
}

OdeOptions resolve_ode_options(const Config& config) {
  OdeOptions o;
  o.rel_tol = config.get_double("ode.rel_tol", o.rel_tol);
  o.abs_tol = config.get_double("ode.abs_tol", o.abs_tol);
  if (!(o.rel_tol > 0.0) || !(o.abs_tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ODE tolerances must be positive", "ode.rel_tol");
  }
  return o;
}

}  // namespace sirw
