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

#ifndef SIRW_CONFIG_HPP_
#define SIRW_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sirw/model.hpp"
#include "sirw/ode.hpp"
#include "sirw/sim.hpp"

namespace sirw {

struct KeyInfo {
  const char* name;
  const char* help;
};

// Every key a config may carry. Anything else is rejected.
const std::vector<KeyInfo>& known_keys();
bool is_known_key(const std::string& key);

// SIRW_ + key uppercased with '.' replaced by '_'.
std::string env_name(const std::string& key);

// Flat string map. Layers are applied in the order file, environment, flags;
// later layers overwrite earlier ones.
class Config {
 public:
  // Loads `key = value` lines ('#' starts a comment) or a JSON document; a
  // JSON document with a "config" object (as in meta.json) uses that object.
  static Config from_file(const std::string& path);
  static Config from_text(const std::string& text, const std::string& origin = "<text>");

  void set(const std::string& key, const std::string& value);
  void erase(const std::string& key);
  void apply_env();

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  std::optional<std::string> get(const std::string& key) const;
  // Throws Error(kMissingKey).
  const std::string& require(const std::string& key) const;

  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_double_list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

double parse_double(const std::string& text, const std::string& key);
std::int64_t parse_int(const std::string& text, const std::string& key);
std::uint64_t parse_u64(const std::string& text, const std::string& key);
bool parse_bool(const std::string& text, const std::string& key);
// Comma list; also accepts `start:stop:count` for an evenly spaced grid.
std::vector<double> parse_double_list(const std::string& text, const std::string& key);

// lambda, gamma, omega, alpha and mu are required. n is required when
// need_n, otherwise defaults to 1000000.
ModelParams resolve_params(const Config& config, bool need_n);
InitialCondition resolve_init(const Config& config);
EdgeAttach resolve_edge_attach(const Config& config);
// "zero" or "positive:<i0>", from ode.init.
HatInitial resolve_hat_initial(const Config& config, const ModelParams& params);
OdeOptions resolve_ode_options(const Config& config);

}  // namespace sirw

#endif  // SIRW_CONFIG_HPP_
