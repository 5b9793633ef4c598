// Copyright 2026 The daqsim Authors
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

// Experiment config: one JSON document, strict keys.
#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace daqsim::cli {

using nlohmann::json;

// anything wrong with the config or its params -> exit 2
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TimeGrid {
  double start = 0.0;
  double stop = 1.0;
  std::size_t points = 11;

  std::vector<double> values() const {
    std::vector<double> out;
    if (points == 1) return {start};
    for (std::size_t i = 0; i < points; ++i)
      out.push_back(start + (stop - start) * double(i) / double(points - 1));
    return out;
  }
};

struct OutputSpec {
  std::string path = "out";
  std::string format = "csv";  // csv | json
};

struct ExperimentConfig {
  std::string protocol;
  json params = json::object();
  std::vector<std::string> observables;
  std::optional<TimeGrid> time_grid;
  std::vector<std::size_t> trotter_scan;
  OutputSpec output;
  std::uint64_t seed = 0;
};

namespace detail {

inline void only_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, _] : j.items())
    if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
}

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

}  // namespace detail

inline ExperimentConfig parse_config(const json& j) {
  using detail::get;
  detail::only_keys(j, {"protocol", "params", "observables", "time_grid", "trotter_scan", "output", "seed"},
                    "config");
  ExperimentConfig c;
  if (!j.contains("protocol")) throw ConfigError("config: missing 'protocol'");
  c.protocol = get<std::string>(j, "protocol", "config");
  if (j.contains("params")) {
    c.params = j.at("params");
    if (!c.params.is_object()) throw ConfigError("config.params: expected an object");
  }
  if (j.contains("observables")) c.observables = get<std::vector<std::string>>(j, "observables", "config");
  if (j.contains("time_grid")) {
    const json& g = j.at("time_grid");
    detail::only_keys(g, {"start", "stop", "points"}, "config.time_grid");
    TimeGrid tg;
    if (g.contains("start")) tg.start = get<double>(g, "start", "time_grid");
    if (g.contains("stop")) tg.stop = get<double>(g, "stop", "time_grid");
    if (g.contains("points")) tg.points = get<std::size_t>(g, "points", "time_grid");
    if (tg.points < 1 || tg.stop < tg.start || tg.start < 0)
      throw ConfigError("config.time_grid: need points >= 1 and 0 <= start <= stop");
    c.time_grid = tg;
  }
  if (j.contains("trotter_scan")) {
    c.trotter_scan = get<std::vector<std::size_t>>(j, "trotter_scan", "config");
    for (auto l : c.trotter_scan)
      if (l < 1) throw ConfigError("config.trotter_scan: entries must be >= 1");
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    detail::only_keys(o, {"path", "format"}, "config.output");
    if (o.contains("path")) c.output.path = get<std::string>(o, "path", "output");
    if (o.contains("format")) c.output.format = get<std::string>(o, "format", "output");
    if (c.output.format != "csv" && c.output.format != "json")
      throw ConfigError("config.output.format: expected csv or json");
  }
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed", "config");
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

// Typed access to the params object.  finish() rejects keys nobody asked for.
class ParamReader {
 public:
  explicit ParamReader(json params) : p_(std::move(params)) {}

  double number(const std::string& k, double def) { return take<double>(k).value_or(def); }
  std::size_t count(const std::string& k, std::size_t def) {
    auto v = take<long long>(k);
    if (v && *v < 0) throw ConfigError("params." + k + ": must be >= 0");
    return v ? std::size_t(*v) : def;
  }
  std::string text(const std::string& k, const std::string& def) { return take<std::string>(k).value_or(def); }
  std::vector<double> numbers(const std::string& k) { return take<std::vector<double>>(k).value_or(std::vector<double>{}); }
  std::optional<double> maybe_number(const std::string& k) { return take<double>(k); }
  std::optional<json> raw(const std::string& k) {
    used_.insert(k);
    if (!p_.contains(k)) return std::nullopt;
    return p_.at(k);
  }
  bool has(const std::string& k) const { return p_.contains(k); }

  void finish() const {
    for (const auto& [k, _] : p_.items())
      if (!used_.count(k)) throw ConfigError("params: unknown key '" + k + "'");
  }

 private:
  template <class T>
  std::optional<T> take(const std::string& k) {
    used_.insert(k);
    if (!p_.contains(k)) return std::nullopt;
    try {
      return p_.at(k).get<T>();
    } catch (const json::exception& e) {
      throw ConfigError("params." + k + ": " + e.what());
    }
  }
  json p_;
  std::set<std::string> used_;
};

}  // namespace daqsim::cli
