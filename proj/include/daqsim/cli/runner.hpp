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

// Subcommand drivers.  Each run is sequential and writes only into its own
// output directory.
#pragma once

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <atomic>
#include <sstream>
#include <thread>

#include "daqsim/cli/registry.hpp"

namespace daqsim::cli {

enum class Subcommand { simulate, trotter_scan, frame_compare, budget };

inline const char* subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::simulate: return "simulate";
    case Subcommand::trotter_scan: return "trotter-scan";
    case Subcommand::frame_compare: return "frame-compare";
    default: return "budget";
  }
}

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResource = 3;

// %.17g round-trips doubles; "." separator regardless of locale is guaranteed
// by the C locale, which we never change.
inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Row {
  double time;
  cplx value;
  bool leakage;
};

inline void write_series(const std::filesystem::path& dir, const std::string& name,
                         const std::vector<Row>& rows, const std::string& format) {
  if (format == "json") {
    json j = json::array();
    for (const auto& r : rows)
      j.push_back({{"time", r.time}, {"value_re", r.value.real()}, {"value_im", r.value.imag()},
                   {"leakage_flag", r.leakage}});
    std::ofstream(dir / (name + ".json")) << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(dir / (name + ".csv"));
  out << "time,value_re,value_im,leakage_flag\n";
  for (const auto& r : rows)
    out << fmt(r.time) << ',' << fmt(r.value.real()) << ',' << fmt(r.value.imag()) << ','
        << (r.leakage ? 1 : 0) << '\n';
}

struct BudgetKnobs {
  NoiseModel noise;
  TimingModel timing;
  std::optional<double> target_fidelity, target_duration_ns;
  double fidelity_tolerance = 0.04;  // absolute, i.e. percentage points / 100
  double duration_tolerance = 0.25;  // relative
};

inline CollectiveCounting counting(const std::string& key, const std::string& v) {
  if (v == "as_one") return CollectiveCounting::as_one;
  if (v == "per_qubit") return CollectiveCounting::per_qubit;
  throw ConfigError("params." + key + ": expected as_one or per_qubit");
}

inline BudgetKnobs read_budget(ParamReader& r) {
  BudgetKnobs b;
  b.noise.single_qubit = r.number("fidelity_single", b.noise.single_qubit);
  b.noise.two_qubit = r.number("fidelity_two", b.noise.two_qubit);
  b.noise.analog_block_per_pair = r.number("fidelity_analog", b.noise.analog_block_per_pair);
  b.noise.collective = counting("collective_fidelity", r.text("collective_fidelity", "per_qubit"));
  const std::string ac = r.text("analog_counting", "per_pair");
  if (ac == "per_pair") b.noise.analog = AnalogCounting::per_pair;
  else if (ac == "per_block") b.noise.analog = AnalogCounting::per_block;
  else throw ConfigError("params.analog_counting: expected per_pair or per_block");
  b.timing.single_qubit_ns = r.number("time_single_ns", b.timing.single_qubit_ns);
  b.timing.two_qubit_ns = r.number("time_two_ns", b.timing.two_qubit_ns);
  b.timing.analog_block_ns = r.number("time_analog_ns", b.timing.analog_block_ns);
  b.timing.collective = counting("collective_timing", r.text("collective_timing", "as_one"));
  b.target_fidelity = r.maybe_number("target_fidelity");
  b.target_duration_ns = r.maybe_number("target_duration_ns");
  b.fidelity_tolerance = r.number("fidelity_tolerance", b.fidelity_tolerance);
  b.duration_tolerance = r.number("duration_tolerance", b.duration_tolerance);
  try {
    b.noise.validate();
    b.timing.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return b;
}

struct RunOptions {
  std::filesystem::path out;  // empty = config.output.path
  bool quiet = false;
};

namespace detail {

inline json run_simulate(const ExperimentConfig& cfg, const Experiment& e, const QuantumState& s0,
                         const std::filesystem::path& dir) {
  const TimeGrid tg = cfg.time_grid.value_or(TimeGrid{0.0, e.t, 11});
  const auto times = tg.values();
  std::vector<Observable> obs;
  for (const auto& name : cfg.observables) obs.push_back(parse_observable(name, e.space));
  const auto samples = e.evolve(s0, times);

  std::vector<std::vector<Row>> rows(obs.size());
  double top = max_top_fock_population(s0);
  std::optional<double> final_fid;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const QuantumState dev = QuantumState::normalized(e.space, samples[i].device);
    double t_top = max_top_fock_population(dev);
    std::optional<double> fid;
    if (samples[i].has_oracle()) {
      const QuantumState ora = QuantumState::normalized(e.space, samples[i].oracle);
      t_top = std::max(t_top, max_top_fock_population(ora));
      fid = state_fidelity(dev, ora);
    }
    top = std::max(top, t_top);
    final_fid = fid;
    for (std::size_t k = 0; k < obs.size(); ++k) {
      cplx v;
      if (obs[k].op) v = expectation(dev, *obs[k].op);
      else if (fid) v = *fid;
      else throw ConfigError("observables: 'fidelity' needs a protocol with an oracle");
      rows[k].push_back({times[i], v, t_top >= kLeakageThreshold});
    }
  }
  for (std::size_t k = 0; k < obs.size(); ++k) write_series(dir, obs[k].name, rows[k], cfg.output.format);

  json s;
  s["times"] = times.size();
  s["max_top_fock"] = top;
  s["leakage_flag"] = top >= kLeakageThreshold;
  if (final_fid) s["final_fidelity"] = *final_fid;
  if (e.is_circuit()) {
    const OperatorMatrix u = circuit_unitary(e.circuit(e.l));
    s["digital_error"] = phase_aligned_distance(u.matrix(), e.exact().matrix());
  }
  return s;
}

inline json run_trotter_scan(const ExperimentConfig& cfg, const Experiment& e, const QuantumState& s0,
                             const std::filesystem::path& dir) {
  if (!e.is_circuit()) throw ConfigError("trotter-scan: '" + cfg.protocol + "' has no Trotter circuit");
  std::vector<std::size_t> ls = cfg.trotter_scan;
  if (ls.empty()) ls = {1, 2, 4, 8, 16, 32};
  const OperatorMatrix exact = e.exact();
  const Vector ref = exact.matrix() * s0.amplitudes();
  json points = json::array();
  std::vector<double> xs, ys;
  bool monotone = true, bound_ok = true;
  double prev_fid = -1;
  std::ofstream csv;
  json rows = json::array();
  for (auto l : ls) {
    const OperatorMatrix u = circuit_unitary(e.circuit(l));
    const double err = phase_aligned_distance(u.matrix(), exact.matrix());
    const double fid = std::norm(ref.dot(u.matrix() * s0.amplitudes()));
    json p{{"l", l}, {"spectral_error", err}, {"fidelity", fid}};
    if (auto b = e.bound(l)) {
      p["bound"] = *b;
      p["bound_respected"] = err <= *b + 1e-10;
      bound_ok = bound_ok && err <= *b + 1e-10;
    }
    if (fid + 1e-12 < prev_fid) monotone = false;
    prev_fid = fid;
    points.push_back(p);
    rows.push_back({{"l", l}, {"spectral_error", err}});
    xs.push_back(double(l));
    ys.push_back(std::max(err, 1e-300));
  }
  if (cfg.output.format == "json") {
    std::ofstream(dir / "trotter_scan.json") << rows.dump(2) << '\n';
  } else {
    std::ofstream out(dir / "trotter_scan.csv");
    out << "l,spectral_error\n";
    for (const auto& r : rows) out << r["l"].get<std::size_t>() << ',' << fmt(r["spectral_error"].get<double>()) << '\n';
  }
  json s{{"scan", points}, {"fidelity_monotone", monotone}, {"bound_respected", bound_ok}};
  if (xs.size() >= 2) s["loglog_slope"] = loglog_slope(xs, ys);
  return s;
}

inline json run_frame_compare(const ExperimentConfig& cfg, const Experiment& e, const QuantumState& s0,
                              const std::filesystem::path& dir) {
  if (!e.frame_compare) throw ConfigError("frame-compare: '" + cfg.protocol + "' has no frame chain");
  const TimeGrid tg = cfg.time_grid.value_or(TimeGrid{0.0, 2 * kPi, 41});
  const FidelitySeries fs = e.frame_compare(s0, tg.values());
  std::vector<Row> rows;
  for (std::size_t i = 0; i < fs.times.size(); ++i)
    rows.push_back({fs.times[i], fs.fidelity[i], fs.top_fock[i] >= kLeakageThreshold});
  write_series(dir, "frame_fidelity", rows, cfg.output.format);
  return {{"min_fidelity", fs.min_fidelity()}, {"max_top_fock", fs.max_top_fock()},
          {"leakage_flag", fs.leakage_flag()}};
}

inline json run_budget(const ExperimentConfig& cfg, const Experiment& e, const BudgetKnobs& b) {
  if (!e.is_circuit()) throw ConfigError("budget: '" + cfg.protocol + "' has no gate circuit");
  const Circuit c = e.circuit(e.l);
  const GateCounts n = gate_counts(c, b.noise.collective, b.noise.analog, b.timing.collective);
  json s;
  s["gate_counts"] = {{"single_qubit", n.single_qubit}, {"two_qubit", n.two_qubit},
                      {"analog_factors", n.analog_factors}};
  s["fidelity_estimate"] = fidelity_estimate(c, b.noise);
  s["duration_ns"] = duration_estimate(c, b.timing);
  if (b.target_fidelity) {
    s["target_fidelity"] = *b.target_fidelity;
    s["fidelity_pass"] = std::abs(s["fidelity_estimate"].get<double>() - *b.target_fidelity) <= b.fidelity_tolerance;
  }
  if (b.target_duration_ns) {
    s["target_duration_ns"] = *b.target_duration_ns;
    s["duration_pass"] = std::abs(s["duration_ns"].get<double>() - *b.target_duration_ns) <=
                         b.duration_tolerance * *b.target_duration_ns;
  }
  return s;
}

}  // namespace detail

// One config, one output directory.  Returns the process exit code.
inline int run(Subcommand sub, const std::string& config_path, const RunOptions& opt,
               std::ostream& err = std::cerr) {
  try {
    const ExperimentConfig cfg = load_config(config_path);
    const auto& reg = registry();
    const auto it = reg.find(cfg.protocol);
    if (it == reg.end()) throw ConfigError("unknown protocol '" + cfg.protocol + "'");
    ParamReader params(cfg.params);
    const Experiment e = [&] {
      try {
        return it->second(params);
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(std::string("params: ") + ex.what());
      }
    }();
    const QuantumState s0 = initial_state(e.space, params.raw("initial_state"), cfg.seed);
    std::optional<BudgetKnobs> knobs;
    if (e.is_circuit()) knobs = read_budget(params);
    params.finish();

    const std::filesystem::path dir = opt.out.empty() ? std::filesystem::path(cfg.output.path) : opt.out;
    std::filesystem::create_directories(dir);
    json summary{{"protocol", cfg.protocol}, {"subcommand", subcommand_name(sub)}, {"seed", cfg.seed},
                 {"dimension", e.space.dim()}};
    json body;
    switch (sub) {
      case Subcommand::simulate: body = detail::run_simulate(cfg, e, s0, dir); break;
      case Subcommand::trotter_scan: body = detail::run_trotter_scan(cfg, e, s0, dir); break;
      case Subcommand::frame_compare: body = detail::run_frame_compare(cfg, e, s0, dir); break;
      case Subcommand::budget: body = detail::run_budget(cfg, e, *knobs); break;
    }
    summary.update(body);
    if (e.extra) summary.update(e.extra(s0));
    std::ofstream(dir / "summary.json") << summary.dump(2) << '\n';
    if (!opt.quiet) std::cout << cfg.protocol << ' ' << subcommand_name(sub) << " -> " << dir.string() << '\n';
    return kExitOk;
  } catch (const ConfigError& ex) {
    err << "config error: " << ex.what() << '\n';
    return kExitConfig;
  } catch (const DimensionCapError& ex) {
    err << "resource cap: " << ex.what() << '\n';
    return kExitResource;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
}

// Independent configs on up to `parallel` threads; with more than one config
// each gets <out>/<config stem>.  The worst exit code wins.
inline int run_many(Subcommand sub, const std::vector<std::string>& configs, const RunOptions& opt,
                    std::size_t parallel) {
  if (configs.size() == 1) return run(sub, configs.front(), opt);
  std::vector<int> codes(configs.size(), 0);
  std::vector<std::string> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < configs.size();) {
      RunOptions o = opt;
      if (!opt.out.empty()) o.out = opt.out / std::filesystem::path(configs[i]).stem();
      std::ostringstream es;
      codes[i] = run(sub, configs[i], o, es);
      errors[i] = es.str();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < std::max<std::size_t>(1, std::min(parallel, configs.size())); ++k)
    pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors) std::cerr << e;
  int worst = 0;
  for (int c : codes) worst = std::max(worst, c);
  return worst;
}

}  // namespace daqsim::cli
