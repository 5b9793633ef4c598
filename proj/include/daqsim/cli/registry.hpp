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

// Protocol registry: config params -> an Experiment the runner can drive.
#pragma once

#include <functional>
#include <map>
#include <random>

#include "daqsim/cli/config.hpp"
#include "daqsim/daqsim.hpp"

namespace daqsim::cli {

// device state (what the simulator produces) and, when there is one, the oracle
struct Sample {
  Vector device;
  Vector oracle;  // empty when the protocol has no oracle
  bool has_oracle() const { return oracle.size() > 0; }
};

struct Experiment {
  explicit Experiment(HilbertSpec s, double t_ = 1.0, std::size_t l_ = 1) : space(std::move(s)), t(t_), l(l_) {}

  HilbertSpec space;
  double t = 1.0;
  std::size_t l = 1;
  std::function<std::vector<Sample>(const QuantumState&, const std::vector<double>&)> evolve;

  // circuit protocols
  std::function<Circuit(std::size_t)> circuit;
  std::function<OperatorMatrix()> exact;
  std::function<std::optional<double>(std::size_t)> bound;

  // analog protocols with a frame chain
  std::function<FidelitySeries(const QuantumState&, const std::vector<double>&)> frame_compare;

  // protocol-specific summary entries
  std::function<json(const QuantumState&)> extra;

  bool is_circuit() const { return bool(circuit); }
};

using Factory = std::function<Experiment(ParamReader&)>;

namespace detail {

inline std::vector<std::size_t> iota_n(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// device = circuit rebuilt for each grid time at fixed l, oracle = exp(-i H t)
inline Experiment circuit_experiment(HilbertSpec space, double t, std::size_t l,
                                     std::function<Circuit(double, std::size_t)> build,
                                     const OperatorMatrix& target) {
  Experiment e(space, t, l);
  auto spec = std::make_shared<Spectrum>(diagonalize(target));
  e.evolve = [build, spec, l](const QuantumState& s0, const std::vector<double>& ts) {
    std::vector<Sample> out;
    for (double tg : ts)
      out.push_back(Sample{daqsim::apply(build(tg, l), s0.amplitudes()),
                           spec->evolve(tg, s0.amplitudes())});
    return out;
  };
  e.circuit = [build, t](std::size_t ll) { return build(t, ll); };
  e.exact = [spec, space, t] { return OperatorMatrix(space, spec->propagator(t)); };
  e.bound = [](std::size_t) { return std::optional<double>{}; };
  return e;
}

inline Experiment static_experiment(const OperatorMatrix& h) {
  Experiment e(h.space());
  auto spec = std::make_shared<Spectrum>(diagonalize(h));
  e.evolve = [spec](const QuantumState& s0, const std::vector<double>& ts) {
    std::vector<Sample> out;
    for (double tg : ts) out.push_back(Sample{spec->evolve(tg, s0.amplitudes()), Vector()});
    return out;
  };
  return e;
}

inline Experiment frame_experiment(AnalogSetup setup, std::optional<double> dt) {
  Experiment e(setup.lab.space());
  auto st = std::make_shared<AnalogSetup>(std::move(setup));
  e.frame_compare = [st, dt](const QuantumState& s0, const std::vector<double>& ts) {
    return compare_lab_vs_effective(st->lab, st->frames, st->effective, s0, ts, dt);
  };
  e.evolve = [fc = e.frame_compare](const QuantumState& s0, const std::vector<double>& ts) {
    const FidelitySeries fs = fc(s0, ts);
    std::vector<Sample> out;
    for (std::size_t i = 0; i < ts.size(); ++i) out.push_back(Sample{fs.framed[i], fs.effective[i]});
    return out;
  };
  return e;
}

inline SpinProtocolParams spin_params(ParamReader& r, SpinModel model) {
  SpinProtocolParams p;
  p.model = model;
  p.n_qubits = r.count("n_qubits", model == SpinModel::heisenberg ? 2 : 3);
  p.J = r.number("J", 1.0);
  p.B = model == SpinModel::ising_transverse ? r.number("B", 1.0) : 0.0;
  p.t = r.number("t", 1.0);
  p.l = r.count("l", 1);
  p.pair_couplings = r.numbers("pair_couplings");
  const std::string flip = r.text("flip", "two_half_pi");
  if (flip == "two_half_pi") p.flip = FlipStyle::two_half_pi;
  else if (flip == "single_pi") p.flip = FlipStyle::single_pi;
  else throw ConfigError("params.flip: expected two_half_pi or single_pi");
  if (p.n_qubits != 2 && p.n_qubits != 3) throw ConfigError("params.n_qubits: 2 or 3");
  if (p.l < 1) throw ConfigError("params.l: must be >= 1");
  return p;
}

inline Experiment spin_experiment(ParamReader& r, SpinModel model) {
  const SpinProtocolParams p = spin_params(r, model);
  auto build = [p](double t, std::size_t l) {
    SpinProtocolParams q = p;
    q.t = t;
    q.l = l;
    return spin_circuit(q);
  };
  Experiment e = circuit_experiment(HilbertSpec::qubits(p.n_qubits), p.t, p.l, build,
                                    assemble(spin_target(p)));
  e.bound = [p](std::size_t l) {
    SpinProtocolParams q = p;
    q.l = l;
    return std::optional<double>(error_bound(spin_trotter_plan(q)));
  };
  return e;
}

inline DARabiParams da_params(ParamReader& r, std::size_t n_default, std::size_t fock_default,
                              double dr_default) {
  DARabiParams p;
  p.g = r.number("g", 1.0);
  p.dtilde_r = r.number("dtilde_r", dr_default);
  p.dtilde_q1 = r.number("dtilde_q1", 0.0);
  p.dtilde_q2 = r.number("dtilde_q2", -0.5);
  p.t = r.number("t", 2 * kPi);
  p.l = r.count("l", 20);
  p.fock = r.count("fock", fock_default);
  p.n_qubits = r.count("n_qubits", n_default);
  if (p.l < 1 || p.fock < 2 || p.n_qubits < 1) throw ConfigError("params: need l >= 1, fock >= 2, n_qubits >= 1");
  return p;
}

inline Experiment da_experiment(const DARabiParams& p) {
  auto build = [p](double t, std::size_t l) {
    DARabiParams q = p;
    q.t = t;
    q.l = l;
    return da_rabi_circuit(q);
  };
  Experiment e = circuit_experiment(rabi_space(p.n_qubits, p.fock), p.t, p.l, build,
                                    assemble(da_rabi_target(p)));
  e.bound = [p](std::size_t l) {
    auto [h1, h2] = da_rabi_split(p);
    return std::optional<double>(error_bound(TrotterPlan{{h1, h2}, p.t, l}));
  };
  e.extra = [p](const QuantumState&) {
    const auto r = simulated_parameters(p);
    return json{{"simulated", {{"omega_r", r.omega_r}, {"omega_q", r.omega_q}, {"g", r.g}}}};
  };
  return e;
}

inline std::optional<double> maybe_dt(ParamReader& r) {
  auto dt = r.maybe_number("dt");
  if (dt && !(*dt > 0)) throw ConfigError("params.dt: must be positive");
  return dt;
}

inline LatticeTopology topology(ParamReader& r) {
  const std::size_t n = r.count("sites", 2);
  LatticeTopology t = LatticeTopology::chain(n);
  if (auto e = r.raw("edges")) {
    try {
      t.edges = e->get<std::vector<std::pair<std::size_t, std::size_t>>>();
    } catch (const json::exception& ex) {
      throw ConfigError(std::string("params.edges: ") + ex.what());
    }
  }
  return t;
}

inline Experiment lattice_experiment(const LatticeParams& p) {
  const OperatorMatrix h = assemble(lattice_hamiltonian(p));
  Experiment e = static_experiment(h);
  e.extra = [h](const QuantumState&) {
    const OperatorMatrix n = excitation_number(h.space());
    return json{{"excitation_commutator", max_abs(commutator(h.matrix(), n.matrix()))}};
  };
  return e;
}

}  // namespace detail

inline const std::map<std::string, Factory>& registry() {
  using namespace detail;
  static const std::map<std::string, Factory> r = {
      {"analog-dirac",
       [](ParamReader& r) {
         AnalogDiracParams p = analog_dirac_resonant(r.number("omega", 50.0), r.number("g", 0.1),
                                                     r.number("Omega", 2.0), r.number("lambda", 1.0),
                                                     r.number("xi", 0.0), r.number("phi", kPi / 2),
                                                     r.count("fock", 30));
         auto cutoff = r.maybe_number("cutoff");
         auto dt = maybe_dt(r);
         Experiment e = frame_experiment(analog_dirac_setup(p, cutoff), dt);
         e.extra = [p](const QuantumState&) {
           return json{{"effective_matches_display",
                        max_abs(analog_dirac_setup(p).effective.static_operator().matrix() -
                                assemble(analog_dirac_effective_display(p)).matrix())}};
         };
         return e;
       }},
      {"analog-rabi",
       [](ParamReader& r) {
         const double Omega1 = r.number("Omega1", 20.0);
         AnalogRabiParams p =
             analog_rabi_resonant(r.number("g", 1.0), Omega1, r.number("Omega2", 0.5),
                                  r.number("omega1", 2 * Omega1 + 10), r.number("omega_eff", 0.5),
                                  r.count("fock", 16));
         auto cutoff = r.maybe_number("cutoff");
         auto dt = maybe_dt(r);
         Experiment e = frame_experiment(analog_rabi_setup(p, cutoff), dt);
         e.extra = [p, cutoff](const QuantumState&) {
           return json{{"effective_matches_display",
                        max_abs(analog_rabi_setup(p, cutoff).effective.static_operator().matrix() -
                                assemble(analog_rabi_effective_display(p)).matrix())}};
         };
         return e;
       }},
      {"da-dirac",
       [](ParamReader& r) {
         DARabiParams p = da_params(r, 1, 30, 0.0);
         if (p.dtilde_r != 0.0) throw ConfigError("params.dtilde_r: da-dirac needs 0");
         return da_experiment(p);
       }},
      {"da-rabi", [](ParamReader& r) { return da_experiment(da_params(r, 1, kDefaultFock, 0.5)); }},
      {"dicke", [](ParamReader& r) { return da_experiment(da_params(r, 2, 12, 0.5)); }},
      {"driven-array",
       [](ParamReader& r) {
         LatticeParams p;
         p.topology = topology(r);
         p.model = DrivenArrayModel{r.number("delta", 0.0), r.number("Omega", 0.1), r.number("J", 1.0),
                                    r.number("U", 1.0), r.number("V", 0.0)};
         p.fock = r.count("fock", 3);
         return lattice_experiment(p);
       }},
      {"heisenberg", [](ParamReader& r) { return spin_experiment(r, SpinModel::heisenberg); }},
      {"hubbard",
       [](ParamReader& r) {
         HubbardParams p{r.number("h", 1.0), r.number("U", 1.0), r.number("t", 1.0), r.count("n", 1)};
         if (p.n < 1) throw ConfigError("params.n: must be >= 1");
         auto build = [p](double t, std::size_t n) {
           HubbardParams q = p;
           q.t = t;
           q.n = n;
           return hubbard_circuit(q);
         };
         return circuit_experiment(HilbertSpec::qubits(3), p.t, p.n, build,
                                   assemble(hubbard_spin_hamiltonian(p)));
       }},
      {"ising", [](ParamReader& r) { return spin_experiment(r, SpinModel::ising); }},
      {"ising-transverse", [](ParamReader& r) { return spin_experiment(r, SpinModel::ising_transverse); }},
      {"jch",
       [](ParamReader& r) {
         LatticeParams p;
         p.topology = topology(r);
         p.model = JchModel{r.number("omega0", 1.0), r.number("omega", 1.0), r.number("g", 0.0),
                            r.number("J", 1.0)};
         p.fock = r.count("fock", 3);
         return lattice_experiment(p);
       }},
      {"scattering",
       [](ParamReader& r) {
         ScatteringModel m;
         const std::size_t modes = r.count("n_modes", 1);
         const double coupling = r.number("coupling", 0.5);
         m.bosons = ModeGrid::uniform(r.number("boson_kmin", -1.0), r.number("boson_kmax", 1.0), modes,
                                      [coupling](double) { return coupling; });
         m.packet_grid = MomentumGrid::uniform(r.number("packet_kmin", -6.0), r.number("packet_kmax", 6.0),
                                               r.count("packet_points", 41));
         const double width = r.number("packet_width", 0.5);
         m.fermion = gaussian_packet(m.packet_grid, r.number("fermion_center", 1.0), width);
         m.antifermion = gaussian_packet(m.packet_grid, r.number("antifermion_center", -1.0), width);
         m.fermion_dispersion = Dispersion{r.number("fermion_mass", 1.0)};
         m.x_grid = linspace(r.number("x_min", -3.0), r.number("x_max", 3.0), r.count("x_points", 13));
         m.fock = r.count("fock", 3);
         const double dt = maybe_dt(r).value_or(0.01);
         auto h = std::make_shared<TimeDependentHamiltonian>(scattering_hamiltonian(m));
         Experiment e(h->space());
         e.evolve = [h, dt](const QuantumState& s0, const std::vector<double>& ts) {
           std::vector<Sample> out;
           Vector psi = s0.amplitudes();
           double t = 0;
           for (double tg : ts) {
             psi = evolve_timedep(*h, std::move(psi), t, tg, dt);
             t = tg;
             out.push_back(Sample{psi / psi.norm(), Vector()});
           }
           return out;
         };
         // lowest-order pair production from the vacuum: <N_b + N_d> ~ 2 t^2 sum_j |c_j|^2
         e.extra = [m, h](const QuantumState&) {
           const auto wx = position_weights(m.x_grid);
           double s = 0;
           for (std::size_t j = 0; j < m.bosons.size(); ++j) {
             cplx c = 0;
             for (std::size_t ix = 0; ix < m.x_grid.size(); ++ix) {
               const double x = m.x_grid[ix];
               const auto f = comoving_overlap(m.fermion, x, 0.0, m.packet_grid, m.fermion_dispersion);
               const auto a = comoving_overlap(m.antifermion, x, 0.0, m.packet_grid, m.fermion_dispersion);
               c += wx[ix] * std::conj(f.lambda1) * a.lambda2 * std::exp(-kI * m.bosons.grid.momenta[j] * x);
             }
             s += std::norm(kI * m.bosons.couplings[j] * c);
           }
           return json{{"pair_rate_coefficient", 2 * s}};
         };
         return e;
       }},
  };
  return r;
}

inline std::vector<std::string> protocol_names() {
  std::vector<std::string> out;
  for (const auto& [k, _] : registry()) out.push_back(k);
  return out;  // std::map keeps them sorted
}

// ---------------------------------------------------------------------------
// initial states:  "ground" | "random" | [per-subsystem level or "+x" "-x" "+y" "-y"]

inline QuantumState initial_state(const HilbertSpec& s, const std::optional<json>& spec, std::uint64_t seed) {
  if (!spec || (spec->is_string() && spec->get<std::string>() == "ground")) return QuantumState::ground(s);
  if (spec->is_string() && spec->get<std::string>() == "random") {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n01;
    Vector v(Eigen::Index(s.dim()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double re = n01(rng);
      v(i) = cplx(re, n01(rng));
    }
    return QuantumState::normalized(s, v);
  }
  if (!spec->is_array() || spec->size() != s.size())
    throw ConfigError("params.initial_state: 'ground', 'random' or one entry per subsystem");
  std::vector<Vector> locals;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const json& e = (*spec)[i];
    Vector v = Vector::Zero(Eigen::Index(s[i].dim));
    if (e.is_number_unsigned()) {
      const auto lv = e.get<std::size_t>();
      if (lv >= s[i].dim) throw ConfigError("params.initial_state: level out of range");
      v(Eigen::Index(lv)) = 1.0;
    } else if (e.is_string() && s.is_qubit(i)) {
      const std::string w = e.get<std::string>();
      const double r = 1.0 / std::sqrt(2.0);
      if (w == "+x") v << r, r;
      else if (w == "-x") v << r, -r;
      else if (w == "+y") v << r, -kI * r;  // sigma_y = [[0, i], [-i, 0]]
      else if (w == "-y") v << r, kI * r;
      else throw ConfigError("params.initial_state: unknown qubit state '" + w + "'");
    } else {
      throw ConfigError("params.initial_state: bad entry for subsystem " + std::to_string(i));
    }
    locals.push_back(std::move(v));
  }
  return QuantumState::product(s, locals);
}

// ---------------------------------------------------------------------------
// observables: sx<i> sy<i> sz<i> (qubits), n<i> x<i> p<i> a<i> (bosons),
// excitations, qubit_excitations, fidelity

struct Observable {
  std::string name;
  std::optional<OperatorMatrix> op;  // empty for fidelity
};

inline Observable parse_observable(const std::string& name, const HilbertSpec& s) {
  if (name == "fidelity") return {name, std::nullopt};
  if (name == "excitations") return {name, excitation_number(s)};
  if (name == "qubit_excitations") return {name, qubit_number_operator(s)};
  static const std::map<std::string, std::pair<Op, Kind>> prefixes = {
      {"sx", {Op::sigma_x, Kind::qubit}}, {"sy", {Op::sigma_y, Kind::qubit}},
      {"sz", {Op::sigma_z, Kind::qubit}}, {"n", {Op::number, Kind::boson}},
      {"x", {Op::quad_x, Kind::boson}},   {"p", {Op::quad_p, Kind::boson}},
      {"a", {Op::annihilation, Kind::boson}}};
  const auto digits = name.find_first_of("0123456789");
  if (digits != std::string::npos && digits > 0 &&
      name.find_first_not_of("0123456789", digits) == std::string::npos) {
    const auto it = prefixes.find(name.substr(0, digits));
    const std::size_t site = std::stoul(name.substr(digits));
    if (it != prefixes.end() && site < s.size() && s[site].kind == it->second.second)
      return {name, site_operator(s, site, it->second.first)};
  }
  throw ConfigError("observables: cannot interpret '" + name + "' on this protocol's space");
}

}  // namespace daqsim::cli
