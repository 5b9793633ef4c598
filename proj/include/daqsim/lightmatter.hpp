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

// Light-matter protocols: digital-analog Rabi/Dicke (and Dirac through the
// Rabi correspondence), two-tone analog Rabi, analog Dirac, small lattices.
#pragma once

#include "daqsim/frames.hpp"
#include "daqsim/gates.hpp"

#include <boost/math/tools/minima.hpp>

#include <numeric>
#include <set>
#include <variant>

namespace daqsim {

// N qubits (slots 0..N-1) followed by one resonator mode
inline HilbertSpec rabi_space(std::size_t n_qubits, std::size_t fock) {
  if (n_qubits < 1) throw std::invalid_argument("rabi_space: need at least one qubit");
  std::vector<Subsystem> subs(n_qubits, Subsystem::qubit());
  subs.push_back(Subsystem::boson(fock));
  return HilbertSpec(std::move(subs));
}

inline std::size_t resonator_slot(const HilbertSpec& s) { return s.size() - 1; }

// w_r a^dag a + (w_q/2) sum sigma_z + g sum sigma_x (a + a^dag)
inline Hamiltonian da_rabi_target(double omega_r, double omega_q, double g, std::size_t fock,
                                  std::size_t n_qubits = 1) {
  const auto s = rabi_space(n_qubits, fock);
  const std::size_t b = resonator_slot(s);
  Hamiltonian h(s);
  h.add(omega_r, {{b, Op::number}});
  for (std::size_t q = 0; q < n_qubits; ++q) {
    h.add(omega_q / 2, {{q, Op::sigma_z}});
    h.add(g, {{q, Op::sigma_x}, {b, Op::annihilation}});
    h.add(g, {{q, Op::sigma_x}, {b, Op::creation}});
  }
  return h;
}

// detuned (Tavis-)Jaynes-Cummings form  D_r a^dag a + D_q sum sigma_z + g sum (a^dag s- + a s+)
inline Hamiltonian detuned_jc(const HilbertSpec& s, double dr, double dq, double g) {
  const std::size_t b = resonator_slot(s);
  Hamiltonian h(s);
  h.add(dr, {{b, Op::number}});
  for (std::size_t q = 0; q < b; ++q) {
    h.add(dq, {{q, Op::sigma_z}});
    h.add(g, {{b, Op::creation}, {q, Op::sigma_minus}}, true);
  }
  return h;
}

// the flipped form  D_r a^dag a - D_q sum sigma_z + g sum (a^dag s+ + a s-)
inline Hamiltonian anti_jc(const HilbertSpec& s, double dr, double dq, double g) {
  const std::size_t b = resonator_slot(s);
  Hamiltonian h(s);
  h.add(dr, {{b, Op::number}});
  for (std::size_t q = 0; q < b; ++q) {
    h.add(-dq, {{q, Op::sigma_z}});
    h.add(g, {{b, Op::creation}, {q, Op::sigma_plus}}, true);
  }
  return h;
}

struct DARabiParams {
  double g = 1.0;
  double dtilde_r = 0.5;
  double dtilde_q1 = 0.0;
  double dtilde_q2 = -0.5;
  double t = 2 * kPi;
  std::size_t l = 20;
  std::size_t fock = kDefaultFock;
  std::size_t n_qubits = 1;
};

struct SimulatedRabi {
  double omega_r = 0.0;
  double omega_q = 0.0;
  double g = 0.0;
};

// H1 + H2 = 2 D_r a^dag a + (D_q1 - D_q2) sigma_z + g sigma_x (a + a^dag), so
// w_r = 2 D_r and w_q = 2 (D_q1 - D_q2) in the (w_q/2) sigma_z convention.
inline SimulatedRabi simulated_parameters(const DARabiParams& p) {
  return {2 * p.dtilde_r, 2 * (p.dtilde_q1 - p.dtilde_q2), p.g};
}

// inverse map with the qubit detuning split anchored at dtilde_q1
inline DARabiParams da_rabi_params_for(const SimulatedRabi& r, double dtilde_q1 = 0.0) {
  DARabiParams p;
  p.g = r.g;
  p.dtilde_r = r.omega_r / 2;
  p.dtilde_q1 = dtilde_q1;
  p.dtilde_q2 = dtilde_q1 - r.omega_q / 2;
  return p;
}

inline std::pair<Hamiltonian, Hamiltonian> da_rabi_split(const DARabiParams& p) {
  const auto s = rabi_space(p.n_qubits, p.fock);
  return {detuned_jc(s, p.dtilde_r, p.dtilde_q1, p.g), anti_jc(s, p.dtilde_r, p.dtilde_q2, p.g)};
}

inline Hamiltonian da_rabi_target(const DARabiParams& p) {
  const auto r = simulated_parameters(p);
  return da_rabi_target(r.omega_r, r.omega_q, r.g, p.fock, p.n_qubits);
}

// one step: H1 block, flip, H~(D_q2) block, flip.  The flip pair turns the
// second block into exp(-i H2 tau) up to a global sign.
inline Circuit da_rabi_step(const DARabiParams& p) {
  if (p.l < 1) throw std::invalid_argument("da_rabi_circuit: l must be >= 1");
  const auto s = rabi_space(p.n_qubits, p.fock);
  const double tau = p.t / double(p.l);
  std::vector<std::size_t> qubits(p.n_qubits);
  std::iota(qubits.begin(), qubits.end(), 0);
  Circuit c(s);
  c.add(AnalogBlock{detuned_jc(s, p.dtilde_r, p.dtilde_q1, p.g), tau, "JC(dq1)"});
  c.add(QubitFlip{qubits});
  c.add(AnalogBlock{detuned_jc(s, p.dtilde_r, p.dtilde_q2, p.g), tau, "JC(dq2)"});
  c.add(QubitFlip{qubits});
  return c;
}

inline Circuit da_rabi_circuit(const DARabiParams& p) { return da_rabi_step(p).repeat(p.l); }

inline Circuit dicke_circuit(const DARabiParams& p) {
  if (p.n_qubits < 1) throw std::invalid_argument("dicke_circuit: need N >= 1");
  return da_rabi_circuit(p);
}

struct DARunResult {
  QuantumState circuit_state;
  QuantumState exact_state;
  double fidelity = 0.0;
  double max_top_fock = 0.0;  // over steps, circuit and exact
  bool leakage_flag = false;
  std::size_t fock = 0;
};

inline DARunResult run_da_rabi(const DARabiParams& p, const QuantumState& s0) {
  const Circuit step = da_rabi_step(p);
  if (!(s0.space() == step.space())) throw DimensionMismatch("run_da_rabi: space mismatch");
  const Spectrum exact = diagonalize(assemble(da_rabi_target(p)));
  const double tau = p.t / double(p.l);
  Vector psi = s0.amplitudes(), ref = s0.amplitudes();
  double top = max_top_fock_population(s0);
  for (std::size_t k = 0; k < p.l; ++k) {
    psi = daqsim::apply(step, std::move(psi));
    ref = exact.evolve(tau, ref);
    top = std::max({top, max_top_fock_population(QuantumState::normalized(s0.space(), psi)),
                    max_top_fock_population(QuantumState::normalized(s0.space(), ref))});
  }
  QuantumState cs = QuantumState::normalized(s0.space(), psi);
  QuantumState es = QuantumState::normalized(s0.space(), ref);
  const double f = state_fidelity(cs, es);
  return {std::move(cs), std::move(es), f, top, top >= kLeakageThreshold, p.fock};
}

// Raise the cutoff until the top level stays below threshold (or max_fock).
// s0 is given as a function of the space because the space changes.
inline DARunResult run_da_rabi_adaptive(DARabiParams p,
                                        const std::function<QuantumState(const HilbertSpec&)>& s0,
                                        std::size_t max_fock = 64) {
  for (;;) {
    auto r = run_da_rabi(p, s0(rabi_space(p.n_qubits, p.fock)));
    if (!r.leakage_flag || p.fock >= max_fock) return r;
    p.fock = std::min(max_fock, p.fock + 8);
  }
}

// ---------------------------------------------------------------------------
// Dirac through the Rabi correspondence (w_r = 0):
//   H = (w_q/2) sigma_z + g sqrt2 sigma_x x,  mc^2 <-> w_q/2, c <-> g.
// The resonator x quadrature plays the particle momentum, so the position
// analog (and its Zitterbewegung) shows up in <p>.

struct QuadratureSeries {
  std::vector<double> times;
  std::vector<double> x_circuit, p_circuit, x_exact, p_exact;
  double max_top_fock = 0.0;
  bool leakage_flag() const { return max_top_fock >= kLeakageThreshold; }
};

inline QuadratureSeries dirac_rabi_observables(const DARabiParams& p, const QuantumState& s0,
                                               const std::vector<double>& t_grid) {
  if (p.dtilde_r != 0.0)
    throw std::invalid_argument("dirac_rabi_observables: requires dtilde_r = 0 (w_r = 0)");
  const auto s = rabi_space(p.n_qubits, p.fock);
  if (!(s0.space() == s)) throw DimensionMismatch("dirac_rabi_observables: space mismatch");
  const std::size_t b = resonator_slot(s);
  const OperatorMatrix X = site_operator(s, b, Op::quad_x);
  const OperatorMatrix P = site_operator(s, b, Op::quad_p);
  const Spectrum exact = diagonalize(assemble(da_rabi_target(p)));
  QuadratureSeries out;
  for (double t : t_grid) {
    DARabiParams q = p;
    q.t = t;
    const QuantumState c = daqsim::apply(da_rabi_circuit(q), s0);
    const QuantumState e(s, exact.evolve(t, s0.amplitudes()));
    out.times.push_back(t);
    out.x_circuit.push_back(expectation(c, X).real());
    out.p_circuit.push_back(expectation(c, P).real());
    out.x_exact.push_back(expectation(e, X).real());
    out.p_exact.push_back(expectation(e, P).real());
    out.max_top_fock = std::max({out.max_top_fock, max_top_fock_population(c),
                                 max_top_fock_population(e)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// spectral peak of a sampled signal after removing a linear trend

struct SpectralPeak {
  double frequency = 0.0;
  double amplitude = 0.0;      // single-sided amplitude at the peak
  double residual_rms = 0.0;   // rms of the detrended signal
};

inline std::vector<double> detrend(const std::vector<double>& t, const std::vector<double>& y) {
  const std::size_t n = t.size();
  if (n != y.size() || n < 3) throw std::invalid_argument("detrend: need >= 3 paired samples");
  const double mt = std::accumulate(t.begin(), t.end(), 0.0) / double(n);
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
  double stt = 0, sty = 0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (t[i] - mt) * (t[i] - mt);
    sty += (t[i] - mt) * (y[i] - my);
  }
  const double slope = stt > 0 ? sty / stt : 0.0;
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = y[i] - my - slope * (t[i] - mt);
  return r;
}

inline double dtft_amplitude(const std::vector<double>& t, const std::vector<double>& r, double w) {
  cplx acc = 0;
  for (std::size_t i = 0; i < t.size(); ++i) acc += r[i] * std::exp(-kI * w * t[i]);
  return 2.0 * std::abs(acc) / double(t.size());
}

// Peak of the amplitude spectrum on (w_min, w_max], grid search + Brent refinement.
inline SpectralPeak dominant_frequency(const std::vector<double>& t, const std::vector<double>& y,
                                       double w_min, double w_max, std::size_t grid = 2000) {
  const auto r = detrend(t, y);
  SpectralPeak pk;
  double ss = 0;
  for (double v : r) ss += v * v;
  pk.residual_rms = std::sqrt(ss / double(r.size()));
  std::size_t best = 0;
  double best_a = -1;
  const double dw = (w_max - w_min) / double(grid);
  for (std::size_t k = 1; k <= grid; ++k) {
    const double a = dtft_amplitude(t, r, w_min + dw * double(k));
    if (a > best_a) {
      best_a = a;
      best = k;
    }
  }
  const double lo = w_min + dw * double(best - 1), hi = std::min(w_max, w_min + dw * double(best + 1));
  auto res = boost::math::tools::brent_find_minima(
      [&](double w) { return -dtft_amplitude(t, r, w); }, lo, hi, 40);
  pk.frequency = res.first;
  pk.amplitude = -res.second;
  return pk;
}

// ---------------------------------------------------------------------------
// two-tone analog Rabi

struct AnalogRabiParams {
  double omega_q = 0.0;
  double omega = 0.0;
  double g = 1.0;
  double Omega1 = 0.0;
  double Omega2 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  std::size_t fock = kDefaultFock;
};

// Enforces w1 - w2 = 2 Omega1; the resonator sits w_eff above w1 and the qubit
// is resonant with the resonator.
inline AnalogRabiParams analog_rabi_resonant(double g, double Omega1, double Omega2, double omega1,
                                             double omega_eff, std::size_t fock = kDefaultFock) {
  AnalogRabiParams p;
  p.g = g;
  p.Omega1 = Omega1;
  p.Omega2 = Omega2;
  p.omega1 = omega1;
  p.omega2 = omega1 - 2 * Omega1;
  p.omega = omega1 + omega_eff;
  p.omega_q = p.omega;
  p.fock = fock;
  return p;
}

inline HilbertSpec qubit_resonator_space(std::size_t fock) { return rabi_space(1, fock); }

// (w_q/2) sz + w a^dag a - g (s+ a + s- a^dag)
//   - Omega1 (e^{i w1 t} s- + h.c.) - Omega2 (e^{i w2 t} s- + h.c.)
inline TimeDependentHamiltonian analog_rabi_lab(const AnalogRabiParams& p) {
  const auto s = qubit_resonator_space(p.fock);
  Hamiltonian h0(s);
  h0.add(p.omega_q / 2, {{0, Op::sigma_z}});
  h0.add(p.omega, {{1, Op::number}});
  h0.add(-p.g, {{0, Op::sigma_plus}, {1, Op::annihilation}}, true);
  return TimeDependentHamiltonian(h0, {DriveTerm{{{0, Op::sigma_minus}}, -p.Omega1, p.omega1, 0.0},
                                       DriveTerm{{{0, Op::sigma_minus}}, -p.Omega2, p.omega2, 0.0}});
}

// (w - w1) a^dag a + (Omega2/2) sz - (g/2) sx (a + a^dag)
inline Hamiltonian analog_rabi_effective_display(const AnalogRabiParams& p) {
  const auto s = qubit_resonator_space(p.fock);
  Hamiltonian h(s);
  h.add(p.omega - p.omega1, {{1, Op::number}});
  h.add(p.Omega2 / 2, {{0, Op::sigma_z}});
  h.add(-p.g / 2, {{0, Op::sigma_x}, {1, Op::annihilation}}, true);
  return h;
}

struct AnalogSetup {
  TimeDependentHamiltonian lab;
  std::vector<RotatingFrame> frames;
  TimeDependentHamiltonian framed;     // exact, after all frames
  TimeDependentHamiltonian effective;  // after the RWA filter
  double cutoff = 0.0;
};

// frames: w1 (sz/2 + a^dag a), then -Omega1 (s- + s+)
inline AnalogSetup analog_rabi_setup(const AnalogRabiParams& p, std::optional<double> cutoff = {}) {
  const auto s = qubit_resonator_space(p.fock);
  TimeDependentHamiltonian lab = analog_rabi_lab(p);
  Hamiltonian g1(s), g2(s);
  g1.add(p.omega1 / 2, {{0, Op::sigma_z}});
  g1.add(p.omega1, {{1, Op::number}});
  g2.add(-p.Omega1, {{0, Op::sigma_x}});
  std::vector<RotatingFrame> frames{RotatingFrame(assemble(g1)), RotatingFrame(assemble(g2))};
  TimeDependentHamiltonian framed = into_frame(into_frame(lab, frames[0]), frames[1]);
  const double cut = cutoff.value_or(std::abs(p.Omega1));
  TimeDependentHamiltonian eff = rwa_effective(framed, cut);
  return {std::move(lab), std::move(frames), std::move(framed), std::move(eff), cut};
}

// ---------------------------------------------------------------------------
// analog Dirac

struct AnalogDiracParams {
  double omega = 0.0;  // resonator = qubit frequency
  double g = 1.0;
  double Omega = 0.0;
  double lambda = 0.0;
  double xi = 0.0;
  double nu = 0.0;
  double phi = kPi / 2;
  std::size_t fock = kDefaultFock;
};

// enforces w - nu = 2 Omega
inline AnalogDiracParams analog_dirac_resonant(double omega, double g, double Omega, double lambda,
                                               double xi, double phi = kPi / 2,
                                               std::size_t fock = kDefaultFock) {
  return {omega, g, Omega, lambda, xi, omega - 2 * Omega, phi, fock};
}

// (w/2) sz + w a^dag a - g (s+ a + s- a^dag) - Omega (e^{i(w t + phi)} s- + h.c.)
//   - lambda (e^{i(nu t + phi)} s- + h.c.) + xi (e^{i w t} a + h.c.)
inline TimeDependentHamiltonian analog_dirac_lab(const AnalogDiracParams& p) {
  const auto s = qubit_resonator_space(p.fock);
  Hamiltonian h0(s);
  h0.add(p.omega / 2, {{0, Op::sigma_z}});
  h0.add(p.omega, {{1, Op::number}});
  h0.add(-p.g, {{0, Op::sigma_plus}, {1, Op::annihilation}}, true);
  return TimeDependentHamiltonian(
      h0, {DriveTerm{{{0, Op::sigma_minus}}, -p.Omega, p.omega, p.phi},
           DriveTerm{{{0, Op::sigma_minus}}, -p.lambda, p.nu, p.phi},
           DriveTerm{{{1, Op::annihilation}}, p.xi, p.omega, 0.0}});
}

// (lambda/2) sz + (g/sqrt2) sy p + xi sqrt2 x
inline Hamiltonian analog_dirac_effective_display(const AnalogDiracParams& p) {
  const auto s = qubit_resonator_space(p.fock);
  Hamiltonian h(s);
  h.add(p.lambda / 2, {{0, Op::sigma_z}});
  h.add(p.g / std::sqrt(2.0), {{0, Op::sigma_y}, {1, Op::quad_p}});
  h.add(p.xi * std::sqrt(2.0), {{1, Op::quad_x}});
  return h;
}

// frames: w (sz/2 + a^dag a), then -Omega (e^{i phi} s- + e^{-i phi} s+)
inline AnalogSetup analog_dirac_setup(const AnalogDiracParams& p, std::optional<double> cutoff = {}) {
  const auto s = qubit_resonator_space(p.fock);
  TimeDependentHamiltonian lab = analog_dirac_lab(p);
  Hamiltonian g1(s), g2(s);
  g1.add(p.omega / 2, {{0, Op::sigma_z}});
  g1.add(p.omega, {{1, Op::number}});
  g2.add(-p.Omega * std::exp(kI * p.phi), {{0, Op::sigma_minus}}, true);
  std::vector<RotatingFrame> frames{RotatingFrame(assemble(g1)), RotatingFrame(assemble(g2))};
  TimeDependentHamiltonian framed = into_frame(into_frame(lab, frames[0]), frames[1]);
  const double cut = cutoff.value_or(std::abs(p.Omega));
  TimeDependentHamiltonian eff = rwa_effective(framed, cut);
  return {std::move(lab), std::move(frames), std::move(framed), std::move(eff), cut};
}

// <x> of the effective Dirac model along t_grid.  With xi = 0 the particle
// drifts linearly at c <sigma_y>; the mass term adds the trembling at 2 E.
inline std::vector<double> dirac_position_series(const AnalogDiracParams& p, const QuantumState& s0,
                                                 const std::vector<double>& t_grid,
                                                 double* max_top_fock = nullptr) {
  const OperatorMatrix h = assemble(analog_dirac_effective_display(p));
  if (!(s0.space() == h.space())) throw DimensionMismatch("dirac_position_series: space mismatch");
  const Spectrum sp = diagonalize(h);
  const OperatorMatrix X = site_operator(h.space(), 1, Op::quad_x);
  std::vector<double> out;
  double top = 0;
  for (double t : t_grid) {
    const QuantumState st(h.space(), sp.evolve(t, s0.amplitudes()));
    out.push_back(expectation(st, X).real());
    top = std::max(top, max_top_fock_population(st));
  }
  if (max_top_fock) *max_top_fock = top;
  return out;
}

// ---------------------------------------------------------------------------
// lattices

struct LatticeTopology {
  std::size_t sites = 2;
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  static LatticeTopology chain(std::size_t n) {
    LatticeTopology t{n, {}};
    for (std::size_t i = 0; i + 1 < n; ++i) t.edges.push_back({i, i + 1});
    return t;
  }
  void validate() const {
    if (sites < 1) throw std::invalid_argument("lattice: no sites");
    std::vector<std::size_t> parent(sites);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto [a, b] : edges) {
      if (a >= sites || b >= sites || a == b) throw std::invalid_argument("lattice: bad edge");
      if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
        throw std::invalid_argument("lattice: duplicate edge");
      parent[find(a)] = find(b);
    }
    for (std::size_t i = 0; i < sites; ++i)
      if (find(i) != find(0)) throw std::invalid_argument("lattice: edge set is not connected");
  }
};

// sum w0 s+s- + w a^dag a + g (a^dag s- + a s+)  +  J sum_edges (a_i a_j^dag + h.c.)
struct JchModel {
  double omega0 = 1.0;
  double omega = 1.0;
  double g = 0.0;
  double J = 0.0;
};

// sum [-delta n + Omega (a + a^dag)] - J sum_edges (a_i a_j^dag + h.c.)
//   + U sum n (n - 1) + V sum_edges n_i n_j
struct DrivenArrayModel {
  double delta = 0.0;
  double Omega = 0.0;
  double J = 0.0;
  double U = 0.0;
  double V = 0.0;
};

struct LatticeParams {
  LatticeTopology topology;
  std::variant<JchModel, DrivenArrayModel> model;
  std::size_t fock = 3;
};

// JCH: cell i = (qubit 2i, resonator 2i+1).  Driven array: resonator i.
inline HilbertSpec lattice_space(const LatticeParams& p) {
  p.topology.validate();
  std::vector<Subsystem> subs;
  const bool jch = std::holds_alternative<JchModel>(p.model);
  for (std::size_t i = 0; i < p.topology.sites; ++i) {
    if (jch) subs.push_back(Subsystem::qubit());
    subs.push_back(Subsystem::boson(p.fock));
  }
  return HilbertSpec(std::move(subs));
}

inline std::size_t lattice_resonator(const LatticeParams& p, std::size_t site) {
  return std::holds_alternative<JchModel>(p.model) ? 2 * site + 1 : site;
}

inline Hamiltonian lattice_hamiltonian(const LatticeParams& p) {
  const auto s = lattice_space(p);
  Hamiltonian h(s);
  if (const auto* m = std::get_if<JchModel>(&p.model)) {
    for (std::size_t i = 0; i < p.topology.sites; ++i) {
      const std::size_t q = 2 * i, b = 2 * i + 1;
      h.add(m->omega0, {{q, Op::sigma_plus}, {q, Op::sigma_minus}});
      h.add(m->omega, {{b, Op::number}});
      if (m->g != 0.0) h.add(m->g, {{b, Op::creation}, {q, Op::sigma_minus}}, true);
    }
    for (auto [i, j] : p.topology.edges)
      h.add(m->J, {{2 * i + 1, Op::annihilation}, {2 * j + 1, Op::creation}}, true);
  } else {
    const auto& d = std::get<DrivenArrayModel>(p.model);
    for (std::size_t i = 0; i < p.topology.sites; ++i) {
      h.add(-d.delta, {{i, Op::number}});
      h.add(d.Omega, {{i, Op::annihilation}}, true);
      h.add(d.U, {{i, Op::number, 2}});
      h.add(-d.U, {{i, Op::number}});
    }
    for (auto [i, j] : p.topology.edges) {
      h.add(-d.J, {{i, Op::annihilation}, {j, Op::creation}}, true);
      h.add(d.V, {{i, Op::number}, {j, Op::number}});
    }
  }
  return h;
}

// sum s+s- + sum a^dag a over the whole space
inline OperatorMatrix excitation_number(const HilbertSpec& s) {
  OperatorMatrix n = OperatorMatrix::zero(s);
  for (std::size_t i = 0; i < s.size(); ++i)
    n += s.is_qubit(i) ? site_operator(s, i, Op::sigma_plus) * site_operator(s, i, Op::sigma_minus)
                       : site_operator(s, i, Op::number);
  return n;
}

// First return of |psi(t)> to |psi(0)> after t_min: the return probability is
// scanned on a grid and the best local maximum refined with Brent.
inline double revival_time(const OperatorMatrix& h, const QuantumState& s0, double t_min,
                           double t_max, std::size_t grid = 4000) {
  const Spectrum sp = diagonalize(h);
  auto ret = [&](double t) { return std::norm(s0.amplitudes().dot(sp.evolve(t, s0.amplitudes()))); };
  double best_t = t_min, best = -1;
  const double dt = (t_max - t_min) / double(grid);
  for (std::size_t k = 0; k <= grid; ++k) {
    const double t = t_min + dt * double(k);
    const double v = ret(t);
    if (v > best + 1e-12) {
      best = v;
      best_t = t;
    }
  }
  auto r = boost::math::tools::brent_find_minima([&](double t) { return -ret(t); },
                                                 std::max(t_min, best_t - dt), best_t + dt, 52);
  return r.first;
}

}  // namespace daqsim
