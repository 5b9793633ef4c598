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

// Digital circuits for Heisenberg and Ising chains and a three-mode
// Fermi-Hubbard encoding.
#pragma once

#include "daqsim/fermion.hpp"
#include "daqsim/trotter.hpp"

#include <utility>

namespace daqsim {

enum class SpinModel { heisenberg, ising, ising_transverse };

// Two pi/2 pulses or one pi pulse for the Ising YY sign flip.
enum class FlipStyle { two_half_pi, single_pi };

struct SpinProtocolParams {
  SpinModel model = SpinModel::heisenberg;
  std::size_t n_qubits = 2;
  double J = 1.0;
  double B = 0.0;
  double t = 1.0;
  std::size_t l = 1;
  // optional per-pair coupling J_ij; empty = homogeneous.  Realized by
  // scaling the analog block durations.
  std::vector<double> pair_couplings;
  FlipStyle flip = FlipStyle::two_half_pi;
};

using Pair = std::pair<std::size_t, std::size_t>;

// interacting pairs: open chain for Heisenberg, all pairs for the Ising triangle
inline std::vector<Pair> protocol_pairs(const SpinProtocolParams& p) {
  if (p.n_qubits < 2 || p.n_qubits > 3)
    throw std::invalid_argument("spin protocol: n_qubits must be 2 or 3");
  if (p.model == SpinModel::heisenberg) {
    std::vector<Pair> out;
    for (std::size_t i = 0; i + 1 < p.n_qubits; ++i) out.push_back({i, i + 1});
    return out;
  }
  if (p.n_qubits == 2) return {{0, 1}};
  return {{0, 1}, {0, 2}, {1, 2}};
}

inline double pair_coupling(const SpinProtocolParams& p, std::size_t k) {
  if (p.pair_couplings.empty()) return p.J;
  if (k >= p.pair_couplings.size())
    throw std::invalid_argument("spin protocol: pair_couplings has too few entries");
  return p.pair_couplings[k];
}

// c (sigma_a sigma_a) on a pair, as a Hamiltonian
inline Hamiltonian pair_term(const HilbertSpec& s, Pair pr, Op a, double c) {
  Hamiltonian h(s);
  h.add(c, {{pr.first, a}, {pr.second, a}});
  return h;
}

// c (XX + YY)
inline Hamiltonian xy_block(const HilbertSpec& s, Pair pr, double c) {
  Hamiltonian h = pair_term(s, pr, Op::sigma_x, c);
  h.add(pair_term(s, pr, Op::sigma_y, c));
  return h;
}

// Target Heisenberg Hamiltonian  sum_pairs J_ij (XX + YY + ZZ); the three
// J/2 blocks per step add up to this.
inline Hamiltonian heisenberg_hamiltonian(const SpinProtocolParams& p) {
  const auto s = HilbertSpec::qubits(p.n_qubits);
  Hamiltonian h(s);
  const auto pairs = protocol_pairs(p);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double c = pair_coupling(p, k);
    for (Op a : {Op::sigma_x, Op::sigma_y, Op::sigma_z}) h.add(pair_term(s, pairs[k], a, c));
  }
  return h;
}

// Product-formula terms in application order: yz blocks, xz blocks, xy blocks.
inline std::vector<Hamiltonian> heisenberg_terms(const SpinProtocolParams& p) {
  const auto s = HilbertSpec::qubits(p.n_qubits);
  const auto pairs = protocol_pairs(p);
  std::vector<Hamiltonian> out;
  const std::pair<Op, Op> blocks[] = {{Op::sigma_y, Op::sigma_z},
                                      {Op::sigma_x, Op::sigma_z},
                                      {Op::sigma_x, Op::sigma_y}};
  for (const auto& [a, b] : blocks)
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double c = pair_coupling(p, k) / 2;
      Hamiltonian h = pair_term(s, pairs[k], a, c);
      h.add(pair_term(s, pairs[k], b, c));
      out.push_back(std::move(h));
    }
  return out;
}

// Per step: R_y^dag, XY blocks, R_y (-> yz);  R_x^dag, XY blocks, R_x (-> xz);
// XY blocks.  R_{x,y} = exp(-i pi/4 sigma) on every qubit, one collective pulse.
inline Circuit heisenberg_circuit(const SpinProtocolParams& p) {
  if (p.model != SpinModel::heisenberg)
    throw std::invalid_argument("heisenberg_circuit: model must be heisenberg");
  if (p.l < 1) throw std::invalid_argument("heisenberg_circuit: l must be >= 1");
  const auto s = HilbertSpec::qubits(p.n_qubits);
  const auto pairs = protocol_pairs(p);
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < p.n_qubits; ++i) all.push_back(i);
  const double tau = p.t / double(p.l);

  Circuit step(s);
  auto blocks = [&] {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      // durations scaled by J_ij / J so one native J/2 (XX+YY) block serves all pairs
      const double scale = p.J != 0.0 ? pair_coupling(p, k) / p.J : 0.0;
      step.add(AnalogBlock{xy_block(s, pairs[k], p.J / 2), tau * scale,
                           "XY(" + std::to_string(pairs[k].first) + "," +
                               std::to_string(pairs[k].second) + ")"});
    }
  };
  step.add(Rotation{Axis::y, -kPi / 2, all, true});
  blocks();
  step.add(Rotation{Axis::y, kPi / 2, all, true});
  step.add(Rotation{Axis::x, -kPi / 2, all, true});
  blocks();
  step.add(Rotation{Axis::x, kPi / 2, all, true});
  blocks();
  return step.repeat(p.l);
}

// sum_pairs J_ij XX  (+ B sum Y for the transverse model)
inline Hamiltonian ising_hamiltonian(const SpinProtocolParams& p, double xx_scale = 1.0) {
  const auto s = HilbertSpec::qubits(p.n_qubits);
  Hamiltonian h(s);
  const auto pairs = protocol_pairs(p);
  for (std::size_t k = 0; k < pairs.size(); ++k)
    h.add(pair_term(s, pairs[k], Op::sigma_x, xx_scale * pair_coupling(p, k)));
  if (p.model == SpinModel::ising_transverse)
    for (std::size_t i = 0; i < p.n_qubits; ++i) h.add(p.B, {{i, Op::sigma_y}});
  return h;
}

// Hamiltonian the Ising circuit simulates: pair blocks J(XX+YY) and J(XX-YY)
// compose to 2J XX per pair.
inline Hamiltonian ising_simulated_hamiltonian(const SpinProtocolParams& p) {
  return ising_hamiltonian(p, 2.0);
}

// Per step and pair: J(XX+YY) block, then the same block conjugated by a pi
// flip of the pair's first qubit (-> J(XX-YY)).  Transverse field last.
inline Circuit ising_circuit(const SpinProtocolParams& p) {
  if (p.model != SpinModel::ising && p.model != SpinModel::ising_transverse)
    throw std::invalid_argument("ising_circuit: model must be ising or ising_transverse");
  if (p.l < 1) throw std::invalid_argument("ising_circuit: l must be >= 1");
  const auto s = HilbertSpec::qubits(p.n_qubits);
  const auto pairs = protocol_pairs(p);
  const double tau = p.t / double(p.l);
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < p.n_qubits; ++i) all.push_back(i);

  Circuit step(s);
  auto flip = [&](std::size_t q, double sign) {
    if (p.flip == FlipStyle::single_pi) {
      step.add(Rotation{Axis::x, sign * kPi, {q}, false});
    } else {
      step.add(Rotation{Axis::x, sign * kPi / 2, {q}, false});
      step.add(Rotation{Axis::x, sign * kPi / 2, {q}, false});
    }
  };
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const double scale = p.J != 0.0 ? pair_coupling(p, k) / p.J : 0.0;
    const auto name = std::to_string(pairs[k].first) + "," + std::to_string(pairs[k].second);
    step.add(AnalogBlock{xy_block(s, pairs[k], p.J), tau * scale, "XY(" + name + ")"});
    // R^dag H R with R = exp(-i pi/2 sigma_x): applied as R^dag first
    flip(pairs[k].first, -1.0);
    step.add(AnalogBlock{xy_block(s, pairs[k], p.J), tau * scale, "XY(" + name + ")"});
    flip(pairs[k].first, +1.0);
  }
  if (p.model == SpinModel::ising_transverse)
    step.add(Rotation{Axis::y, 2.0 * p.B * tau, all, true});
  return step.repeat(p.l);
}

inline Circuit spin_circuit(const SpinProtocolParams& p) {
  return p.model == SpinModel::heisenberg ? heisenberg_circuit(p) : ising_circuit(p);
}

inline Hamiltonian spin_target(const SpinProtocolParams& p) {
  return p.model == SpinModel::heisenberg ? heisenberg_hamiltonian(p) : ising_simulated_hamiltonian(p);
}

// Product-formula term list matching the circuit's factorization
inline TrotterPlan spin_trotter_plan(const SpinProtocolParams& p) {
  TrotterPlan plan;
  plan.total_time = p.t;
  plan.steps = p.l;
  if (p.model == SpinModel::heisenberg) {
    plan.terms = heisenberg_terms(p);
  } else {
    const auto s = HilbertSpec::qubits(p.n_qubits);
    const auto pairs = protocol_pairs(p);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      plan.terms.push_back(pair_term(s, pairs[k], Op::sigma_x, 2.0 * pair_coupling(p, k)));
    if (p.model == SpinModel::ising_transverse) {
      Hamiltonian f(s);
      for (std::size_t i = 0; i < p.n_qubits; ++i) f.add(p.B, {{i, Op::sigma_y}});
      plan.terms.push_back(std::move(f));
    }
  }
  return plan;
}

// ---------------------------------------------------------------------------
// Fermi-Hubbard, three spinless modes, open boundary

struct HubbardParams {
  double h = 1.0;
  double U = 1.0;
  double t = 1.0;
  std::size_t n = 1;
};

// -h sum_i (b_i^dag b_{i+1} + h.c.) + U sum_i n_i n_{i+1},  modes 0..2
inline std::vector<FermionTerm> hubbard_fermion_terms(const HubbardParams& p) {
  std::vector<FermionTerm> out;
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    out.push_back({-p.h, {create(i), annihilate(i + 1)}});
    out.push_back({-p.h, {create(i + 1), annihilate(i)}});
    out.push_back({p.U, {create(i), annihilate(i), create(i + 1), annihilate(i + 1)}});
  }
  return out;
}

// Pauli form on qubits (0,1,2) = tensor factors 1,2,3 as displayed:
//   h/2 (IXX + IYY + XXI + YYI) + U/4 (IZZ + IZI + IZI + IIZ + ZZI + ZII)
inline Hamiltonian hubbard_spin_hamiltonian(const HubbardParams& p) {
  const auto s = HilbertSpec::qubits(3);
  std::vector<PauliString> ps;
  for (const char* w : {"IXX", "IYY", "XXI", "YYI"}) ps.push_back(PauliString::parse(w, 0, p.h / 2));
  for (const char* w : {"IZZ", "IZI", "IZI", "IIZ", "ZZI", "ZII"})
    ps.push_back(PauliString::parse(w, 0, p.U / 4));
  return pauli_hamiltonian(ps, s);
}

// Per step, in application order:
//   Z-type U terms:  ZII, ZZI (CZ), IIZ, IZI (weight U/2), IZZ (CZ)
//   bond (0,1):  R_x(pi/2) CZ R_x(-pi/2) -> YY;  R_y(-pi/2) CZ R_y(pi/2) -> XX
//   bond (1,2):  same with primed rotations
// exp(-i c ZZ tau) is CZ_phi with phi = 2 c tau up to a global phase.
// XX and YY of a bond are kept adjacent so every bond factor conserves the
// JW particle number exactly.
inline Circuit hubbard_circuit(const HubbardParams& p) {
  if (p.n < 1) throw std::invalid_argument("hubbard_circuit: n must be >= 1");
  const auto s = HilbertSpec::qubits(3);
  const double tau = p.t / double(p.n);
  Circuit step(s);
  const double uq = p.U / 4.0;
  step.add(Rotation{Axis::z, 2 * uq * tau, {0}, false});
  step.add(CZPhi{2 * uq * tau, 0, 1});
  step.add(Rotation{Axis::z, 2 * uq * tau, {2}, false});
  step.add(Rotation{Axis::z, 2 * (2 * uq) * tau, {1}, false});
  step.add(CZPhi{2 * uq * tau, 1, 2});
  const double hop = 2 * (p.h / 2) * tau;
  for (Pair b : {Pair{0, 1}, Pair{1, 2}}) {
    const std::vector<std::size_t> q{b.first, b.second};
    step.add(Rotation{Axis::x, kPi / 2, q, true});
    step.add(CZPhi{hop, b.first, b.second});
    step.add(Rotation{Axis::x, -kPi / 2, q, true});
    step.add(Rotation{Axis::y, -kPi / 2, q, true});
    step.add(CZPhi{hop, b.first, b.second});
    step.add(Rotation{Axis::y, kPi / 2, q, true});
  }
  return step.repeat(p.n);
}

// sum_i (I + Z_i)/2 on n qubits
inline OperatorMatrix qubit_number_operator(const HilbertSpec& s) {
  OperatorMatrix n = OperatorMatrix::zero(s);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.is_qubit(i)) n += site_operator(s, i, Op::sigma_plus) * site_operator(s, i, Op::sigma_minus);
  return n;
}

}  // namespace daqsim
