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

// Discretized fermion-antifermion scattering through a bosonic continuum.
//
// Continuum modes: a uniform momentum grid; the per-mode coupling g_j already
// absorbs the sqrt(dk) of the discretization (and any A(x) prefactor).
// One fermion and one antifermion comoving mode are Jordan-Wigner encoded on
// qubits (fermion on slot 1, antifermion on slot 0); bosons follow.
#pragma once

#include "daqsim/fermion.hpp"
#include "daqsim/frames.hpp"
#include "daqsim/gates.hpp"

#include <array>
#include <memory>
#include <numeric>

namespace daqsim {

struct Dispersion {
  double mass = 0.0;
  double operator()(double k) const { return std::sqrt(k * k + mass * mass); }
};

struct MomentumGrid {
  std::vector<double> momenta;
  std::vector<double> weights;

  static MomentumGrid uniform(double kmin, double kmax, std::size_t n) {
    if (n < 1 || !(kmax >= kmin)) throw std::invalid_argument("MomentumGrid: bad range");
    MomentumGrid g;
    const double dk = n > 1 ? (kmax - kmin) / double(n - 1) : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      g.momenta.push_back(kmin + dk * double(i));
      g.weights.push_back(dk);
    }
    g.validate();
    return g;
  }
  std::size_t size() const { return momenta.size(); }
  void validate() const {
    if (momenta.empty() || momenta.size() != weights.size())
      throw std::invalid_argument("MomentumGrid: momenta/weights size mismatch");
    for (std::size_t i = 0; i < momenta.size(); ++i) {
      if (!(weights[i] > 0)) throw std::invalid_argument("MomentumGrid: weights must be positive");
      if (i > 0 && !(momenta[i] > momenta[i - 1]))
        throw std::invalid_argument("MomentumGrid: momenta must be strictly increasing");
    }
  }
};

struct ModeGrid {
  MomentumGrid grid;
  std::vector<double> couplings;
  Dispersion dispersion;

  // g_j = coupling(k_j) sqrt(dk_j)
  static ModeGrid uniform(double kmin, double kmax, std::size_t n,
                          const std::function<double(double)>& coupling, Dispersion d = {}) {
    ModeGrid m{MomentumGrid::uniform(kmin, kmax, n), {}, d};
    for (std::size_t j = 0; j < n; ++j)
      m.couplings.push_back(coupling(m.grid.momenta[j]) * std::sqrt(m.grid.weights[j]));
    return m;
  }
  // band-stop style mask: couplings outside [kmin, kmax] set to zero
  ModeGrid band_window(double kmin, double kmax) const {
    ModeGrid m = *this;
    for (std::size_t j = 0; j < size(); ++j)
      if (grid.momenta[j] < kmin || grid.momenta[j] > kmax) m.couplings[j] = 0.0;
    return m;
  }
  std::size_t size() const { return grid.size(); }
  void validate() const {
    grid.validate();
    if (couplings.size() != grid.size())
      throw std::invalid_argument("ModeGrid: one coupling per mode required");
  }
};

struct WavePacket {
  double center = 0.0;
  double width = 1.0;
  std::vector<cplx> profile;  // Omega(center, p_i) on the packet grid
};

inline double packet_norm2(const WavePacket& w, const MomentumGrid& g) {
  double s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * std::norm(w.profile.at(i));
  return s;
}

inline cplx packet_overlap(const WavePacket& a, const WavePacket& b, const MomentumGrid& g) {
  cplx s = 0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weights[i] * std::conj(a.profile.at(i)) * b.profile.at(i);
  return s;
}

// Gaussian in momentum, normalized so that sum |Omega|^2 dp = 1
inline WavePacket gaussian_packet(const MomentumGrid& g, double center, double width) {
  g.validate();
  if (!(width > 0)) throw std::invalid_argument("gaussian_packet: width must be positive");
  WavePacket w{center, width, {}};
  for (double p : g.momenta) w.profile.push_back(std::exp(-(p - center) * (p - center) / (4 * width * width)));
  const double n = std::sqrt(packet_norm2(w, g));
  for (auto& v : w.profile) v /= n;
  return w;
}

// Gram-Schmidt in the dp-weighted inner product, in place
inline void orthonormalize(std::vector<WavePacket>& ws, const MomentumGrid& g) {
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const cplx c = packet_overlap(ws[j], ws[i], g);
      for (std::size_t k = 0; k < g.size(); ++k) ws[i].profile[k] -= c * ws[j].profile[k];
    }
    const double n = std::sqrt(packet_norm2(ws[i], g));
    if (n < 1e-12) throw std::invalid_argument("orthonormalize: linearly dependent packets");
    for (auto& v : ws[i].profile) v /= n;
  }
}

struct ComovingFactors {
  cplx lambda1;
  cplx lambda2;
};

// Lambda_1 = (2 pi)^{-1/2} sum_p dp Omega(p) e^{ i(p x - w_p t)} / sqrt(2 w_p)
// Lambda_2 = same with e^{-i(p x - w_p t)}
inline ComovingFactors comoving_overlap(const WavePacket& w, double x, double t,
                                        const MomentumGrid& g, const Dispersion& d,
                                        double edge_tol = 1e-8) {
  g.validate();
  if (w.profile.size() != g.size()) throw DimensionMismatch("comoving_overlap: packet/grid mismatch");
  if (std::abs(w.profile.front()) >= edge_tol || std::abs(w.profile.back()) >= edge_tol)
    throw std::invalid_argument("comoving_overlap: packet support exceeds the momentum grid");
  cplx l1 = 0, l2 = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double p = g.momenta[i], wp = d(p);
    if (!(wp > 0)) throw std::invalid_argument("comoving_overlap: zero frequency on grid");
    const cplx base = g.weights[i] * w.profile[i] / std::sqrt(2 * wp);
    const double ph = p * x - wp * t;
    l1 += base * std::exp(kI * ph);
    l2 += base * std::exp(-kI * ph);
  }
  const double norm = 1.0 / std::sqrt(2 * kPi);
  return {l1 * norm, l2 * norm};
}

// 2 qubits (antifermion slot 0, fermion slot 1) + one boson per continuum mode
inline HilbertSpec scattering_space(std::size_t n_modes, std::size_t fock,
                                    std::size_t n_qubits = 2) {
  std::vector<Subsystem> subs(n_qubits, Subsystem::qubit());
  for (std::size_t j = 0; j < n_modes; ++j) subs.push_back(Subsystem::boson(fock));
  return HilbertSpec(std::move(subs));
}

inline ModeLayout scattering_layout() { return ModeLayout{1, 1, 0}; }

// B(x) = sum_j g_j (a_j^dag e^{-i k_j x} - a_j e^{i k_j x}), anti-Hermitian
inline Matrix continuum_operator(const HilbertSpec& s, std::size_t first_boson, const ModeGrid& m,
                                 double x) {
  m.validate();
  const auto D = Eigen::Index(s.dim());
  Matrix b = Matrix::Zero(D, D);
  for (std::size_t j = 0; j < m.size(); ++j) {
    const std::size_t slot = first_boson + j;
    const Matrix a = embed(local_operator(s[slot], Op::annihilation), {slot}, s);
    const double k = m.grid.momenta[j];
    b += m.couplings[j] * (std::exp(-kI * k * x) * a.adjoint() - std::exp(kI * k * x) * a);
  }
  return b;
}

struct ScatteringModel {
  ModeGrid bosons;
  WavePacket fermion;
  WavePacket antifermion;
  MomentumGrid packet_grid;
  Dispersion fermion_dispersion{1.0};
  std::vector<double> x_grid;
  std::size_t fock = 3;
};

// Position weights: uniform spacing, a single point has weight 1.
inline std::vector<double> position_weights(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("scattering: empty position grid");
  if (xs.size() == 1) return {1.0};
  const double dx = xs[1] - xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::abs((xs[i] - xs[i - 1]) - dx) > 1e-12 * std::max(1.0, std::abs(dx)) || !(dx > 0))
      throw std::invalid_argument("scattering: position grid must be uniform and increasing");
  return std::vector<double>(xs.size(), dx);
}

// Fermionic bilinears b^dag b, b^dag d^dag, d b, d d^dag in the written order.
inline std::array<Matrix, 4> scattering_bilinears(const HilbertSpec& s) {
  const ModeLayout lay = scattering_layout();
  auto m = [&](std::vector<ModeOp> f) { return fermion_matrix(FermionTerm{1.0, std::move(f)}, lay, s).matrix(); };
  const ModeOp bd = create(0), b = annihilate(0);
  const ModeOp dd = create(0, Species::antifermion), d = annihilate(0, Species::antifermion);
  return {m({bd, b}), m({bd, dd}), m({d, b}), m({d, dd})};
}

// H_int(t) = i sum_x dx F(x,t) B(x),
// F = |L1|^2 b^dag b + L1* L2 b^dag d^dag + L2* L1 d b + |L2|^2 d d^dag
inline TimeDependentHamiltonian scattering_hamiltonian(const ScatteringModel& m) {
  m.bosons.validate();
  const auto s = scattering_space(m.bosons.size(), m.fock);
  const auto bil = scattering_bilinears(s);
  const auto wx = position_weights(m.x_grid);
  TimeDependentHamiltonian h(s);
  auto model = std::make_shared<ScatteringModel>(m);
  auto factors = [model](double t) {
    std::vector<ComovingFactors> out;
    for (double x : model->x_grid) {
      const auto f = comoving_overlap(model->fermion, x, t, model->packet_grid, model->fermion_dispersion);
      const auto a = comoving_overlap(model->antifermion, x, t, model->packet_grid, model->fermion_dispersion);
      out.push_back({f.lambda1, a.lambda2});
    }
    return out;
  };
  // precheck once so packet/grid problems surface at construction time
  (void)factors(0.0);
  for (std::size_t beta = 0; beta < 4; ++beta)
    for (std::size_t j = 0; j < m.bosons.size(); ++j) {
      const std::size_t slot = 2 + j;
      const Matrix a = embed(local_operator(s[slot], Op::annihilation), {slot}, s);
      const double gj = m.bosons.couplings[j];
      if (gj == 0.0) continue;
      const double k = m.bosons.grid.momenta[j];
      auto weight = [model, factors, beta, wx](double t, double kk, int sgn) {
        const auto lam = factors(t);
        cplx acc = 0;
        for (std::size_t ix = 0; ix < lam.size(); ++ix) {
          const cplx l1 = lam[ix].lambda1, l2 = lam[ix].lambda2;
          cplx f;
          switch (beta) {
            case 0: f = std::norm(l1); break;
            case 1: f = std::conj(l1) * l2; break;
            case 2: f = std::conj(l2) * l1; break;
            default: f = std::norm(l2); break;
          }
          acc += wx[ix] * f * std::exp(-kI * double(sgn) * kk * model->x_grid[ix]);
        }
        return acc;
      };
      // i g (a^dag e^{-ikx}) and -i g (a e^{ikx})
      h.add_modulated(bil[beta] * a.adjoint(),
                      [weight, gj, k](double t) { return kI * gj * weight(t, k, +1); });
      h.add_modulated(bil[beta] * a,
                      [weight, gj, k](double t) { return -kI * gj * weight(t, k, -1); });
    }
  return h;
}

// ---------------------------------------------------------------------------
// comoving input modes  b_in^dag = sum_p sqrt(dp) Omega(p) e^{-i w_p t} c_p^dag
// over JW-encoded momentum modes (mode i <-> grid point i of `species`)

inline OperatorMatrix comoving_creation(const WavePacket& w, const MomentumGrid& g,
                                        const Dispersion& d, double t, const ModeLayout& lay,
                                        Species species, const HilbertSpec& s) {
  if (w.profile.size() != g.size()) throw DimensionMismatch("comoving_creation: packet/grid mismatch");
  OperatorMatrix out = OperatorMatrix::zero(s);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx c = std::sqrt(g.weights[i]) * w.profile[i] * std::exp(-kI * d(g.momenta[i]) * t);
    out += fermion_matrix(FermionTerm{c, {create(i, species)}}, lay, s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// MS sandwich coupling a Pauli string to the continuum:
//   U_MS(-pi/2, 0) W U_MS(pi/2, 0) = exp(phi T B(x)),  W = exp(phi L B(x))
// where L = V T V^dag, V = U_MS(pi/2, 0).  L must be +-sigma_a on `coupled`.
// For T = Z X X (3 qubits) this gives L = -Z, the displayed sigma_z gate.

struct LocalCoupling {
  Axis axis = Axis::z;
  double sign = 1.0;
};

inline LocalCoupling sandwich_local_coupling(const PauliString& target, std::size_t n_qubits,
                                             std::size_t coupled = 0) {
  const auto qs = HilbertSpec::qubits(n_qubits);
  for (const auto& [slot, _] : target.letters)
    if (slot >= n_qubits) throw std::invalid_argument("scattering_ms_circuit: target outside qubits");
  const Matrix T = pauli_to_matrix(target, qs).matrix();
  const Matrix V = ms_gate(kPi / 2, 0.0, n_qubits);
  const Matrix L = V * T * V.adjoint();
  for (Axis a : {Axis::x, Axis::y, Axis::z}) {
    const Matrix s = embed(qubit_operator(axis_op(a)), {coupled}, qs);
    const cplx c = (s.adjoint() * L).trace() / double(qs.dim());
    if (std::abs(std::abs(c) - 1.0) < 1e-9 && std::abs(c.imag()) < 1e-9 &&
        max_abs(L - c * s) < 1e-9)
      return {a, c.real()};
  }
  throw std::invalid_argument(
      "scattering_ms_circuit: target string is not reachable with one local gate");
}

// hermitian generator of W:  W = exp(-i phi H_c),  H_c = i s sigma_a B(x)
inline Hamiltonian local_continuum_hamiltonian(const HilbertSpec& s, std::size_t first_boson,
                                               const ModeGrid& m, double x, LocalCoupling lc,
                                               std::size_t coupled = 0) {
  Hamiltonian h(s);
  for (std::size_t j = 0; j < m.size(); ++j) {
    const cplx c = kI * lc.sign * m.couplings[j] * std::exp(-kI * m.grid.momenta[j] * x);
    h.add(c, {{coupled, axis_op(lc.axis)}, {first_boson + j, Op::creation}}, true);
  }
  return h;
}

inline Circuit scattering_ms_circuit(double phi, const ModeGrid& m, const PauliString& target,
                                     double x, std::size_t fock, std::size_t n_qubits,
                                     std::size_t coupled = 0) {
  if (n_qubits < 2) throw std::invalid_argument("scattering_ms_circuit: need >= 2 qubits");
  m.validate();
  const auto s = scattering_space(m.size(), fock, n_qubits);
  const LocalCoupling lc = sandwich_local_coupling(target, n_qubits, coupled);
  std::vector<std::size_t> qubits(n_qubits);
  std::iota(qubits.begin(), qubits.end(), 0);
  Circuit c(s);
  c.add(MS{kPi / 2, 0.0, qubits});
  c.add(AnalogBlock{local_continuum_hamiltonian(s, n_qubits, m, x, lc, coupled), phi, "qubit-continuum"});
  c.add(MS{-kPi / 2, 0.0, qubits});
  return c;
}

}  // namespace daqsim
