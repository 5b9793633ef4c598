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

// Gate set and circuits.  Rotations are R_j(theta) = exp(-i theta/2 sigma_j).
#pragma once

#include "daqsim/hilbert.hpp"

#include <memory>
#include <type_traits>
#include <string>
#include <variant>
#include <vector>

namespace daqsim {

enum class Axis { x, y, z };

inline Op axis_op(Axis a) {
  return a == Axis::x ? Op::sigma_x : a == Axis::y ? Op::sigma_y : Op::sigma_z;
}
inline const char* axis_name(Axis a) { return a == Axis::x ? "x" : a == Axis::y ? "y" : "z"; }

// Same axis and angle on every target.  `collective` marks a single physical
// pulse addressing all targets at once (matters only for budgets).
struct Rotation {
  Axis axis = Axis::x;
  double angle = 0.0;
  std::vector<std::size_t> targets;
  bool collective = true;
};

// diag(1, e^{i phi}, e^{i phi}, 1) on (first, second)
struct CZPhi {
  double phi = 0.0;
  std::size_t first = 0;
  std::size_t second = 1;
};

// exp(-i theta (cos phi S_x + sin phi S_y)^2 / 4) on the targets
struct MS {
  double theta = 0.0;
  double phi = 0.0;
  std::vector<std::size_t> targets;
};

// exp(-i pi sigma_x / 2) = -i sigma_x on each target, one collective pulse
struct QubitFlip {
  std::vector<std::size_t> targets;
};

// exp(-i H duration)
struct AnalogBlock {
  Hamiltonian hamiltonian;
  double duration = 0.0;
  std::string label;
};

struct CustomUnitary {
  Matrix matrix;
  std::vector<std::size_t> targets;
  std::string label;
};

using Gate = std::variant<Rotation, CZPhi, MS, QubitFlip, AnalogBlock, CustomUnitary>;

// ---------------------------------------------------------------------------
// local unitaries

inline Matrix rotation_matrix(Axis axis, double angle) {
  return std::cos(angle / 2) * Matrix::Identity(2, 2) -
         kI * std::sin(angle / 2) * qubit_operator(axis_op(axis));
}

inline Matrix cz_phi(double phi) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = std::exp(kI * phi);
  m(2, 2) = std::exp(kI * phi);
  m(3, 3) = 1;
  return m;
}

inline Matrix qubit_flip_matrix() { return -kI * qubit_operator(Op::sigma_x); }

// sum_i sigma_i on k qubits
inline Matrix collective_spin(Op op, std::size_t k) {
  const auto space = HilbertSpec::qubits(k);
  const auto D = Eigen::Index(space.dim());
  Matrix s = Matrix::Zero(D, D);
  for (std::size_t i = 0; i < k; ++i) s += embed(qubit_operator(op), {i}, space);
  return s;
}

inline Matrix ms_gate(double theta, double phi, std::size_t k) {
  if (k < 2) throw std::invalid_argument("ms_gate: need at least 2 qubits");
  const Matrix m = std::cos(phi) * collective_spin(Op::sigma_x, k) +
                   std::sin(phi) * collective_spin(Op::sigma_y, k);
  const Spectrum sp = diagonalize(m);
  Vector ph(sp.values.size());
  for (Eigen::Index i = 0; i < ph.size(); ++i)
    ph(i) = std::exp(-kI * theta * sp.values(i) * sp.values(i) / 4.0);
  return sp.vectors * ph.asDiagonal() * sp.vectors.adjoint();
}

// sum_{i<j} Z_i Z_j on k qubits (diagonal)
inline Matrix zz_all_pairs(std::size_t k) {
  const auto space = HilbertSpec::qubits(k);
  const auto D = Eigen::Index(space.dim());
  Matrix h = Matrix::Zero(D, D);
  for (std::size_t r = 0; r < space.dim(); ++r) {
    double acc = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const double zi = space.level(r, i) == kExcited ? 1.0 : -1.0;
        const double zj = space.level(r, j) == kExcited ? 1.0 : -1.0;
        acc += zi * zj;
      }
    h(Eigen::Index(r), Eigen::Index(r)) = acc;
  }
  return h;
}

// U_{Sz^2} = exp(-i pi/4 sum_{i<j} Z_i Z_j)
inline Matrix sz2_gate(std::size_t k) {
  if (k < 2) throw std::invalid_argument("sz2_gate: need at least 2 qubits");
  Matrix u = zz_all_pairs(k);
  for (Eigen::Index i = 0; i < u.rows(); ++i) u(i, i) = std::exp(-kI * kPi / 4.0 * u(i, i));
  return u;
}

// ---------------------------------------------------------------------------
// circuits

class Circuit {
 public:
  explicit Circuit(HilbertSpec space) : space_(std::move(space)) {}

  Circuit& add(Gate g) {
    validate(g);
    gates_.push_back(std::move(g));
    return *this;
  }
  Circuit& append(const Circuit& other) {
    if (!(other.space_ == space_)) throw DimensionMismatch("Circuit::append: space mismatch");
    gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
    return *this;
  }
  Circuit& repeat(std::size_t times) {
    const auto one = gates_;
    gates_.clear();
    for (std::size_t r = 0; r < times; ++r) gates_.insert(gates_.end(), one.begin(), one.end());
    return *this;
  }

  const HilbertSpec& space() const { return space_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

 private:
  void check_qubits(const std::vector<std::size_t>& ts, std::size_t min_count) const {
    if (ts.size() < min_count) throw std::invalid_argument("gate: too few targets");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (ts[i] >= space_.size())
        throw std::out_of_range("gate: target " + std::to_string(ts[i]) + " out of range");
      if (!space_.is_qubit(ts[i]))
        throw std::invalid_argument("gate: target " + std::to_string(ts[i]) + " is not a qubit");
      for (std::size_t j = 0; j < i; ++j)
        if (ts[i] == ts[j]) throw std::invalid_argument("gate: repeated target");
    }
  }
  void validate(const Gate& g) const {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Rotation>) check_qubits(x.targets, 1);
          else if constexpr (std::is_same_v<T, CZPhi>) check_qubits({x.first, x.second}, 2);
          else if constexpr (std::is_same_v<T, MS>) check_qubits(x.targets, 2);
          else if constexpr (std::is_same_v<T, QubitFlip>) check_qubits(x.targets, 1);
          else if constexpr (std::is_same_v<T, AnalogBlock>) {
            if (!(x.hamiltonian.space() == space_))
              throw DimensionMismatch("AnalogBlock: Hamiltonian lives on another space");
          } else {
            std::size_t d = 1;
            for (auto t : x.targets) {
              if (t >= space_.size()) throw std::out_of_range("CustomUnitary: target out of range");
              d *= space_[t].dim;
            }
            if (x.targets.empty() || std::size_t(x.matrix.rows()) != d ||
                x.matrix.rows() != x.matrix.cols())
              throw DimensionMismatch("CustomUnitary: matrix does not match targets");
            if (unitarity_defect(x.matrix) > 1e-12)
              throw std::invalid_argument("CustomUnitary: matrix is not unitary");
          }
        },
        g);
  }

  HilbertSpec space_;
  std::vector<Gate> gates_;
};

// Local representation (matrix on `sites`) of a non-analog gate.
struct LocalGate {
  Matrix matrix;
  std::vector<std::size_t> sites;
};

inline LocalGate local_gate(const Gate& g) {
  return std::visit(
      [](const auto& x) -> LocalGate {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Rotation>) {
          Matrix m = Matrix::Ones(1, 1);
          const Matrix r = rotation_matrix(x.axis, x.angle);
          for (std::size_t i = 0; i < x.targets.size(); ++i) m = kron(m, r);
          return {m, x.targets};
        } else if constexpr (std::is_same_v<T, CZPhi>) {
          return {cz_phi(x.phi), {x.first, x.second}};
        } else if constexpr (std::is_same_v<T, MS>) {
          return {ms_gate(x.theta, x.phi, x.targets.size()), x.targets};
        } else if constexpr (std::is_same_v<T, QubitFlip>) {
          Matrix m = Matrix::Ones(1, 1);
          for (std::size_t i = 0; i < x.targets.size(); ++i) m = kron(m, qubit_flip_matrix());
          return {m, x.targets};
        } else if constexpr (std::is_same_v<T, CustomUnitary>) {
          return {x.matrix, x.targets};
        } else {
          throw std::logic_error("local_gate: analog block has no local form");
        }
      },
      g);
}

namespace detail {

// Small cache so repeated identical analog blocks are diagonalized once.
class SpectrumCache {
 public:
  const Spectrum& get(const Hamiltonian& h) {
    Matrix m = assemble(h).matrix();
    for (const auto& e : entries_)
      if (e.first.rows() == m.rows() && e.first == m) return e.second;
    if (entries_.size() >= 8) entries_.erase(entries_.begin());
    Spectrum sp = diagonalize(m);
    entries_.emplace_back(std::move(m), std::move(sp));
    return entries_.back().second;
  }

 private:
  std::vector<std::pair<Matrix, Spectrum>> entries_;
};

}  // namespace detail

inline Matrix gate_unitary(const Gate& g, const HilbertSpec& space) {
  if (const auto* a = std::get_if<AnalogBlock>(&g))
    return diagonalize(assemble(a->hamiltonian)).propagator(a->duration);
  const LocalGate lg = local_gate(g);
  return embed(lg.matrix, lg.sites, space);
}

// earliest gate applied first
inline Vector apply(const Circuit& c, Vector psi) {
  if (std::size_t(psi.size()) != c.space().dim())
    throw DimensionMismatch("apply: state dimension mismatch");
  detail::SpectrumCache cache;
  for (const auto& g : c.gates()) {
    if (const auto* a = std::get_if<AnalogBlock>(&g)) {
      psi = cache.get(a->hamiltonian).evolve(a->duration, psi);
    } else {
      const LocalGate lg = local_gate(g);
      psi = apply_local(lg.matrix, lg.sites, c.space(), psi);
    }
  }
  return psi;
}

inline QuantumState apply(const Circuit& c, const QuantumState& s) {
  if (!(s.space() == c.space())) throw DimensionMismatch("apply: space mismatch");
  return QuantumState::normalized(s.space(), daqsim::apply(c, s.amplitudes()));
}

inline OperatorMatrix circuit_unitary(const Circuit& c) {
  const auto D = Eigen::Index(c.space().dim());
  Matrix u = Matrix::Identity(D, D);
  detail::SpectrumCache cache;
  for (const auto& g : c.gates()) {
    if (const auto* a = std::get_if<AnalogBlock>(&g)) {
      u = cache.get(a->hamiltonian).propagator(a->duration) * u;
    } else {
      const LocalGate lg = local_gate(g);
      Matrix next(D, D);
      for (Eigen::Index col = 0; col < D; ++col)
        next.col(col) = apply_local(lg.matrix, lg.sites, c.space(), u.col(col));
      u = std::move(next);
    }
  }
  return {c.space(), std::move(u)};
}

// ---------------------------------------------------------------------------
// MS sandwich: U_{Sz^2} exp(i phi' sigma_1) U_{Sz^2}^dag = exp(i phi Y Z ... Z)
//
// The middle rotation is about y for odd k and x for even k.  With the middle
// gate written as exp(i phi' sigma), phi' = +phi for k = 1,2 (mod 4) and -phi
// for k = 0,3 (mod 4).

enum class SandwichSignTable {
  verified,  // the table above
  printed,   // +phi for k = 0,1 (mod 4), -phi for k = 2,3; wrong for even k
};

inline int ms_sandwich_sign(std::size_t k, SandwichSignTable table = SandwichSignTable::verified) {
  const std::size_t r = k % 4;
  if (table == SandwichSignTable::printed) return (r == 0 || r == 1) ? +1 : -1;
  return (r == 1 || r == 2) ? +1 : -1;
}

inline Hamiltonian zz_all_pairs_hamiltonian(const HilbertSpec& space,
                                            const std::vector<std::size_t>& qubits,
                                            double scale = 1.0) {
  Hamiltonian h(space);
  for (std::size_t i = 0; i < qubits.size(); ++i)
    for (std::size_t j = i + 1; j < qubits.size(); ++j)
      h.add(scale, {{qubits[i], Op::sigma_z}, {qubits[j], Op::sigma_z}});
  return h;
}

inline Circuit ms_sandwich_circuit(double phi, std::size_t k,
                                   SandwichSignTable table = SandwichSignTable::verified) {
  if (k < 2) throw std::invalid_argument("ms_sandwich: need at least 2 qubits");
  const auto space = HilbertSpec::qubits(k);
  std::vector<std::size_t> all(k);
  for (std::size_t i = 0; i < k; ++i) all[i] = i;
  const double phi_prime = ms_sandwich_sign(k, table) * phi;
  const Axis axis = (k % 2 == 1) ? Axis::y : Axis::x;
  Circuit c(space);
  // U_{Sz^2}^dag = exp(+i pi/4 sum ZZ)
  c.add(AnalogBlock{zz_all_pairs_hamiltonian(space, all, -1.0), kPi / 4, "Sz2_dag"});
  // exp(i phi' sigma) = R(-2 phi')
  c.add(Rotation{axis, -2.0 * phi_prime, {0}, false});
  c.add(AnalogBlock{zz_all_pairs_hamiltonian(space, all, 1.0), kPi / 4, "Sz2"});
  return c;
}

inline OperatorMatrix ms_sandwich(double phi, std::size_t k,
                                  SandwichSignTable table = SandwichSignTable::verified) {
  return circuit_unitary(ms_sandwich_circuit(phi, k, table));
}

}  // namespace daqsim
