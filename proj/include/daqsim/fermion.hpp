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

// Fermionic mode operators and the Jordan-Wigner encoding onto qubits.
//
// Mode layout: fermion modes take combined indices 0..nf-1, antifermion modes
// follow.  Combined mode m lives on tensor slot first_slot + (n_total-1-m), so
// mode 0 is the last qubit factor and
//     b_m^dag = Z (x) ... (x) sigma_+ (x) Z ... Z   (Z on all lower modes).
#pragma once

#include "daqsim/hilbert.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace daqsim {

enum class Species { fermion, antifermion };

struct ModeOp {
  std::size_t mode = 0;
  bool dagger = false;
  Species species = Species::fermion;
};

inline ModeOp create(std::size_t mode, Species s = Species::fermion) { return {mode, true, s}; }
inline ModeOp annihilate(std::size_t mode, Species s = Species::fermion) { return {mode, false, s}; }

// Kept in the written order; no normal ordering is applied.
struct FermionTerm {
  cplx coefficient = 1.0;
  std::vector<ModeOp> factors;
};

enum class Pauli : std::uint8_t { X = 1, Y = 2, Z = 3 };

struct PauliString {
  cplx coefficient = 1.0;
  std::map<std::size_t, Pauli> letters;  // qubit slot -> letter; identities omitted

  // "ZXX" -> Z on slot first, X on first+1, ...; 'I' allowed
  static PauliString parse(std::string_view s, std::size_t first = 0, cplx coeff = 1.0) {
    PauliString p;
    p.coefficient = coeff;
    for (std::size_t i = 0; i < s.size(); ++i) {
      switch (s[i]) {
        case 'I': break;
        case 'X': p.letters[first + i] = Pauli::X; break;
        case 'Y': p.letters[first + i] = Pauli::Y; break;
        case 'Z': p.letters[first + i] = Pauli::Z; break;
        default: throw std::invalid_argument("PauliString::parse: bad letter '" +
                                             std::string(1, s[i]) + "'");
      }
    }
    return p;
  }
};

struct ModeLayout {
  std::size_t n_fermion = 0;
  std::size_t n_antifermion = 0;
  std::size_t first_slot = 0;

  std::size_t total() const { return n_fermion + n_antifermion; }
  std::size_t combined(const ModeOp& op) const {
    const std::size_t n = op.species == Species::fermion ? n_fermion : n_antifermion;
    if (op.mode >= n)
      throw std::out_of_range("mode index " + std::to_string(op.mode) + " out of range");
    return op.species == Species::fermion ? op.mode : n_fermion + op.mode;
  }
  std::size_t slot(std::size_t combined_mode) const {
    return first_slot + total() - 1 - combined_mode;
  }
};

namespace detail {

using Letters = std::vector<std::uint8_t>;  // 0 = I, 1 = X, 2 = Y, 3 = Z

// single-qubit Pauli product a*b = phase * c
inline std::pair<cplx, std::uint8_t> pauli_mul(std::uint8_t a, std::uint8_t b) {
  if (a == 0) return {1.0, b};
  if (b == 0) return {1.0, a};
  if (a == b) return {1.0, 0};
  const std::uint8_t c = static_cast<std::uint8_t>(6 - a - b);
  // cyclic X->Y->Z gives +i
  const bool cyclic = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
  return {cyclic ? kI : -kI, c};
}

using PauliSum = std::map<Letters, cplx>;

inline PauliSum multiply(const PauliSum& lhs, const PauliSum& rhs) {
  PauliSum out;
  for (const auto& [la, ca] : lhs)
    for (const auto& [lb, cb] : rhs) {
      Letters l(la.size());
      cplx c = ca * cb;
      for (std::size_t i = 0; i < la.size(); ++i) {
        auto [ph, r] = pauli_mul(la[i], lb[i]);
        c *= ph;
        l[i] = r;
      }
      out[l] += c;
    }
  return out;
}

}  // namespace detail

// Jordan-Wigner image of a fermionic product.  Letters are keyed by qubit slot
// (layout.first_slot .. first_slot + total - 1).
inline std::vector<PauliString> jordan_wigner(const FermionTerm& t, const ModeLayout& layout,
                                              double drop = 1e-15) {
  const std::size_t n = layout.total();
  if (n == 0) throw std::invalid_argument("jordan_wigner: no modes");
  detail::PauliSum acc;
  acc[detail::Letters(n, 0)] = t.coefficient;
  for (const auto& f : t.factors) {
    const std::size_t m = layout.combined(f);
    const std::size_t pos = n - 1 - m;  // position inside the JW block
    detail::Letters lx(n, 0), ly(n, 0);
    for (std::size_t lower = 0; lower < m; ++lower) {
      lx[n - 1 - lower] = 3;
      ly[n - 1 - lower] = 3;
    }
    lx[pos] = 1;
    ly[pos] = 2;
    // sigma_+ = (X + iY)/2, sigma_- = (X - iY)/2
    detail::PauliSum ladder;
    ladder[lx] = 0.5;
    ladder[ly] = f.dagger ? 0.5 * kI : -0.5 * kI;
    acc = detail::multiply(acc, ladder);
  }
  std::vector<PauliString> out;
  for (const auto& [letters, c] : acc) {
    if (std::abs(c) <= drop) continue;
    PauliString p;
    p.coefficient = c;
    for (std::size_t i = 0; i < n; ++i)
      if (letters[i] != 0) p.letters[layout.first_slot + i] = static_cast<Pauli>(letters[i]);
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<PauliString> jordan_wigner(const FermionTerm& t, std::size_t n_modes) {
  return jordan_wigner(t, ModeLayout{n_modes, 0, 0});
}

inline Matrix pauli_letter_matrix(Pauli p) {
  switch (p) {
    case Pauli::X: return qubit_operator(Op::sigma_x);
    case Pauli::Y: return qubit_operator(Op::sigma_y);
    case Pauli::Z: return qubit_operator(Op::sigma_z);
  }
  throw std::invalid_argument("pauli_letter_matrix");
}

inline OperatorMatrix pauli_to_matrix(const PauliString& p, const HilbertSpec& space) {
  const auto D = Eigen::Index(space.dim());
  if (p.letters.empty()) return {space, p.coefficient * Matrix::Identity(D, D)};
  std::vector<std::size_t> sites;
  Matrix local = Matrix::Ones(1, 1);
  for (const auto& [slot, letter] : p.letters) {
    if (slot >= space.size()) throw std::out_of_range("pauli_to_matrix: slot out of range");
    if (!space.is_qubit(slot))
      throw std::invalid_argument("pauli_to_matrix: slot " + std::to_string(slot) +
                                  " is a boson");
    sites.push_back(slot);
    local = kron(local, pauli_letter_matrix(letter));
  }
  return {space, embed(p.coefficient * local, sites, space)};
}

inline OperatorMatrix pauli_sum_matrix(const std::vector<PauliString>& ps,
                                       const HilbertSpec& space) {
  OperatorMatrix out = OperatorMatrix::zero(space);
  for (const auto& p : ps) out += pauli_to_matrix(p, space);
  return out;
}

inline OperatorMatrix fermion_matrix(const FermionTerm& t, const ModeLayout& layout,
                                     const HilbertSpec& space) {
  return pauli_sum_matrix(jordan_wigner(t, layout), space);
}

inline OperatorMatrix fermion_matrix(const std::vector<FermionTerm>& ts,
                                     const ModeLayout& layout, const HilbertSpec& space) {
  OperatorMatrix out = OperatorMatrix::zero(space);
  for (const auto& t : ts) out += fermion_matrix(t, layout, space);
  return out;
}

// Pauli strings -> Hamiltonian terms (coefficients kept complex)
inline Hamiltonian pauli_hamiltonian(const std::vector<PauliString>& ps, const HilbertSpec& space) {
  Hamiltonian h(space);
  for (const auto& p : ps) {
    std::vector<Factor> fs;
    for (const auto& [slot, letter] : p.letters) {
      const Op op = letter == Pauli::X ? Op::sigma_x : letter == Pauli::Y ? Op::sigma_y : Op::sigma_z;
      fs.push_back({slot, op, 1});
    }
    h.add(p.coefficient, std::move(fs));
  }
  return h;
}

}  // namespace daqsim
