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

// Dense states and operators on ordered qubit (x) truncated-boson spaces.
//
// Conventions used everywhere in the library:
//   hbar = 1, frequencies are angular.
//   qubit level 0 = |g>, level 1 = |e>;  sigma_z = |e><e| - |g><g|,
//   sigma_+ = |e><g|,  sigma_- = |g><e|.
//   subsystem 0 is the slowest-varying tensor index.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace daqsim {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

inline constexpr std::size_t kGround = 0;
inline constexpr std::size_t kExcited = 1;

// population threshold for the top Fock level
inline constexpr double kLeakageThreshold = 1e-4;
inline constexpr std::size_t kDefaultFock = 16;

struct DimensionCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonHermitianError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// DAQSIM_DIM_CAP overrides the default cap of 2^14.
inline std::size_t dimension_cap() {
  constexpr std::size_t fallback = std::size_t{1} << 14;
  const char* env = std::getenv("DAQSIM_DIM_CAP");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return fallback;
  return static_cast<std::size_t>(v);
}

enum class Kind { qubit, boson };

struct Subsystem {
  Kind kind = Kind::qubit;
  std::size_t dim = 2;

  static Subsystem qubit() { return {Kind::qubit, 2}; }
  static Subsystem boson(std::size_t cutoff) {
    if (cutoff < 2) throw std::invalid_argument("boson cutoff must be >= 2");
    return {Kind::boson, cutoff};
  }
  bool operator==(const Subsystem&) const = default;
};

class HilbertSpec {
 public:
  explicit HilbertSpec(std::vector<Subsystem> subsystems,
                       std::size_t cap = dimension_cap())
      : subs_(std::move(subsystems)) {
    if (subs_.empty()) throw std::invalid_argument("HilbertSpec: no subsystems");
    dim_ = 1;
    for (const auto& s : subs_) {
      if (s.kind == Kind::qubit && s.dim != 2)
        throw std::invalid_argument("HilbertSpec: qubit must have dim 2");
      if (s.dim < 2) throw std::invalid_argument("HilbertSpec: dim < 2");
      if (dim_ > cap / s.dim)
        throw DimensionCapError("HilbertSpec: total dimension exceeds cap " +
                                std::to_string(cap));
      dim_ *= s.dim;
    }
    strides_.assign(subs_.size(), 1);
    for (std::size_t i = subs_.size() - 1; i > 0; --i)
      strides_[i - 1] = strides_[i] * subs_[i].dim;
  }

  static HilbertSpec qubits(std::size_t n, std::size_t cap = dimension_cap()) {
    return HilbertSpec(std::vector<Subsystem>(n, Subsystem::qubit()), cap);
  }

  std::size_t size() const { return subs_.size(); }
  std::size_t dim() const { return dim_; }
  const Subsystem& operator[](std::size_t i) const { return subs_.at(i); }
  const std::vector<Subsystem>& subsystems() const { return subs_; }
  std::size_t stride(std::size_t i) const { return strides_.at(i); }
  bool is_qubit(std::size_t i) const { return subs_.at(i).kind == Kind::qubit; }
  bool is_boson(std::size_t i) const { return subs_.at(i).kind == Kind::boson; }

  std::size_t level(std::size_t index, std::size_t site) const {
    return (index / strides_[site]) % subs_[site].dim;
  }
  std::size_t index(const std::vector<std::size_t>& levels) const {
    if (levels.size() != subs_.size())
      throw std::invalid_argument("HilbertSpec::index: wrong number of levels");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      if (levels[i] >= subs_[i].dim)
        throw std::out_of_range("HilbertSpec::index: level out of range");
      idx += levels[i] * strides_[i];
    }
    return idx;
  }

  bool operator==(const HilbertSpec& o) const { return subs_ == o.subs_; }

 private:
  std::vector<Subsystem> subs_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 1;
};

// ---------------------------------------------------------------------------
// local operators

enum class Op {
  identity,
  sigma_x,
  sigma_y,
  sigma_z,
  sigma_plus,
  sigma_minus,
  annihilation,
  creation,
  number,
  quad_x,
  quad_p,
};

inline bool is_qubit_op(Op op) {
  return op == Op::sigma_x || op == Op::sigma_y || op == Op::sigma_z ||
         op == Op::sigma_plus || op == Op::sigma_minus;
}

inline Matrix qubit_operator(Op op) {
  Matrix m = Matrix::Zero(2, 2);
  switch (op) {
    case Op::identity: m.setIdentity(); break;
    case Op::sigma_x: m(0, 1) = 1; m(1, 0) = 1; break;
    // sigma_y = i|g><e| - i|e><g|, so that sigma_x sigma_y = i sigma_z
    case Op::sigma_y: m(0, 1) = kI; m(1, 0) = -kI; break;
    case Op::sigma_z: m(0, 0) = -1; m(1, 1) = 1; break;
    case Op::sigma_plus: m(1, 0) = 1; break;
    case Op::sigma_minus: m(0, 1) = 1; break;
    default: throw std::invalid_argument("qubit_operator: not a qubit operator");
  }
  return m;
}

// a|n> = sqrt(n)|n-1> on the d-level truncation
inline Matrix boson_operator(Op op, std::size_t d) {
  if (d < 2) throw std::invalid_argument("boson_operator: cutoff must be >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(double(k));
  switch (op) {
    case Op::identity: return Matrix::Identity(n, n);
    case Op::annihilation: return a;
    case Op::creation: return a.adjoint();
    case Op::number: return a.adjoint() * a;
    case Op::quad_x: return (a + a.adjoint()) / std::sqrt(2.0);
    case Op::quad_p: return -kI * (a - a.adjoint()) / std::sqrt(2.0);
    default: throw std::invalid_argument("boson_operator: not a boson operator");
  }
}

inline Matrix local_operator(const Subsystem& s, Op op, int power = 1) {
  if (power < 0) throw std::invalid_argument("local_operator: negative power");
  Matrix m;
  if (op == Op::identity) {
    m = Matrix::Identity(Eigen::Index(s.dim), Eigen::Index(s.dim));
  } else if (is_qubit_op(op)) {
    if (s.kind != Kind::qubit)
      throw std::invalid_argument("local_operator: Pauli operator on a boson");
    m = qubit_operator(op);
  } else {
    if (s.kind != Kind::boson)
      throw std::invalid_argument("local_operator: ladder operator on a qubit");
    m = boson_operator(op, s.dim);
  }
  Matrix out = Matrix::Identity(m.rows(), m.cols());
  for (int p = 0; p < power; ++p) out = out * m;
  return out;
}

struct Factor {
  std::size_t site = 0;
  Op op = Op::identity;
  int power = 1;
};

// ---------------------------------------------------------------------------
// tensor embedding

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace detail {

// Index bookkeeping for an operator acting on `sites` (first site slowest).
struct LocalIndex {
  std::vector<std::size_t> loc;   // full index -> local index
  std::vector<std::size_t> base;  // full index with target levels zeroed
  std::vector<std::size_t> off;   // local index -> full-index offset
  std::size_t local_dim = 1;
};

inline LocalIndex local_index(const std::vector<std::size_t>& sites,
                              const HilbertSpec& space) {
  LocalIndex li;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (sites[k] >= space.size())
      throw std::out_of_range("site index " + std::to_string(sites[k]) +
                              " out of range");
    for (std::size_t j = 0; j < k; ++j)
      if (sites[j] == sites[k])
        throw std::invalid_argument("repeated site in local operator");
    li.local_dim *= space[sites[k]].dim;
  }
  const std::size_t D = space.dim();
  li.loc.resize(D);
  li.base.resize(D);
  for (std::size_t r = 0; r < D; ++r) {
    std::size_t l = 0, b = r;
    for (auto s : sites) {
      const std::size_t lev = space.level(r, s);
      l = l * space[s].dim + lev;
      b -= lev * space.stride(s);
    }
    li.loc[r] = l;
    li.base[r] = b;
  }
  li.off.resize(li.local_dim);
  for (std::size_t l = 0; l < li.local_dim; ++l) {
    std::size_t rem = l, o = 0;
    for (std::size_t k = sites.size(); k-- > 0;) {
      const std::size_t d = space[sites[k]].dim;
      o += (rem % d) * space.stride(sites[k]);
      rem /= d;
    }
    li.off[l] = o;
  }
  return li;
}

}  // namespace detail

// Embed `local` (acting on `sites`, first site slowest) into the full space.
inline Matrix embed(const Matrix& local, const std::vector<std::size_t>& sites,
                    const HilbertSpec& space) {
  const auto li = detail::local_index(sites, space);
  if (std::size_t(local.rows()) != li.local_dim || local.rows() != local.cols())
    throw DimensionMismatch("embed: local operator has wrong dimension");
  const std::size_t D = space.dim();
  Matrix out = Matrix::Zero(Eigen::Index(D), Eigen::Index(D));
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t c = 0; c < li.local_dim; ++c) {
      const cplx v = local(Eigen::Index(li.loc[r]), Eigen::Index(c));
      if (v != cplx(0)) out(Eigen::Index(r), Eigen::Index(li.base[r] + li.off[c])) += v;
    }
  return out;
}

// psi <- (local on sites) psi without forming the full matrix
inline Vector apply_local(const Matrix& local, const std::vector<std::size_t>& sites,
                          const HilbertSpec& space, const Vector& psi) {
  const auto li = detail::local_index(sites, space);
  if (std::size_t(local.rows()) != li.local_dim || local.rows() != local.cols())
    throw DimensionMismatch("apply_local: local operator has wrong dimension");
  if (std::size_t(psi.size()) != space.dim())
    throw DimensionMismatch("apply_local: state has wrong dimension");
  Vector out = Vector::Zero(psi.size());
  for (std::size_t r = 0; r < space.dim(); ++r) {
    cplx acc = 0;
    for (std::size_t c = 0; c < li.local_dim; ++c)
      acc += local(Eigen::Index(li.loc[r]), Eigen::Index(c)) *
             psi(Eigen::Index(li.base[r] + li.off[c]));
    out(Eigen::Index(r)) = acc;
  }
  return out;
}

// ---------------------------------------------------------------------------
// matrix helpers

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// relative Hermiticity defect: max|M - M^dag| / max(1, max|M|)
inline double hermiticity_defect(const Matrix& m) {
  return max_abs(m - m.adjoint()) / std::max(1.0, max_abs(m));
}

inline double unitarity_defect(const Matrix& u) {
  return spectral_norm(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

// || a - e^{i theta} b || with theta aligning the traces
inline double phase_aligned_distance(const Matrix& a, const Matrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : cplx(1);
  return spectral_norm(a - phase * b);
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }
inline Matrix anticommutator(const Matrix& a, const Matrix& b) { return a * b + b * a; }

// ---------------------------------------------------------------------------
// OperatorMatrix / QuantumState

class OperatorMatrix {
 public:
  OperatorMatrix(HilbertSpec space, Matrix m) : space_(std::move(space)), m_(std::move(m)) {
    const auto D = Eigen::Index(space_.dim());
    if (m_.rows() != D || m_.cols() != D)
      throw DimensionMismatch("OperatorMatrix: matrix dimension " +
                              std::to_string(m_.rows()) + " != space dimension " +
                              std::to_string(D));
  }
  static OperatorMatrix identity(const HilbertSpec& s) {
    return {s, Matrix::Identity(Eigen::Index(s.dim()), Eigen::Index(s.dim()))};
  }
  static OperatorMatrix zero(const HilbertSpec& s) {
    return {s, Matrix::Zero(Eigen::Index(s.dim()), Eigen::Index(s.dim()))};
  }

  const HilbertSpec& space() const { return space_; }
  const Matrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  OperatorMatrix adjoint() const { return {space_, m_.adjoint()}; }
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect(m_) <= tol; }

  OperatorMatrix& operator+=(const OperatorMatrix& o) { check(o); m_ += o.m_; return *this; }
  OperatorMatrix& operator-=(const OperatorMatrix& o) { check(o); m_ -= o.m_; return *this; }
  OperatorMatrix& operator*=(cplx c) { m_ *= c; return *this; }

  friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
  friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
  friend OperatorMatrix operator*(cplx c, OperatorMatrix a) { return a *= c; }
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    a.check(b);
    return {a.space_, a.m_ * b.m_};
  }

 private:
  void check(const OperatorMatrix& o) const {
    if (!(o.space_ == space_)) throw DimensionMismatch("OperatorMatrix: space mismatch");
  }
  HilbertSpec space_;
  Matrix m_;
};

class QuantumState {
 public:
  static constexpr double kNormTolerance = 1e-10;

  QuantumState(HilbertSpec space, Vector amplitudes)
      : space_(std::move(space)), v_(std::move(amplitudes)) {
    if (std::size_t(v_.size()) != space_.dim())
      throw DimensionMismatch("QuantumState: amplitude count != space dimension");
    if (std::abs(v_.norm() - 1.0) > kNormTolerance)
      throw std::invalid_argument("QuantumState: state is not normalized");
  }

  static QuantumState normalized(HilbertSpec space, Vector v) {
    const double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("QuantumState: zero vector");
    return {std::move(space), v / n};
  }
  static QuantumState basis(HilbertSpec space, const std::vector<std::size_t>& levels) {
    Vector v = Vector::Zero(Eigen::Index(space.dim()));
    v(Eigen::Index(space.index(levels))) = 1.0;
    return {std::move(space), std::move(v)};
  }
  // all subsystems in level 0: |g...g, 0...0>
  static QuantumState ground(HilbertSpec space) {
    std::vector<std::size_t> lv(space.size(), 0);
    return basis(std::move(space), lv);
  }
  static QuantumState product(HilbertSpec space, const std::vector<Vector>& locals) {
    if (locals.size() != space.size())
      throw DimensionMismatch("QuantumState::product: wrong number of factors");
    Matrix v = Matrix::Ones(1, 1);
    for (std::size_t i = 0; i < locals.size(); ++i) {
      if (std::size_t(locals[i].size()) != space[i].dim)
        throw DimensionMismatch("QuantumState::product: factor dimension");
      v = kron(v, Matrix(locals[i]));
    }
    return normalized(std::move(space), Vector(v.col(0)));
  }

  const HilbertSpec& space() const { return space_; }
  const Vector& amplitudes() const { return v_; }

 private:
  HilbertSpec space_;
  Vector v_;
};

// ---------------------------------------------------------------------------
// Hamiltonians as term lists

// coefficient * prod(factors) [+ h.c.]; factors on the same site multiply in order
struct Term {
  cplx coefficient = 1.0;
  std::vector<Factor> factors;
  bool add_hermitian_conjugate = false;
};

class Hamiltonian {
 public:
  explicit Hamiltonian(HilbertSpec space) : space_(std::move(space)) {}

  Hamiltonian& add(cplx coefficient, std::vector<Factor> factors, bool hc = false) {
    for (const auto& f : factors)
      if (f.site >= space_.size())
        throw std::out_of_range("Hamiltonian::add: site " + std::to_string(f.site) +
                                " out of range");
    terms_.push_back({coefficient, std::move(factors), hc});
    return *this;
  }
  Hamiltonian& add(const Hamiltonian& other, double scale = 1.0) {
    if (!(other.space_ == space_)) throw DimensionMismatch("Hamiltonian::add: space mismatch");
    for (auto t : other.terms_) {
      t.coefficient *= scale;
      terms_.push_back(std::move(t));
    }
    return *this;
  }

  const HilbertSpec& space() const { return space_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  HilbertSpec space_;
  std::vector<Term> terms_;
};

// matrix of a single term (without the h.c. part)
inline Matrix term_matrix(const Term& t, const HilbertSpec& space) {
  std::vector<std::size_t> sites;
  for (const auto& f : t.factors) {
    if (f.site >= space.size())
      throw std::out_of_range("term_matrix: site index out of range");
    if (std::find(sites.begin(), sites.end(), f.site) == sites.end()) sites.push_back(f.site);
  }
  std::sort(sites.begin(), sites.end());
  const auto D = Eigen::Index(space.dim());
  if (sites.empty()) return t.coefficient * Matrix::Identity(D, D);
  Matrix local = Matrix::Ones(1, 1);
  for (auto s : sites) {
    const auto& sub = space[s];
    Matrix m = Matrix::Identity(Eigen::Index(sub.dim), Eigen::Index(sub.dim));
    for (const auto& f : t.factors)
      if (f.site == s) m = m * local_operator(sub, f.op, f.power);
    local = kron(local, m);
  }
  return embed(t.coefficient * local, sites, space);
}

// Sum of the terms, no Hermiticity check.
inline Matrix assemble_raw(const Hamiltonian& h) {
  const auto D = Eigen::Index(h.space().dim());
  Matrix out = Matrix::Zero(D, D);
  for (const auto& t : h.terms()) {
    Matrix m = term_matrix(t, h.space());
    out += m;
    if (t.add_hermitian_conjugate) out += m.adjoint();
  }
  return out;
}

inline OperatorMatrix assemble(const Hamiltonian& h, double tol = 1e-12) {
  Matrix m = assemble_raw(h);
  const double defect = hermiticity_defect(m);
  if (defect > tol)
    throw NonHermitianError("assemble: Hamiltonian is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  return {h.space(), std::move(m)};
}

// Single local operator on one site, embedded.
inline OperatorMatrix site_operator(const HilbertSpec& space, std::size_t site, Op op,
                                    int power = 1) {
  return {space, embed(local_operator(space[site], op, power), {site}, space)};
}

// ---------------------------------------------------------------------------
// exact evolution

struct Spectrum {
  RealVector values;
  Matrix vectors;

  Matrix propagator(double t) const {
    Vector phases(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i)
      phases(i) = std::exp(cplx(0.0, -values(i) * t));
    return vectors * phases.asDiagonal() * vectors.adjoint();
  }
  Vector evolve(double t, const Vector& psi) const {
    Vector c = vectors.adjoint() * psi;
    for (Eigen::Index i = 0; i < values.size(); ++i)
      c(i) *= std::exp(cplx(0.0, -values(i) * t));
    return vectors * c;
  }
};

inline Spectrum diagonalize(const Matrix& h, double tol = 1e-12) {
  const double defect = hermiticity_defect(h);
  if (defect > tol)
    throw NonHermitianError("diagonalize: matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  // symmetrize so the solver sees exactly Hermitian data
  Matrix hs = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
  if (es.info() != Eigen::Success) throw std::runtime_error("diagonalize: eigensolver failed");
  return {es.eigenvalues(), es.eigenvectors()};
}

inline Spectrum diagonalize(const OperatorMatrix& h, double tol = 1e-12) {
  return diagonalize(h.matrix(), tol);
}

inline OperatorMatrix propagator(const OperatorMatrix& h, double t) {
  return {h.space(), diagonalize(h).propagator(t)};
}

inline QuantumState evolve_exact(const OperatorMatrix& h, double t, const QuantumState& s) {
  if (!(h.space() == s.space())) throw DimensionMismatch("evolve_exact: space mismatch");
  return {s.space(), diagonalize(h).evolve(t, s.amplitudes())};
}

inline cplx expectation(const QuantumState& s, const OperatorMatrix& o) {
  if (!(o.space() == s.space())) throw DimensionMismatch("expectation: space mismatch");
  return s.amplitudes().dot(o.matrix() * s.amplitudes());
}

inline double state_fidelity(const QuantumState& a, const QuantumState& b) {
  if (!(a.space() == b.space())) throw DimensionMismatch("state_fidelity: space mismatch");
  const double f = std::norm(a.amplitudes().dot(b.amplitudes()));
  return std::clamp(f, 0.0, 1.0);
}

// population of the top Fock level of boson `site`
inline double top_fock_population(const QuantumState& s, std::size_t site) {
  const auto& space = s.space();
  if (!space.is_boson(site)) throw std::invalid_argument("top_fock_population: not a boson");
  const std::size_t top = space[site].dim - 1;
  double p = 0.0;
  for (std::size_t r = 0; r < space.dim(); ++r)
    if (space.level(r, site) == top) p += std::norm(s.amplitudes()(Eigen::Index(r)));
  return p;
}

// max over boson subsystems; 0 if there are none
inline double max_top_fock_population(const QuantumState& s) {
  double p = 0.0;
  for (std::size_t i = 0; i < s.space().size(); ++i)
    if (s.space().is_boson(i)) p = std::max(p, top_fock_population(s, i));
  return p;
}

}  // namespace daqsim
