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

#include <gtest/gtest.h>

#include <cstdlib>

#include "test_util.hpp"

using namespace daqsim;
using namespace daqsim::testing;

namespace {

HilbertSpec qubit_boson(std::size_t d) { return HilbertSpec({Subsystem::qubit(), Subsystem::boson(d)}); }

}  // namespace

TEST(HilbertSpec, TensorOrderingSlowestFirst) {
  const HilbertSpec s({Subsystem::qubit(), Subsystem::boson(3), Subsystem::qubit()});
  EXPECT_EQ(s.dim(), 12u);
  EXPECT_EQ(s.stride(0), 6u);
  EXPECT_EQ(s.stride(1), 2u);
  EXPECT_EQ(s.stride(2), 1u);
  EXPECT_EQ(s.index({1, 2, 1}), 11u);
  for (std::size_t r = 0; r < s.dim(); ++r)
    EXPECT_EQ(s.index({s.level(r, 0), s.level(r, 1), s.level(r, 2)}), r);
}

TEST(HilbertSpec, RejectsBadSubsystems) {
  EXPECT_THROW(HilbertSpec({}), std::invalid_argument);
  EXPECT_THROW(Subsystem::boson(1), std::invalid_argument);
  EXPECT_THROW(HilbertSpec({Subsystem{Kind::qubit, 3}}), std::invalid_argument);
}

TEST(HilbertSpec, DimensionCap) {
  EXPECT_NO_THROW(HilbertSpec::qubits(14));
  EXPECT_THROW(HilbertSpec::qubits(15), DimensionCapError);
  EXPECT_THROW(HilbertSpec::qubits(4, 8), DimensionCapError);
  ::setenv("DAQSIM_DIM_CAP", "16", 1);
  EXPECT_EQ(dimension_cap(), 16u);
  EXPECT_THROW(HilbertSpec::qubits(5), DimensionCapError);
  ::setenv("DAQSIM_DIM_CAP", "junk", 1);
  EXPECT_EQ(dimension_cap(), std::size_t{1} << 14);
  ::unsetenv("DAQSIM_DIM_CAP");
}

TEST(Assemble, EmptyIsZero) {
  const auto s = qubit_boson(3);
  EXPECT_EQ(max_abs(assemble(Hamiltonian(s)).matrix()), 0.0);
}

TEST(Assemble, SigmaZConvention) {
  Hamiltonian h(HilbertSpec::qubits(1));
  h.add(1.0, {{0, Op::sigma_z}});
  const Matrix m = assemble(h).matrix();
  EXPECT_EQ(m(kExcited, kExcited), cplx(1.0));
  EXPECT_EQ(m(kGround, kGround), cplx(-1.0));
  EXPECT_EQ(m(0, 1), cplx(0.0));
  // sigma+ = |e><g|
  EXPECT_EQ(qubit_operator(Op::sigma_plus)(kExcited, kGround), cplx(1.0));
  EXPECT_LT(max_abs(qubit_operator(Op::sigma_plus) - (PX() + kI * PY()) / 2.0), 1e-15);
  // cyclic: XY = iZ
  EXPECT_LT(max_abs(PX() * PY() - kI * PZ()), 1e-15);
  EXPECT_LT(max_abs(qubit_operator(Op::sigma_y) - PY()), 1e-15);
}

TEST(Assemble, JaynesCummingsMatchesHandAssembly) {
  const double g = 0.37;
  const auto s = qubit_boson(3);
  Hamiltonian h(s);
  h.add(g, {{1, Op::creation}, {0, Op::sigma_minus}}, true);
  const Matrix got = assemble(h).matrix();
  // <e, n| H |g, n+1> = g sqrt(n+1)
  Matrix want = Matrix::Zero(6, 6);
  for (std::size_t n = 0; n + 1 < 3; ++n) {
    const auto e_n = Eigen::Index(s.index({kExcited, n}));
    const auto g_n1 = Eigen::Index(s.index({kGround, n + 1}));
    want(e_n, g_n1) = g * std::sqrt(double(n + 1));
    want(g_n1, e_n) = g * std::sqrt(double(n + 1));
  }
  EXPECT_LT(max_abs(got - want), 1e-15);
}

TEST(Assemble, RejectsNonHermitianAndBadIndex) {
  Hamiltonian h(HilbertSpec::qubits(2));
  h.add(1.0, {{0, Op::sigma_plus}});
  EXPECT_THROW(assemble(h), NonHermitianError);
  EXPECT_THROW(h.add(1.0, {{2, Op::sigma_z}}), std::out_of_range);
  Hamiltonian wrong_kind(qubit_boson(3));
  wrong_kind.add(1.0, {{1, Op::sigma_z}});
  EXPECT_THROW(assemble(wrong_kind), std::invalid_argument);
}

TEST(Assemble, EmbeddingMatchesKroneckerOracle) {
  const HilbertSpec s({Subsystem::qubit(), Subsystem::boson(3), Subsystem::qubit()});
  Hamiltonian h(s);
  h.add(0.7, {{2, Op::sigma_x}, {0, Op::sigma_z}});
  h.add(-0.2, {{1, Op::number}});
  const Matrix n = annihilation_oracle(3).adjoint() * annihilation_oracle(3);
  const Matrix want = 0.7 * kron_all({PZ(), Matrix::Identity(3, 3), PX()}) - 0.2 * kron_all({I2(), n, I2()});
  EXPECT_LT(max_abs(assemble(h).matrix() - want), 1e-15);
}

TEST(BosonOperator, Ladder) {
  const Matrix a = boson_operator(Op::annihilation, 3);
  Vector two = Vector::Zero(3);
  two(2) = 1;
  Vector want = Vector::Zero(3);
  want(1) = std::sqrt(2.0);
  EXPECT_LT((a * two - want).norm(), 1e-15);
  EXPECT_EQ(max_abs(boson_operator(Op::creation, 5) - boson_operator(Op::annihilation, 5).adjoint()), 0.0);
  EXPECT_THROW(boson_operator(Op::number, 1), std::invalid_argument);
}

TEST(BosonOperator, QuadratureCommutatorConfinedToTopLevel) {
  for (std::size_t d : {2u, 3u, 7u, 16u}) {
    const Matrix x = boson_operator(Op::quad_x, d), p = boson_operator(Op::quad_p, d);
    const Matrix c = commutator(x, p);
    for (std::size_t n = 0; n + 1 < d; ++n)
      for (std::size_t m = 0; m + 1 < d; ++m)
        EXPECT_NEAR(std::abs(c(Eigen::Index(n), Eigen::Index(m)) - (n == m ? kI : cplx(0))), 0.0, 1e-13)
            << "d=" << d << " n=" << n << " m=" << m;
    // the truncation shows up on the last level only
    EXPECT_NEAR(c(Eigen::Index(d - 1), Eigen::Index(d - 1)).imag(), 1.0 - double(d), 1e-12);
  }
}

TEST(EvolveExact, TrivialCases) {
  const auto s = HilbertSpec::qubits(1);
  const QuantumState e = QuantumState::basis(s, {kExcited});
  const QuantumState psi = random_state(s);
  EXPECT_NEAR(state_fidelity(evolve_exact(OperatorMatrix::zero(s), 3.0, psi), psi), 1.0, 1e-15);
  const QuantumState out = evolve_exact(site_operator(s, 0, Op::sigma_z), 0.9, e);
  EXPECT_LT(std::abs(out.amplitudes()(kExcited) - std::exp(-kI * 0.9)), 1e-14);
}

TEST(EvolveExact, ResonantJcFlipsExcitation) {
  const double g = 0.8;
  const auto s = qubit_boson(4);
  Hamiltonian h(s);
  h.add(g, {{1, Op::creation}, {0, Op::sigma_minus}}, true);
  const QuantumState out = evolve_exact(assemble(h), kPi / (2 * g), QuantumState::basis(s, {kExcited, 0}));
  EXPECT_NEAR(state_fidelity(out, QuantumState::basis(s, {kGround, 1})), 1.0, 1e-12);
}

TEST(EvolveExact, PropertyUnitarityCompositionAgainstPade) {
  for (int trial = 0; trial < 20; ++trial) {
    const HilbertSpec s({Subsystem::qubit(), Subsystem::boson(2 + std::size_t(trial % 4))});
    const OperatorMatrix h(s, random_hermitian(Eigen::Index(s.dim())));
    const QuantumState psi = random_state(s);
    const double t1 = uniform(-2, 2), t2 = uniform(-2, 2);
    const QuantumState a = evolve_exact(h, t1, psi);
    EXPECT_NEAR(a.amplitudes().norm(), 1.0, 1e-10);
    EXPECT_LT((evolve_exact(h, -t1, a).amplitudes() - psi.amplitudes()).norm(), 1e-9);
    EXPECT_LT((evolve_exact(h, t1 + t2, psi).amplitudes() - evolve_exact(h, t2, a).amplitudes()).norm(), 1e-9);
    EXPECT_LT(max_abs(propagator(h, t1).matrix() - expm_oracle(h.matrix(), t1)), 1e-11);
  }
}

TEST(EvolveExact, RejectsMismatch) {
  EXPECT_THROW(evolve_exact(OperatorMatrix::zero(HilbertSpec::qubits(2)), 1.0,
                            QuantumState::ground(HilbertSpec::qubits(1))),
               DimensionMismatch);
  EXPECT_THROW(diagonalize(random_matrix(3)), NonHermitianError);
}

TEST(Expectation, BasicValues) {
  const auto s = qubit_boson(5);
  EXPECT_NEAR(expectation(QuantumState::basis(s, {kExcited, 0}), site_operator(s, 0, Op::sigma_z)).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(expectation(QuantumState::ground(s), site_operator(s, 1, Op::number))), 0.0, 1e-15);
  // truncated coherent-like state against a brute-force amplitude sum
  const std::size_t d = 6;
  const auto b = HilbertSpec({Subsystem::boson(d)});
  Vector v(static_cast<Eigen::Index>(d));
  const cplx alpha(0.6, -0.3);
  double fact = 1;
  for (std::size_t n = 0; n < d; ++n) {
    if (n > 0) fact *= double(n);
    v(Eigen::Index(n)) = std::pow(alpha, double(n)) / std::sqrt(fact);
  }
  const QuantumState st = QuantumState::normalized(b, v);
  const Vector& c = st.amplitudes();
  cplx brute = 0;
  for (std::size_t n = 0; n + 1 < d; ++n)
    brute += std::sqrt(double(n + 1)) * (std::conj(c(Eigen::Index(n))) * c(Eigen::Index(n + 1)) +
                                         std::conj(c(Eigen::Index(n + 1))) * c(Eigen::Index(n)));
  brute /= std::sqrt(2.0);
  const cplx got = expectation(st, site_operator(b, 0, Op::quad_x));
  EXPECT_LT(std::abs(got - brute), 1e-14);
  EXPECT_LT(std::abs(got.imag()), 1e-12);
}

TEST(StateFidelity, Properties) {
  const auto s = HilbertSpec::qubits(2);
  const QuantumState a = random_state(s), b = random_state(s);
  EXPECT_NEAR(state_fidelity(a, a), 1.0, 1e-14);
  EXPECT_NEAR(state_fidelity(a, QuantumState(s, std::exp(kI * 0.77) * a.amplitudes())), 1.0, 1e-14);
  EXPECT_DOUBLE_EQ(state_fidelity(a, b), state_fidelity(b, a));
  const auto q = HilbertSpec::qubits(1);
  EXPECT_EQ(state_fidelity(QuantumState::basis(q, {kGround}), QuantumState::basis(q, {kExcited})), 0.0);
  EXPECT_THROW(QuantumState(q, Vector::Ones(2)), std::invalid_argument);
}

TEST(Leakage, TopFockPopulation) {
  const auto s = qubit_boson(4);
  EXPECT_EQ(max_top_fock_population(QuantumState::ground(s)), 0.0);
  Vector v = Vector::Zero(8);
  v(Eigen::Index(s.index({0, 3}))) = 0.6;
  v(Eigen::Index(s.index({1, 0}))) = 0.8;
  EXPECT_NEAR(top_fock_population(QuantumState(s, v), 1), 0.36, 1e-15);
  EXPECT_THROW(top_fock_population(QuantumState(s, v), 0), std::invalid_argument);
}
