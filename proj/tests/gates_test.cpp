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

#include "test_util.hpp"

using namespace daqsim;
using namespace daqsim::testing;

namespace {

// exp(-i theta/2 sigma) from the Pade oracle
Matrix rot(const Matrix& sigma, double theta) { return expm_oracle(sigma, theta / 2); }

Matrix ystring(std::size_t k) {
  Matrix m = PY();
  for (std::size_t i = 1; i < k; ++i) m = kron_oracle(m, PZ());
  return m;
}

}  // namespace

TEST(Gates, PropertyAllGatesUnitary) {
  for (int trial = 0; trial < 25; ++trial) {
    const double a = uniform(-7, 7), b = uniform(-7, 7);
    for (Axis ax : {Axis::x, Axis::y, Axis::z}) EXPECT_LT(unitarity_defect(rotation_matrix(ax, a)), 1e-12);
    EXPECT_LT(unitarity_defect(cz_phi(a)), 1e-12);
    for (std::size_t k = 2; k <= 4; ++k) EXPECT_LT(unitarity_defect(ms_gate(a, b, k)), 1e-12);
  }
  EXPECT_LT(unitarity_defect(qubit_flip_matrix()), 1e-15);
  EXPECT_LT(unitarity_defect(sz2_gate(4)), 1e-15);
}

TEST(Gates, RotationMatchesExponential) {
  for (double th : {0.3, -1.7, kPi})
    for (auto [ax, m] : {std::pair{Axis::x, PX()}, {Axis::y, PY()}, {Axis::z, PZ()}})
      EXPECT_LT(max_abs(rotation_matrix(ax, th) - rot(m, th)), 1e-14);
  EXPECT_LT(max_abs(qubit_flip_matrix() - rot(PX(), kPi)), 1e-14);
}

TEST(CzPhi, DisplayedMatrixAndZZForm) {
  EXPECT_LT(max_abs(cz_phi(0.0) - Matrix::Identity(4, 4)), 1e-16);
  Vector d(4);
  d << 1, -1, -1, 1;
  EXPECT_LT(max_abs(cz_phi(kPi) - Matrix(d.asDiagonal())), 1e-15);
  const Matrix zz = kron_oracle(PZ(), PZ());
  for (int trial = 0; trial < 20; ++trial) {
    const double phi = uniform(-kPi, kPi);
    // the global phase that makes the two agree is e^{+i phi/2}
    EXPECT_LT(max_abs(cz_phi(phi) - std::exp(kI * phi / 2.0) * expm_oracle(zz, phi / 2)), 1e-13);
    EXPECT_LT(phase_aligned_distance(cz_phi(phi), expm_oracle(zz, phi / 2)), 1e-13);
  }
}

TEST(MsGate, MatchesPadeAndEntangles) {
  EXPECT_LT(max_abs(ms_gate(0.0, 0.4, 3) - Matrix::Identity(8, 8)), 1e-14);
  for (double th : {0.4, kPi / 2})
    for (double ph : {0.0, 0.9}) {
      const Matrix sx = kron_oracle(PX(), I2()) + kron_oracle(I2(), PX());
      const Matrix sy = kron_oracle(PY(), I2()) + kron_oracle(I2(), PY());
      const Matrix m = std::cos(ph) * sx + std::sin(ph) * sy;
      EXPECT_LT(max_abs(ms_gate(th, ph, 2) - expm_oracle(m * m, th / 4)), 1e-13);
    }
  // k=2, theta = pi/2 on |gg>: Schmidt coefficients 1/sqrt2, 1/sqrt2
  const Vector out = ms_gate(kPi / 2, 0.0, 2).col(0);
  Matrix coeffs(2, 2);
  coeffs << out(0), out(1), out(2), out(3);
  const auto sv = Eigen::JacobiSVD<Matrix>(coeffs).singularValues();
  EXPECT_NEAR(sv(0), 1 / std::sqrt(2.0), 1e-13);
  EXPECT_NEAR(sv(1), 1 / std::sqrt(2.0), 1e-13);
  EXPECT_THROW(ms_gate(1.0, 0.0, 1), std::invalid_argument);
  EXPECT_LT(max_abs(sz2_gate(3) * sz2_gate(3).adjoint() - Matrix::Identity(8, 8)), 1e-15);
}

TEST(MsSandwich, ReproducesPauliStringExponential) {
  for (std::size_t k = 2; k <= 5; ++k) {
    EXPECT_LT(max_abs(ms_sandwich(0.0, k).matrix() - Matrix::Identity(Eigen::Index(1) << k, Eigen::Index(1) << k)),
              1e-13);
    for (double phi : {0.1, kPi / 4, 1.3}) {
      const Matrix target = expm(kI * phi * ystring(k));
      EXPECT_LT(spectral_norm(ms_sandwich(phi, k).matrix() - target), 1e-9) << "k=" << k << " phi=" << phi;
    }
  }
}

TEST(MsSandwich, SignTableViolationIsDetected) {
  for (std::size_t k = 2; k <= 5; ++k) {
    const double phi = 0.7;
    const Matrix target = expm(kI * phi * ystring(k));
    // flip the sign by hand: the sandwich then produces exp(-i phi ...)
    Circuit c = ms_sandwich_circuit(-phi, k);
    EXPECT_GT(spectral_norm(circuit_unitary(c).matrix() - target), 0.5) << k;
    // the literal printed table disagrees exactly for even k
    const double printed = spectral_norm(ms_sandwich(phi, k, SandwichSignTable::printed).matrix() - target);
    if (k % 2 == 0) EXPECT_GT(printed, 0.5) << k;
    else EXPECT_LT(printed, 1e-9) << k;
  }
  EXPECT_THROW(ms_sandwich(0.1, 1), std::invalid_argument);
}

TEST(Circuit, EmptyAndInversePair) {
  const auto s = HilbertSpec::qubits(2);
  EXPECT_LT(max_abs(circuit_unitary(Circuit(s)).matrix() - Matrix::Identity(4, 4)), 1e-16);
  Circuit c(s);
  c.add(Rotation{Axis::x, kPi / 2, {1}, false});
  c.add(Rotation{Axis::x, -kPi / 2, {1}, false});
  EXPECT_LT(max_abs(circuit_unitary(c).matrix() - Matrix::Identity(4, 4)), 1e-13);
}

TEST(Circuit, EarliestGateActsFirst) {
  const auto s = HilbertSpec::qubits(2);
  Circuit c(s);
  c.add(Rotation{Axis::x, 0.4, {0}, false});
  c.add(CZPhi{0.9, 0, 1});
  c.add(Rotation{Axis::y, -1.1, {0, 1}, true});
  const Matrix want = kron_oracle(rot(PY(), -1.1), rot(PY(), -1.1)) * cz_phi(0.9) * kron_oracle(rot(PX(), 0.4), I2());
  EXPECT_LT(max_abs(circuit_unitary(c).matrix() - want), 1e-13);
  const QuantumState psi = random_state(s);
  EXPECT_LT((apply(c, psi).amplitudes() - want * psi.amplitudes()).norm(), 1e-13);
}

TEST(Circuit, Validation) {
  const HilbertSpec s({Subsystem::qubit(), Subsystem::boson(3)});
  Circuit c(s);
  EXPECT_THROW(c.add(Rotation{Axis::x, 1.0, {2}, false}), std::out_of_range);
  EXPECT_THROW(c.add(Rotation{Axis::x, 1.0, {1}, false}), std::invalid_argument);
  EXPECT_THROW(c.add(CZPhi{1.0, 0, 0}), std::invalid_argument);
  EXPECT_THROW(c.add(CustomUnitary{2.0 * Matrix::Identity(2, 2), {0}, "bad"}), std::invalid_argument);
  EXPECT_THROW(c.add(CustomUnitary{Matrix::Identity(2, 2), {1}, "dim"}), DimensionMismatch);
  EXPECT_THROW(c.add(AnalogBlock{Hamiltonian(HilbertSpec::qubits(1)), 1.0, "x"}), DimensionMismatch);
  EXPECT_NO_THROW(c.add(CustomUnitary{boson_operator(Op::identity, 3), {1}, "ok"}));
}

TEST(Conjugation, HeisenbergBlocks) {
  const double J = 0.8;
  const Matrix xx = kron_oracle(PX(), PX()), yy = kron_oracle(PY(), PY()), zz = kron_oracle(PZ(), PZ());
  const Matrix hxy = J / 2 * (xx + yy);
  const Matrix rx = kron_oracle(rot(PX(), kPi / 2), rot(PX(), kPi / 2));  // exp(-i pi/4 (X1 + X2))
  const Matrix ry = kron_oracle(rot(PY(), kPi / 2), rot(PY(), kPi / 2));
  EXPECT_LT(max_abs(rx * hxy * rx.adjoint() - J / 2 * (xx + zz)), 1e-12);
  EXPECT_LT(max_abs(ry * hxy * ry.adjoint() - J / 2 * (yy + zz)), 1e-12);
  // Ising sign flip on qubit 1 only
  const Matrix r1 = kron_oracle(rot(PX(), kPi), I2());
  EXPECT_LT(max_abs(r1 * (J * (xx + yy)) * r1.adjoint() - J * (xx - yy)), 1e-12);
}

TEST(Conjugation, HubbardRotationIdentities) {
  const Matrix zz = kron_oracle(PZ(), PZ());
  const Matrix ryp = kron_oracle(rot(PY(), kPi / 2), rot(PY(), kPi / 2));
  const Matrix rxm = kron_oracle(rot(PX(), -kPi / 2), rot(PX(), -kPi / 2));
  EXPECT_LT(max_abs(ryp * zz * ryp.adjoint() - kron_oracle(PX(), PX())), 1e-13);
  EXPECT_LT(max_abs(rxm * zz * rxm.adjoint() - kron_oracle(PY(), PY())), 1e-13);
}
