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

// Driven Hamiltonians in component form, rotating frames and the RWA filter.
//
// H(t) = sum_c op_c e^{i nu_c t}  +  sum_m op_m f_m(t)
//
// Harmonic components carry a definite frequency, which is what the frame
// transformation shifts and what the RWA filter inspects.  Modulated
// components take an arbitrary envelope and are only integrated.
#pragma once

#include "daqsim/hilbert.hpp"

#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace daqsim {

// amplitude * (e^{i(w t + phase)} O + h.c.)
struct DriveTerm {
  std::vector<Factor> factors;
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
};

struct HarmonicComponent {
  Matrix op;
  double frequency = 0.0;
};

struct ModulatedComponent {
  Matrix op;
  std::function<cplx(double)> envelope;
};

class TimeDependentHamiltonian {
 public:
  explicit TimeDependentHamiltonian(HilbertSpec space) : space_(std::move(space)) {}

  TimeDependentHamiltonian(const Hamiltonian& static_part, const std::vector<DriveTerm>& drives = {})
      : space_(static_part.space()) {
    if (!static_part.empty()) add_harmonic(assemble(static_part).matrix(), 0.0);
    for (const auto& d : drives) add_drive(d);
  }

  TimeDependentHamiltonian& add_harmonic(Matrix op, double frequency) {
    check(op);
    harmonics_.push_back({std::move(op), frequency});
    return *this;
  }
  TimeDependentHamiltonian& add_modulated(Matrix op, std::function<cplx(double)> envelope) {
    check(op);
    modulated_.push_back({std::move(op), std::move(envelope)});
    return *this;
  }
  TimeDependentHamiltonian& add_drive(const DriveTerm& d) {
    Term t{1.0, d.factors, false};
    const Matrix o = term_matrix(t, space_);
    const cplx c = d.amplitude * std::exp(kI * d.phase);
    add_harmonic(c * o, d.frequency);
    add_harmonic(std::conj(c) * o.adjoint(), -d.frequency);
    return *this;
  }

  const HilbertSpec& space() const { return space_; }
  const std::vector<HarmonicComponent>& harmonics() const { return harmonics_; }
  const std::vector<ModulatedComponent>& modulated() const { return modulated_; }

  Matrix at(double t) const {
    const auto D = Eigen::Index(space_.dim());
    Matrix h = Matrix::Zero(D, D);
    for (const auto& c : harmonics_)
      h += (c.frequency == 0.0 ? cplx(1) : std::exp(kI * c.frequency * t)) * c.op;
    for (const auto& m : modulated_) h += m.envelope(t) * m.op;
    return h;
  }

  // H(t) with a Hermiticity check
  OperatorMatrix sample(double t, double tol = 1e-10) const {
    Matrix h = at(t);
    const double defect = hermiticity_defect(h);
    if (defect > tol)
      throw NonHermitianError("TimeDependentHamiltonian: H(" + std::to_string(t) +
                              ") is not Hermitian (defect " + std::to_string(defect) + ")");
    return {space_, std::move(h)};
  }

  bool is_static() const {
    if (!modulated_.empty()) return false;
    for (const auto& c : harmonics_)
      if (c.frequency != 0.0) return false;
    return true;
  }

  // sum of the zero-frequency harmonic components
  OperatorMatrix static_operator() const {
    const auto D = Eigen::Index(space_.dim());
    Matrix h = Matrix::Zero(D, D);
    for (const auto& c : harmonics_)
      if (c.frequency == 0.0) h += c.op;
    return {space_, std::move(h)};
  }

  double max_frequency() const {
    double w = 0.0;
    for (const auto& c : harmonics_) w = std::max(w, std::abs(c.frequency));
    return w;
  }

  // sorted distinct frequencies of the harmonic components
  std::vector<double> frequencies() const {
    std::vector<double> f;
    for (const auto& c : harmonics_) f.push_back(c.frequency);
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
  }

  // Merge harmonic components whose frequencies agree within
  // rel_tol * max(1, |nu|max) and drop vanishing operators.
  TimeDependentHamiltonian& simplify(double rel_tol = 1e-9, double drop = 1e-12) {
    const double scale = std::max(1.0, max_frequency());
    std::vector<HarmonicComponent> sorted = harmonics_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.frequency < b.frequency; });
    std::vector<HarmonicComponent> merged;
    std::vector<std::size_t> counts;
    for (auto& c : sorted) {
      if (!merged.empty() && std::abs(c.frequency - merged.back().frequency / double(counts.back())) <=
                                 rel_tol * scale) {
        merged.back().op += c.op;
        merged.back().frequency += c.frequency;
        ++counts.back();
      } else {
        merged.push_back(c);
        counts.push_back(1);
      }
    }
    harmonics_.clear();
    double op_scale = 0.0;
    for (const auto& c : merged) op_scale = std::max(op_scale, max_abs(c.op));
    for (std::size_t i = 0; i < merged.size(); ++i) {
      double f = merged[i].frequency / double(counts[i]);
      if (std::abs(f) <= rel_tol * scale) f = 0.0;
      if (max_abs(merged[i].op) <= drop * std::max(1.0, op_scale)) continue;
      harmonics_.push_back({std::move(merged[i].op), f});
    }
    return *this;
  }

 private:
  void check(const Matrix& op) const {
    const auto D = Eigen::Index(space_.dim());
    if (op.rows() != D || op.cols() != D)
      throw DimensionMismatch("TimeDependentHamiltonian: operator dimension mismatch");
  }

  HilbertSpec space_;
  std::vector<HarmonicComponent> harmonics_;
  std::vector<ModulatedComponent> modulated_;
};

// U(t) = e^{i G t}
class RotatingFrame {
 public:
  explicit RotatingFrame(OperatorMatrix generator) : g_(std::move(generator)) {
    if (!g_.is_hermitian())
      throw NonHermitianError("RotatingFrame: generator is not Hermitian");
    spectrum_ = diagonalize(g_);
  }
  const OperatorMatrix& generator() const { return g_; }
  const Spectrum& spectrum() const { return spectrum_; }

  // e^{i G t} psi
  Vector apply(double t, const Vector& psi) const { return spectrum_.evolve(-t, psi); }

 private:
  OperatorMatrix g_;
  Spectrum spectrum_;
};

namespace detail {

// Distinct values of d_i - d_j, clustered within tol; returns cluster index per pair.
struct GapTable {
  std::vector<double> gaps;
  std::vector<std::size_t> index;  // row-major i*D + j
};

inline GapTable gap_table(const RealVector& d, double tol) {
  const auto D = std::size_t(d.size());
  std::vector<double> all;
  all.reserve(D * D);
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) all.push_back(d(Eigen::Index(i)) - d(Eigen::Index(j)));
  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  GapTable gt;
  std::vector<double> lo;
  std::size_t start = 0;
  for (std::size_t k = 1; k <= sorted.size(); ++k) {
    if (k == sorted.size() || sorted[k] - sorted[k - 1] > tol) {
      double s = 0;
      for (std::size_t q = start; q < k; ++q) s += sorted[q];
      double rep = s / double(k - start);
      if (std::abs(rep) <= tol) rep = 0.0;
      gt.gaps.push_back(rep);
      lo.push_back(sorted[start]);
      start = k;
    }
  }
  gt.index.resize(all.size());
  for (std::size_t p = 0; p < all.size(); ++p) {
    auto it = std::upper_bound(lo.begin(), lo.end(), all[p]);
    gt.index[p] = std::size_t(it - lo.begin()) - 1;
  }
  return gt;
}

}  // namespace detail

// H_I(t) = e^{iGt} (H(t) - G) e^{-iGt}, exact.  Each operator is split into
// pieces with definite frequency shift under G (its "ladder weights").
inline TimeDependentHamiltonian into_frame(const TimeDependentHamiltonian& h,
                                           const RotatingFrame& frame) {
  if (!(frame.generator().space() == h.space()))
    throw DimensionMismatch("into_frame: space mismatch");
  const Spectrum& sp = frame.spectrum();
  const Matrix& V = sp.vectors;
  const double scale = std::max(1.0, sp.values.cwiseAbs().maxCoeff());
  const auto gt = detail::gap_table(sp.values, 1e-9 * scale);
  const auto D = std::size_t(V.rows());

  auto split = [&](const Matrix& op) {
    const Matrix m = V.adjoint() * op * V;
    std::map<std::size_t, Matrix> pieces;
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) {
        const cplx v = m(Eigen::Index(i), Eigen::Index(j));
        if (v == cplx(0)) continue;
        auto& p = pieces[gt.index[i * D + j]];
        if (p.size() == 0) p = Matrix::Zero(Eigen::Index(D), Eigen::Index(D));
        p(Eigen::Index(i), Eigen::Index(j)) = v;
      }
    std::vector<std::pair<double, Matrix>> out;
    for (auto& [k, p] : pieces) out.emplace_back(gt.gaps[k], V * p * V.adjoint());
    return out;
  };

  TimeDependentHamiltonian out(h.space());
  for (const auto& c : h.harmonics())
    for (auto& [gap, op] : split(c.op)) out.add_harmonic(std::move(op), c.frequency + gap);
  for (const auto& m : h.modulated())
    for (auto& [gap, op] : split(m.op)) {
      auto env = m.envelope;
      const double g = gap;
      out.add_modulated(std::move(op), [env, g](double t) { return env(t) * std::exp(kI * g * t); });
    }
  out.add_harmonic(-frame.generator().matrix(), 0.0);
  out.simplify();
  return out;
}

struct RwaError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Keep components with |nu| < cutoff.  Frequencies within cutoff*(1 +- guard)
// make the split ambiguous and are rejected.
inline TimeDependentHamiltonian rwa_effective(const TimeDependentHamiltonian& h, double cutoff,
                                              double guard = 0.1) {
  if (!h.modulated().empty())
    throw RwaError("rwa_effective: modulated components have no definite frequency");
  if (!(cutoff > 0)) throw std::invalid_argument("rwa_effective: cutoff must be positive");
  std::vector<double> offending;
  TimeDependentHamiltonian out(h.space());
  for (const auto& c : h.harmonics()) {
    const double a = std::abs(c.frequency);
    if (std::isfinite(cutoff) && a >= cutoff * (1 - guard) && a <= cutoff * (1 + guard))
      offending.push_back(c.frequency);
    if (a < cutoff) out.add_harmonic(c.op, c.frequency);
  }
  if (!offending.empty()) {
    std::ostringstream os;
    os << "rwa_effective: frequencies too close to the cutoff " << cutoff << ":";
    for (double f : offending) os << ' ' << f;
    throw RwaError(os.str());
  }
  out.simplify();
  return out;
}

// ---------------------------------------------------------------------------
// integration

// (1/400) of the shortest drive period; 0 if nothing oscillates
inline double default_time_step(const TimeDependentHamiltonian& h) {
  const double w = h.max_frequency();
  if (w == 0.0) return 0.0;
  return 2.0 * kPi / w / 400.0;
}

// midpoint-sampled exponentials over [t0, t1] with step <= dt
inline Vector evolve_timedep(const TimeDependentHamiltonian& h, Vector psi, double t0, double t1,
                             double dt) {
  if (t1 < t0) throw std::invalid_argument("evolve_timedep: t1 < t0");
  if (t1 == t0) return psi;
  if (h.is_static()) return diagonalize(h.static_operator().matrix(), 1e-10).evolve(t1 - t0, psi);
  if (!(dt > 0)) throw std::invalid_argument("evolve_timedep: dt must be positive");
  const auto n = std::size_t(std::ceil((t1 - t0) / dt - 1e-12));
  const double step = (t1 - t0) / double(std::max<std::size_t>(n, 1));
  for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
    const double tm = t0 + (double(k) + 0.5) * step;
    psi = diagonalize(h.sample(tm).matrix(), 1e-10).evolve(step, psi);
  }
  return psi;
}

inline QuantumState evolve_timedep(const TimeDependentHamiltonian& h, const QuantumState& s0,
                                   double t_final, std::optional<double> dt = std::nullopt) {
  if (!(s0.space() == h.space())) throw DimensionMismatch("evolve_timedep: space mismatch");
  if (t_final < 0) throw std::invalid_argument("evolve_timedep: negative final time");
  const double step = dt.value_or(default_time_step(h));
  if (dt && !(*dt > 0)) throw std::invalid_argument("evolve_timedep: dt must be positive");
  return QuantumState::normalized(s0.space(), evolve_timedep(h, s0.amplitudes(), 0.0, t_final, step));
}

inline OperatorMatrix timedep_unitary(const TimeDependentHamiltonian& h, double t_final,
                                      std::optional<double> dt = std::nullopt) {
  const auto D = Eigen::Index(h.space().dim());
  const double step = dt.value_or(default_time_step(h));
  Matrix u(D, D);
  Matrix id = Matrix::Identity(D, D);
  // column by column would re-diagonalize; propagate the identity block instead
  if (h.is_static()) return propagator(h.static_operator(), t_final);
  const auto n = std::size_t(std::ceil(t_final / step - 1e-12));
  const double tau = t_final / double(std::max<std::size_t>(n, 1));
  u = id;
  for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k)
    u = diagonalize(h.sample((double(k) + 0.5) * tau).matrix(), 1e-10).propagator(tau) * u;
  return {h.space(), std::move(u)};
}

// e^{i G_n t} ... e^{i G_1 t} psi
inline Vector frame_state(const std::vector<RotatingFrame>& frames, double t, Vector psi) {
  for (const auto& f : frames) psi = f.apply(t, psi);
  return psi;
}

struct FidelitySeries {
  std::vector<double> times;
  std::vector<double> fidelity;
  std::vector<double> top_fock;  // lab-frame top-level population per sample
  std::vector<Vector> framed;     // lab state moved into the final frame
  std::vector<Vector> effective;

  double min_fidelity() const {
    return fidelity.empty() ? 1.0 : *std::min_element(fidelity.begin(), fidelity.end());
  }
  double max_top_fock() const {
    return top_fock.empty() ? 0.0 : *std::max_element(top_fock.begin(), top_fock.end());
  }
  bool leakage_flag() const { return max_top_fock() >= kLeakageThreshold; }
};

inline FidelitySeries compare_lab_vs_effective(const TimeDependentHamiltonian& lab,
                                               const std::vector<RotatingFrame>& frames,
                                               const TimeDependentHamiltonian& eff,
                                               const QuantumState& s0,
                                               const std::vector<double>& t_grid,
                                               std::optional<double> dt = std::nullopt) {
  if (!(lab.space() == eff.space()) || !(lab.space() == s0.space()))
    throw DimensionMismatch("compare_lab_vs_effective: space mismatch");
  for (const auto& f : frames)
    if (!(f.generator().space() == lab.space()))
      throw DimensionMismatch("compare_lab_vs_effective: frame space mismatch");
  if (!std::is_sorted(t_grid.begin(), t_grid.end()) || (!t_grid.empty() && t_grid.front() < 0))
    throw std::invalid_argument("compare_lab_vs_effective: time grid must be sorted and >= 0");
  const double step_lab = dt.value_or(default_time_step(lab));
  const double step_eff = dt.value_or(default_time_step(eff));
  FidelitySeries out;
  Vector lab_psi = s0.amplitudes(), eff_psi = s0.amplitudes();
  double t = 0.0;
  for (double tg : t_grid) {
    lab_psi = evolve_timedep(lab, std::move(lab_psi), t, tg, step_lab);
    eff_psi = evolve_timedep(eff, std::move(eff_psi), t, tg, step_eff);
    t = tg;
    const QuantumState lab_state = QuantumState::normalized(s0.space(), lab_psi);
    const Vector framed = frame_state(frames, tg, lab_psi);
    out.times.push_back(tg);
    out.fidelity.push_back(std::clamp(std::norm(framed.dot(eff_psi)) /
                                          (framed.squaredNorm() * eff_psi.squaredNorm()),
                                      0.0, 1.0));
    out.top_fock.push_back(max_top_fock_population(lab_state));
    out.framed.push_back(framed / framed.norm());
    out.effective.push_back(eff_psi / eff_psi.norm());
  }
  return out;
}

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out;
  if (n == 0) return out;
  if (n == 1) return {a};
  for (std::size_t i = 0; i < n; ++i) out.push_back(a + (b - a) * double(i) / double(n - 1));
  return out;
}

}  // namespace daqsim
