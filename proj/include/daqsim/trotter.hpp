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

// Lie-Trotter product formulas, the commutator bound and the measured error.
#pragma once

#include "daqsim/gates.hpp"

#include <numeric>

namespace daqsim {

enum class TrotterOrder { first, second };

struct TrotterPlan {
  std::vector<Hamiltonian> terms;  // applied in this order within a step
  double total_time = 0.0;
  std::size_t steps = 1;
  TrotterOrder order = TrotterOrder::first;
};

inline void validate(const TrotterPlan& p) {
  if (p.terms.empty()) throw std::invalid_argument("TrotterPlan: empty term list");
  if (p.steps < 1) throw std::invalid_argument("TrotterPlan: steps must be >= 1");
  for (const auto& h : p.terms)
    if (!(h.space() == p.terms.front().space()))
      throw DimensionMismatch("TrotterPlan: terms live on different spaces");
}

inline Circuit trotterize(const TrotterPlan& p) {
  validate(p);
  const double tau = p.total_time / double(p.steps);
  const std::size_t m = p.terms.size();
  Circuit step(p.terms.front().space());
  auto label = [](std::size_t k) { return "H" + std::to_string(k + 1); };
  if (p.order == TrotterOrder::first || m == 1) {
    for (std::size_t k = 0; k < m; ++k) step.add(AnalogBlock{p.terms[k], tau, label(k)});
  } else {
    for (std::size_t k = 0; k + 1 < m; ++k) step.add(AnalogBlock{p.terms[k], tau / 2, label(k)});
    step.add(AnalogBlock{p.terms[m - 1], tau, label(m - 1)});
    for (std::size_t k = m - 1; k-- > 0;) step.add(AnalogBlock{p.terms[k], tau / 2, label(k)});
  }
  return step.repeat(p.steps);
}

inline OperatorMatrix sum_terms(const std::vector<Hamiltonian>& terms) {
  if (terms.empty()) throw std::invalid_argument("sum_terms: empty term list");
  OperatorMatrix h = OperatorMatrix::zero(terms.front().space());
  for (const auto& t : terms) h += assemble(t);
  return h;
}

// sum_{i<j} ||[H_i, H_j]|| t^2 / (2 l), spectral norm
inline double error_bound(const TrotterPlan& p) {
  validate(p);
  std::vector<Matrix> ms;
  for (const auto& t : p.terms) ms.push_back(assemble(t).matrix());
  double acc = 0.0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) acc += spectral_norm(commutator(ms[i], ms[j]));
  return acc * p.total_time * p.total_time / (2.0 * double(p.steps));
}

inline OperatorMatrix exact_unitary(const TrotterPlan& p) {
  validate(p);
  return propagator(sum_terms(p.terms), p.total_time);
}

inline double digital_error(const TrotterPlan& p) {
  const OperatorMatrix exact = exact_unitary(p);
  const OperatorMatrix trot = circuit_unitary(trotterize(p));
  return spectral_norm(exact.matrix() - trot.matrix());
}

struct ScanPoint {
  std::size_t steps = 0;
  double error = 0.0;
  double bound = 0.0;
  // bound violations at round-off scale are flagged, not failures
  bool bound_respected() const { return error <= bound + 1e-10; }
};

inline std::vector<ScanPoint> trotter_scan(TrotterPlan p, const std::vector<std::size_t>& steps) {
  validate(p);
  const OperatorMatrix exact = exact_unitary(p);
  std::vector<ScanPoint> out;
  for (auto l : steps) {
    p.steps = l;
    const OperatorMatrix trot = circuit_unitary(trotterize(p));
    out.push_back({l, spectral_norm(exact.matrix() - trot.matrix()), error_bound(p)});
  }
  return out;
}

// least-squares slope of log(y) against log(x)
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("loglog_slope: need >= 2 paired points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] <= 0 || y[i] <= 0) throw std::invalid_argument("loglog_slope: non-positive value");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (double(n) * sxy - sx * sy) / (double(n) * sxx - sx * sx);
}

inline double scan_slope(const std::vector<ScanPoint>& pts) {
  std::vector<double> x, y;
  for (const auto& p : pts) {
    x.push_back(double(p.steps));
    y.push_back(p.error);
  }
  return loglog_slope(x, y);
}

}  // namespace daqsim
