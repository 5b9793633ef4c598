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

// Multiplicative fidelity and additive duration budgets for circuits.
#pragma once

#include "daqsim/gates.hpp"

#include <set>

namespace daqsim {

enum class CollectiveCounting { as_one, per_qubit };
enum class AnalogCounting { per_pair, per_block };

struct UnclassifiableGate : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Defaults: 5% two-qubit error, 1% single-qubit error.
struct NoiseModel {
  double single_qubit = 0.99;
  double two_qubit = 0.95;
  double analog_block_per_pair = 0.95;
  CollectiveCounting collective = CollectiveCounting::per_qubit;
  AnalogCounting analog = AnalogCounting::per_pair;

  void validate() const {
    for (double f : {single_qubit, two_qubit, analog_block_per_pair})
      if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("NoiseModel: fidelity outside (0,1]");
  }
};

// Defaults solve 8 t1 + 3 t2 = 100 ns and 4 t1 + 6 t2 = 160 ns.
struct TimingModel {
  double single_qubit_ns = 10.0 / 3.0;
  double two_qubit_ns = 220.0 / 9.0;
  double analog_block_ns = 220.0 / 9.0;
  CollectiveCounting collective = CollectiveCounting::as_one;

  void validate() const {
    for (double d : {single_qubit_ns, two_qubit_ns, analog_block_ns})
      if (!(d >= 0.0)) throw std::invalid_argument("TimingModel: negative duration");
  }
};

// distinct subsystem pairs that appear together in some term
inline std::size_t interacting_pairs(const Hamiltonian& h) {
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& t : h.terms()) {
    std::set<std::size_t> sites;
    for (const auto& f : t.factors)
      if (f.op != Op::identity) sites.insert(f.site);
    for (auto i = sites.begin(); i != sites.end(); ++i)
      for (auto j = std::next(i); j != sites.end(); ++j) pairs.insert({*i, *j});
  }
  return pairs.size();
}

struct GateCounts {
  std::size_t single_qubit = 0;       // fidelity factors
  std::size_t two_qubit = 0;
  std::size_t analog_factors = 0;
  std::size_t single_qubit_slots = 0;  // timing slots
  std::size_t two_qubit_slots = 0;
  std::size_t analog_slots = 0;
};

inline GateCounts gate_counts(const Circuit& c, CollectiveCounting fid_policy,
                              AnalogCounting analog_policy, CollectiveCounting time_policy) {
  GateCounts n;
  auto singles = [&](std::size_t targets, bool collective) {
    n.single_qubit += (collective && fid_policy == CollectiveCounting::as_one) ? 1 : targets;
    n.single_qubit_slots += (collective && time_policy == CollectiveCounting::as_one) ? 1 : targets;
  };
  for (const auto& g : c.gates()) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, Rotation>) {
            singles(x.targets.size(), x.collective);
          } else if constexpr (std::is_same_v<T, QubitFlip>) {
            singles(x.targets.size(), true);
          } else if constexpr (std::is_same_v<T, CZPhi> || std::is_same_v<T, MS>) {
            ++n.two_qubit;
            ++n.two_qubit_slots;
          } else if constexpr (std::is_same_v<T, AnalogBlock>) {
            const std::size_t pairs = interacting_pairs(x.hamiltonian);
            n.analog_factors += analog_policy == AnalogCounting::per_block ? 1 : std::max<std::size_t>(pairs, 1);
            ++n.analog_slots;
          } else {
            throw UnclassifiableGate("budget: custom unitary '" + x.label + "' has no gate class");
          }
        },
        g);
  }
  return n;
}

inline double fidelity_estimate(const Circuit& c, const NoiseModel& m = {}) {
  m.validate();
  const auto n = gate_counts(c, m.collective, m.analog, CollectiveCounting::as_one);
  return std::pow(m.single_qubit, double(n.single_qubit)) * std::pow(m.two_qubit, double(n.two_qubit)) *
         std::pow(m.analog_block_per_pair, double(n.analog_factors));
}

inline double duration_estimate(const Circuit& c, const TimingModel& m = {}) {
  m.validate();
  const auto n = gate_counts(c, CollectiveCounting::per_qubit, AnalogCounting::per_block, m.collective);
  return double(n.single_qubit_slots) * m.single_qubit_ns + double(n.two_qubit_slots) * m.two_qubit_ns +
         double(n.analog_slots) * m.analog_block_ns;
}

struct CoherenceReport {
  double step_ns = 0.0;
  std::size_t steps_in_window = 0;
  bool fits = false;
};

// how many repetitions of `step` fit in a coherence window
inline CoherenceReport coherence_budget(const Circuit& step, double window_ns,
                                        std::size_t steps_needed, const TimingModel& m = {}) {
  CoherenceReport r;
  r.step_ns = duration_estimate(step, m);
  r.steps_in_window = r.step_ns > 0 ? std::size_t(std::floor(window_ns / r.step_ns))
                                    : std::numeric_limits<std::size_t>::max();
  r.fits = steps_needed <= r.steps_in_window;
  return r;
}

}  // namespace daqsim
