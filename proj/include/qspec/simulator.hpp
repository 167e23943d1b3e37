// Copyright 2026 The qspec authors
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

#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qspec/circuit.hpp"
#include "qspec/random.hpp"
#include "qspec/statevector.hpp"

namespace qspec {

// Two-qubit depolarizing noise: after every executed two-qubit gate, with
// probability p2 a uniformly random non-identity two-qubit Pauli is applied
// to its targets. Single-qubit gates are noiseless. Optional SPAM flips
// each recorded measurement bit with probability p_spam (off by default).
struct NoiseModel {
  double p2 = 0.0;
  double p_spam = 0.0;

  void validate() const {
    if (p2 < 0 || p2 > 1 || p_spam < 0 || p_spam > 1) {
      throw std::invalid_argument("noise probabilities must lie in [0, 1]");
    }
  }

  bool enabled() const { return p2 > 0 || p_spam > 0; }
};

struct ShotRecord {
  std::uint64_t bits = 0;      // classical register value, bit c = clbit c
  std::uint64_t seed = 0;      // per-shot seed (top seed ^ shot index)
  int n_noise_events = 0;      // depolarizing events that fired this shot
  bool discarded = false;      // set by the QED layer
};

struct RunResult {
  StateVector state;
  std::uint64_t classical = 0;
  int n_noise_events = 0;
};

namespace detail {

inline void check_register_sizes(const Circuit& c, const StateVector& input) {
  if (input.n_qubits() != c.n_qubits()) {
    throw std::invalid_argument("input state does not match circuit register");
  }
  if (c.n_clbits() > 64) {
    throw std::invalid_argument("classical registers wider than 64 bits are unsupported");
  }
}

inline bool condition_passes(const Instruction& in, std::uint64_t classical) {
  if (!in.condition) return true;
  const auto [bit, value] = *in.condition;
  return static_cast<int>((classical >> bit) & 1) == value;
}

}  // namespace detail

// Runs one shot. Measurement sampling is inverse-CDF over outcome
// probabilities in basis order (outcome 0 taken iff u < p0), so traces are
// reproducible across implementations that follow the same rule.
inline RunResult run_pure(const Circuit& circuit, const StateVector& input, Rng& rng,
                          const NoiseModel* noise = nullptr) {
  detail::check_register_sizes(circuit, input);
  RunResult r{input, 0, 0};
  for (const Instruction& in : circuit.instructions()) {
    if (in.kind == InstrKind::Label) continue;
    if (!detail::condition_passes(in, r.classical)) continue;
    switch (in.kind) {
      case InstrKind::Measure: {
        const int q = in.qubits[0];
        const double p0 = r.state.prob_bit0(q);
        const double u = uniform01(rng);
        const int outcome = u < p0 ? 0 : 1;
        r.state.collapse(q, outcome, outcome == 0 ? p0 : 1.0 - p0);
        int recorded = outcome;
        if (noise && noise->p_spam > 0 && uniform01(rng) < noise->p_spam) {
          recorded ^= 1;
        }
        r.classical = (r.classical & ~(std::uint64_t{1} << in.clbit)) |
                      (static_cast<std::uint64_t>(recorded) << in.clbit);
        break;
      }
      case InstrKind::Reset: {
        const int q = in.qubits[0];
        const double p0 = r.state.prob_bit0(q);
        const double u = uniform01(rng);
        const int outcome = u < p0 ? 0 : 1;
        r.state.collapse(q, outcome, outcome == 0 ? p0 : 1.0 - p0);
        if (outcome == 1) r.state.apply_1q(gate_matrix(Gate::X, {}), q);
        break;
      }
      default: {
        r.state.apply_instruction(in);
        if (noise && noise->p2 > 0 && in.qubits.size() == 2) {
          if (uniform01(rng) < noise->p2) {
            // code in [1, 15]: axes (code & 3, code >> 2), never (I, I)
            const int code = 1 + static_cast<int>(uniform01(rng) * 15.0);
            std::vector<Axis> axes = {static_cast<Axis>(code & 3),
                                      static_cast<Axis>(code >> 2)};
            r.state.apply_pauli(PauliString(axes), in.qubits);
            ++r.n_noise_events;
          }
        }
        break;
      }
    }
  }
  return r;
}

inline RunResult run_pure(const Circuit& circuit, const StateVector& input,
                          std::uint64_t seed) {
  Rng rng(seed);
  return run_pure(circuit, input, rng);
}

// Counts over classical register outcomes.
struct Histogram {
  int n_clbits = 0;
  std::map<std::uint64_t, long long> counts;
  long long total = 0;

  void add(std::uint64_t bits, long long n = 1) {
    counts[bits] += n;
    total += n;
  }

  double probability(std::uint64_t bits) const {
    auto it = counts.find(bits);
    if (it == counts.end() || total == 0) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(total);
  }

  // Empirical distribution over the integer values of the selected bits.
  std::vector<double> distribution(const std::vector<int>& clbits) const {
    std::vector<double> out(std::size_t{1} << clbits.size(), 0.0);
    if (total == 0) return out;
    for (const auto& [bits, n] : counts) {
      std::size_t key = 0;
      for (std::size_t i = 0; i < clbits.size(); ++i) {
        if (bits >> clbits[i] & 1) key |= std::size_t{1} << i;
      }
      out[key] += static_cast<double>(n) / static_cast<double>(total);
    }
    return out;
  }

  static std::string bit_string(std::uint64_t bits, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) {
      if (bits >> i & 1) s[static_cast<std::size_t>(width - 1 - i)] = '1';
    }
    return s;
  }

  // CSV: outcome_bits,count,probability
  void write_csv(std::ostream& os) const {
    os << "outcome_bits,count,probability\n";
    char buf[48];
    for (const auto& [bits, n] : counts) {
      std::snprintf(buf, sizeof(buf), ",%lld,%.12g\n", n,
                    total ? static_cast<double>(n) / static_cast<double>(total) : 0.0);
      os << bit_string(bits, n_clbits) << buf;
    }
  }
};

struct ShotsResult {
  Histogram histogram;
  std::vector<ShotRecord> records;
};

// Noisy sampling. Per-shot seed = seed ^ shot_index (documented mixing);
// identical (circuit, input, seed, noise) reproduce records bit-for-bit.
inline ShotsResult run_shots(const Circuit& circuit, const StateVector& input,
                             long long n_shots, const NoiseModel& noise,
                             std::uint64_t seed) {
  if (n_shots < 1) throw std::invalid_argument("n_shots must be >= 1");
  noise.validate();
  detail::check_register_sizes(circuit, input);
  ShotsResult out;
  out.histogram.n_clbits = circuit.n_clbits();
  out.records.reserve(static_cast<std::size_t>(n_shots));
  for (long long s = 0; s < n_shots; ++s) {
    const std::uint64_t shot_seed = seed ^ static_cast<std::uint64_t>(s);
    Rng rng(shot_seed);
    RunResult r = run_pure(circuit, input, rng, &noise);
    out.histogram.add(r.classical);
    out.records.push_back({r.classical, shot_seed, r.n_noise_events, false});
  }
  return out;
}

// Exact distribution over classical outcomes, enumerating every measurement
// and reset branch. Exponential in the number of branching measurements;
// intended for oracle checks at desk scale. Noise is not modeled.
inline std::map<std::uint64_t, double> exact_outcome_distribution(
    const Circuit& circuit, const StateVector& input, double prune_tol = 1e-15) {
  detail::check_register_sizes(circuit, input);
  std::map<std::uint64_t, double> dist;

  struct Frame {
    StateVector state;
    std::uint64_t classical;
    std::size_t ip;
    double prob;
  };

  std::vector<Frame> stack;
  stack.push_back({input, 0, 0, 1.0});
  const auto& instrs = circuit.instructions();

  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    bool dead = false;
    while (f.ip < instrs.size()) {
      const Instruction& in = instrs[f.ip];
      if (in.kind == InstrKind::Label || !detail::condition_passes(in, f.classical)) {
        ++f.ip;
        continue;
      }
      if (in.kind == InstrKind::Measure || in.kind == InstrKind::Reset) {
        const int q = in.qubits[0];
        const double p0 = f.state.prob_bit0(q);
        const double p1 = 1.0 - p0;
        for (int outcome = 0; outcome < 2; ++outcome) {
          const double p = outcome == 0 ? p0 : p1;
          if (p * f.prob <= prune_tol) continue;
          Frame g{f.state, f.classical, f.ip + 1, f.prob * p};
          g.state.collapse(q, outcome, p);
          if (in.kind == InstrKind::Measure) {
            g.classical = (g.classical & ~(std::uint64_t{1} << in.clbit)) |
                          (static_cast<std::uint64_t>(outcome) << in.clbit);
          } else if (outcome == 1) {
            g.state.apply_1q(gate_matrix(Gate::X, {}), q);
          }
          stack.push_back(std::move(g));
        }
        dead = true;
        break;
      }
      f.state.apply_instruction(in);
      ++f.ip;
    }
    if (!dead) dist[f.classical] += f.prob;
  }
  return dist;
}

}  // namespace qspec
