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

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qspec/circuit.hpp"
#include "qspec/pauli.hpp"

namespace qspec {

// Dense complex amplitude vector over n qubits. Qubit q is bit q of the
// basis index (qubit 0 = least significant).
class StateVector {
 public:
  StateVector() = default;

  explicit StateVector(int n_qubits)
      : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, cplx(0, 0)) {
    amps_[0] = 1.0;
  }

  static StateVector zero_state(int n_qubits) { return StateVector(n_qubits); }

  static StateVector basis_state(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    s.amps_[0] = 0.0;
    s.amps_.at(index) = 1.0;
    return s;
  }

  static StateVector from_amplitudes(std::vector<cplx> a) {
    int n = 0;
    while ((std::size_t{1} << n) < a.size()) ++n;
    if ((std::size_t{1} << n) != a.size()) {
      throw std::invalid_argument("amplitude count must be a power of two");
    }
    StateVector s;
    s.n_qubits_ = n;
    s.amps_ = std::move(a);
    return s;
  }

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm_sq() const {
    double s = 0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
  }

  double norm() const { return std::sqrt(norm_sq()); }

  void normalize() {
    const double n = norm();
    if (n == 0) throw std::runtime_error("cannot normalize zero vector");
    const double inv = 1.0 / n;
    for (cplx& a : amps_) a *= inv;
  }

  cplx inner(const StateVector& other) const {
    if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("state size mismatch");
    cplx s = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

  // |<a|b>| — insensitive to global phase.
  double fidelity(const StateVector& other) const { return std::abs(inner(other)); }

  void apply_1q(const Eigen::Matrix2cd& m, int q) {
    const std::size_t bit = std::size_t{1} << q;
    const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
      if (base & bit) continue;
      const cplx a0 = amps_[base], a1 = amps_[base | bit];
      amps_[base] = m00 * a0 + m01 * a1;
      amps_[base | bit] = m10 * a0 + m11 * a1;
    }
  }

  // Generic k-qubit unitary; local bit i of the matrix index is targets[i].
  void apply_kq(const Eigen::MatrixXcd& m, const std::vector<int>& targets) {
    const int k = static_cast<int>(targets.size());
    const std::size_t dk = std::size_t{1} << k;
    std::size_t tmask = 0;
    for (int t : targets) tmask |= std::size_t{1} << t;

    std::vector<std::size_t> offsets(dk, 0);
    for (std::size_t c = 0; c < dk; ++c) {
      for (int i = 0; i < k; ++i) {
        if (c & (std::size_t{1} << i)) offsets[c] |= std::size_t{1} << targets[i];
      }
    }

    std::vector<cplx> v(dk), w(dk);
    for (std::size_t base = 0; base < amps_.size(); ++base) {
      if (base & tmask) continue;
      for (std::size_t c = 0; c < dk; ++c) v[c] = amps_[base | offsets[c]];
      for (std::size_t r = 0; r < dk; ++r) {
        cplx acc = 0;
        for (std::size_t c = 0; c < dk; ++c) acc += m(static_cast<Eigen::Index>(r),
                                                      static_cast<Eigen::Index>(c)) * v[c];
        w[r] = acc;
      }
      for (std::size_t r = 0; r < dk; ++r) amps_[base | offsets[r]] = w[r];
    }
  }

  // exp(-i theta/2 P) without materializing the matrix.
  void apply_pauli_rot(const PauliString& p, double theta, const std::vector<int>& targets) {
    std::size_t flip = 0;
    std::size_t zmask = 0;  // qubits contributing (-1)^bit
    int n_y = 0;
    for (int i = 0; i < p.n_qubits(); ++i) {
      const std::size_t bit = std::size_t{1} << targets[static_cast<std::size_t>(i)];
      switch (p.axis(i)) {
        case Axis::I: break;
        case Axis::X: flip |= bit; break;
        case Axis::Y:
          flip |= bit;
          zmask |= bit;
          ++n_y;
          break;
        case Axis::Z: zmask |= bit; break;
      }
    }
    const cplx c = std::cos(theta / 2);
    const cplx mis = cplx(0, -1) * std::sin(theta / 2);
    const cplx y_phase = i_power(n_y);
    auto phase_of = [&](std::size_t b) -> cplx {
      // P|b> = y_phase * (-1)^{popcount(b & zmask)} |b ^ flip>
      const int par = __builtin_parityll(b & zmask);
      return par ? -y_phase : y_phase;
    };
    if (flip == 0) {
      for (std::size_t b = 0; b < amps_.size(); ++b) {
        amps_[b] = (c + mis * phase_of(b)) * amps_[b];
      }
      return;
    }
    for (std::size_t b = 0; b < amps_.size(); ++b) {
      if (b & flip & (-flip)) continue;  // visit each pair once (lowest flip bit clear)
      const std::size_t b2 = b ^ flip;
      const cplx a0 = amps_[b], a1 = amps_[b2];
      amps_[b] = c * a0 + mis * phase_of(b2) * a1;
      amps_[b2] = c * a1 + mis * phase_of(b) * a0;
    }
  }

  // Applies a Pauli string over the given targets (phases included).
  void apply_pauli(const PauliString& p, const std::vector<int>& targets) {
    std::size_t flip = 0, zmask = 0;
    int n_y = 0;
    for (int i = 0; i < p.n_qubits(); ++i) {
      const std::size_t bit = std::size_t{1} << targets[static_cast<std::size_t>(i)];
      switch (p.axis(i)) {
        case Axis::I: break;
        case Axis::X: flip |= bit; break;
        case Axis::Y:
          flip |= bit;
          zmask |= bit;
          ++n_y;
          break;
        case Axis::Z: zmask |= bit; break;
      }
    }
    const cplx y_phase = i_power(n_y);
    std::vector<cplx> out(amps_.size());
    for (std::size_t b = 0; b < amps_.size(); ++b) {
      const int par = __builtin_parityll(b & zmask);
      out[b ^ flip] = (par ? -y_phase : y_phase) * amps_[b];
    }
    amps_ = std::move(out);
  }

  void apply_instruction(const Instruction& in) {
    switch (in.kind) {
      case InstrKind::NamedGate:
        if (in.qubits.size() == 1) {
          apply_1q(gate_matrix(in.gate, in.params), in.qubits[0]);
        } else {
          apply_kq(gate_matrix(in.gate, in.params), in.qubits);
        }
        return;
      case InstrKind::Unitary:
        apply_kq(*in.matrix, in.qubits);
        return;
      case InstrKind::PauliRot:
        apply_pauli_rot(in.pauli, in.angle, in.qubits);
        return;
      case InstrKind::Label: return;
      default: throw std::invalid_argument("apply_instruction: not a unitary instruction");
    }
  }

  double prob_bit0(int q) const {
    const std::size_t bit = std::size_t{1} << q;
    double p0 = 0;
    for (std::size_t b = 0; b < amps_.size(); ++b) {
      if (!(b & bit)) p0 += std::norm(amps_[b]);
    }
    return p0;
  }

  // Projects qubit q onto `outcome` and renormalizes by the given
  // probability.
  void collapse(int q, int outcome, double prob) {
    const std::size_t bit = std::size_t{1} << q;
    const double inv = 1.0 / std::sqrt(prob);
    for (std::size_t b = 0; b < amps_.size(); ++b) {
      const bool one = (b & bit) != 0;
      if (one != (outcome == 1)) {
        amps_[b] = 0.0;
      } else {
        amps_[b] *= inv;
      }
    }
  }

  // Exact marginal over the given qubits; result index bit i = qubits[i].
  std::vector<double> marginal(const std::vector<int>& qubits) const {
    if (qubits.empty()) throw std::invalid_argument("marginal: empty qubit subset");
    std::vector<double> out(std::size_t{1} << qubits.size(), 0.0);
    for (std::size_t b = 0; b < amps_.size(); ++b) {
      const double w = std::norm(amps_[b]);
      if (w == 0) continue;
      std::size_t key = 0;
      for (std::size_t i = 0; i < qubits.size(); ++i) {
        if (b & (std::size_t{1} << qubits[i])) key |= std::size_t{1} << i;
      }
      out[key] += w;
    }
    return out;
  }

 private:
  int n_qubits_ = 0;
  std::vector<cplx> amps_{cplx(1, 0)};
};

// Applies the unitary instructions of a circuit to |0...0>; labels are
// skipped and measurements are rejected.
inline StateVector run_unitary_circuit(const Circuit& c) {
  StateVector s = StateVector::zero_state(c.n_qubits());
  for (const Instruction& in : c.instructions()) {
    if (in.kind == InstrKind::Label) continue;
    if (!in.is_unitary_kind() || in.condition) {
      throw std::invalid_argument("run_unitary_circuit: circuit is not purely unitary");
    }
    s.apply_instruction(in);
  }
  return s;
}

// Dense unitary of a measurement-free circuit, built column by column.
inline Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  if (c.n_qubits() > kDenseLimit) {
    throw std::invalid_argument("circuit_unitary: register exceeds dense limit");
  }
  const Eigen::Index dim = Eigen::Index{1} << c.n_qubits();
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector s = StateVector::basis_state(c.n_qubits(), static_cast<std::uint64_t>(col));
    for (const Instruction& in : c.instructions()) {
      if (in.kind == InstrKind::Label) continue;
      if (!in.is_unitary_kind() || in.condition) {
        throw std::invalid_argument("circuit_unitary: circuit is not purely unitary");
      }
      s.apply_instruction(in);
    }
    for (Eigen::Index row = 0; row < dim; ++row) u(row, col) = s[static_cast<std::size_t>(row)];
  }
  return u;
}

}  // namespace qspec
