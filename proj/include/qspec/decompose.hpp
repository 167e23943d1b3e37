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
#include <stdexcept>
#include <vector>

#include "qspec/circuit.hpp"

namespace qspec {

// U = e^{i alpha} RZ(c) RX(b) RZ(a), a applied first.
struct EulerZXZ {
  double a, b, c, alpha;
};

inline EulerZXZ euler_zxz(const Eigen::Matrix2cd& u, double tol = 1e-12) {
  const cplx det = u.determinant();
  if (std::abs(std::abs(det) - 1.0) > 1e-9) {
    throw std::invalid_argument("euler_zxz: matrix is not unitary");
  }
  const double alpha = std::arg(det) / 2;
  Eigen::Matrix2cd v = std::exp(cplx(0, -alpha)) * u;
  const double c0 = std::abs(v(0, 0));
  const double s0 = std::abs(v(0, 1));
  const double b = 2 * std::atan2(s0, c0);
  double a = 0, c = 0;
  if (s0 < tol) {
    a = -2 * std::arg(v(0, 0));
  } else if (c0 < tol) {
    a = 2 * (std::arg(v(0, 1)) + M_PI / 2);
  } else {
    const double p1 = std::arg(v(0, 0));
    const double p2 = std::arg(v(0, 1));
    a = -p1 + p2 + M_PI / 2;
    c = -p1 - p2 - M_PI / 2;
  }
  return {a, b, c, alpha};
}

// Appends RZ/RX gates realizing the 2x2 unitary up to global phase.
// Near-identity factors are skipped.
inline void append_1q_as_zxz(Circuit& circ, const Eigen::Matrix2cd& u, int qubit,
                             double angle_tol = 1e-12) {
  EulerZXZ e = euler_zxz(u);
  if (std::abs(e.a) > angle_tol) circ.rz(e.a, qubit);
  if (std::abs(e.b) > angle_tol) circ.rx(e.b, qubit);
  if (std::abs(e.c) > angle_tol) circ.rz(e.c, qubit);
}

// exp(-i theta/2 P) via basis changes, a CNOT parity ladder and one RZ.
// Identity strings contribute only a global phase and emit nothing.
inline void append_pauli_rot_basic(Circuit& circ, const PauliString& p, double theta,
                                   const std::vector<int>& targets) {
  std::vector<int> support;
  for (int i = 0; i < p.n_qubits(); ++i) {
    if (p.axis(i) != Axis::I) support.push_back(targets[static_cast<std::size_t>(i)]);
  }
  if (support.empty()) return;
  auto basis_pre = [&](int i, int q) {
    switch (p.axis(i)) {
      case Axis::X: circ.h(q); break;
      case Axis::Y: circ.sdg(q).h(q); break;
      default: break;
    }
  };
  auto basis_post = [&](int i, int q) {
    switch (p.axis(i)) {
      case Axis::X: circ.h(q); break;
      case Axis::Y: circ.h(q).s(q); break;
      default: break;
    }
  };
  for (int i = 0, k = 0; i < p.n_qubits(); ++i) {
    if (p.axis(i) != Axis::I) basis_pre(i, support[static_cast<std::size_t>(k++)]);
  }
  for (std::size_t i = 0; i + 1 < support.size(); ++i) circ.cx(support[i], support[i + 1]);
  circ.rz(theta, support.back());
  for (std::size_t i = support.size() - 1; i-- > 0;) circ.cx(support[i], support[i + 1]);
  for (int i = 0, k = 0; i < p.n_qubits(); ++i) {
    if (p.axis(i) != Axis::I) basis_post(i, support[static_cast<std::size_t>(k++)]);
  }
}

inline Instruction adjoint_instruction(const Instruction& in) {
  switch (in.kind) {
    case InstrKind::Label: return in;
    case InstrKind::Unitary: {
      Eigen::MatrixXcd adj = in.matrix->adjoint();
      Instruction out = Instruction::unitary(std::move(adj), in.qubits, 0.0);
      out.condition = in.condition;
      return out;
    }
    case InstrKind::PauliRot: {
      Instruction out = Instruction::pauli_rot(in.pauli, -in.angle, in.qubits);
      out.condition = in.condition;
      return out;
    }
    case InstrKind::NamedGate: {
      Instruction out = in;
      switch (in.gate) {
        case Gate::S: out.gate = Gate::Sdg; break;
        case Gate::Sdg: out.gate = Gate::S; break;
        case Gate::RX:
        case Gate::RY:
        case Gate::RZ:
        case Gate::Phase:
        case Gate::CPhase:
        case Gate::RXX:
        case Gate::RYY:
        case Gate::RZZ: out.params[0] = -out.params[0]; break;
        default: break;  // H, X, Y, Z, CX, CZ, Swap are self-adjoint
      }
      return out;
    }
    default: throw std::invalid_argument("adjoint_instruction: not a unitary instruction");
  }
}

inline Circuit inverse_circuit(const Circuit& c) {
  Circuit out(c.n_qubits(), c.n_clbits());
  const auto& instrs = c.instructions();
  for (auto it = instrs.rbegin(); it != instrs.rend(); ++it) {
    if (it->kind == InstrKind::Label) continue;
    out.add(adjoint_instruction(*it));
  }
  return out;
}

// Rewrites PauliRot instructions into {H, S, Sdg, CX, RZ}; everything else
// passes through unchanged. Conditions on a PauliRot are not supported.
inline Circuit expand_pauli_rotations(const Circuit& in) {
  Circuit out(in.n_qubits(), in.n_clbits());
  for (const Instruction& instr : in.instructions()) {
    if (instr.kind == InstrKind::PauliRot) {
      if (instr.condition) {
        throw std::invalid_argument("expand_pauli_rotations: conditioned rotation");
      }
      append_pauli_rot_basic(out, instr.pauli, instr.angle, instr.qubits);
    } else {
      out.add(instr);
    }
  }
  for (const DetectionBit& d : in.detection_bits()) out.tag_detection(d.clbit, d.round, d.kind);
  return out;
}

}  // namespace qspec
