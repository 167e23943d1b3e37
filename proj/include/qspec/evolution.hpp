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
#include "qspec/pauli.hpp"

namespace qspec {

// Exact evolution gate exp(+2 pi i t H), computed by eigendecomposition.
// The positive exponent is the project-wide convention for evolution
// payloads; phase-estimation readout assumes it.
inline Instruction exact_evolution_gate(const PauliOperator& h, double t,
                                        const std::vector<int>& targets) {
  if (h.n_qubits() != static_cast<int>(targets.size())) {
    throw std::invalid_argument("exact_evolution_gate: operator/target mismatch");
  }
  if (h.n_qubits() > kDenseLimit) {
    throw std::invalid_argument("exact_evolution_gate: subset exceeds dense limit");
  }
  if (!h.is_hermitian()) {
    throw std::invalid_argument("exact_evolution_gate: operator must be Hermitian");
  }
  Eigen::MatrixXcd m = pauli_to_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success) throw std::runtime_error("evolution eigensolve failed");
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases[i] = std::exp(cplx(0, 2 * M_PI * t * es.eigenvalues()[i]));
  }
  Eigen::MatrixXcd u =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return Instruction::unitary(std::move(u), targets, 1e-9);
}

// First-order product formula for exp(+2 pi i t H) as PauliRot
// instructions. Identity terms only shift the global phase and are
// dropped.
inline Circuit trotter_evolution_circuit(const PauliOperator& h, double t, int steps) {
  if (steps < 1) throw std::invalid_argument("trotter: steps must be >= 1");
  if (!h.is_hermitian()) throw std::invalid_argument("trotter: operator must be Hermitian");
  Circuit circ(h.n_qubits(), 0);
  for (int s = 0; s < steps; ++s) {
    for (const auto& [c, p] : h.terms()) {
      if (p.is_identity()) continue;
      std::vector<Axis> axes;
      std::vector<int> support;
      for (int q = 0; q < p.n_qubits(); ++q) {
        if (p.axis(q) != Axis::I) {
          axes.push_back(p.axis(q));
          support.push_back(q);
        }
      }
      // exp(+2 pi i (t/steps) c P) = R_P(-4 pi t c / steps)
      const double theta = -4 * M_PI * t * c.real() / steps;
      circ.add(Instruction::pauli_rot(PauliString(std::move(axes)), theta, std::move(support)));
    }
  }
  return circ;
}

// Appends a controlled exp(+2 pi i t H) in Trotterized form. Each
// controlled term rotation splits as
//   ctrl-e^{i phi P} = e^{i phi P / 2} e^{-i phi (Z_c x P) / 2},
// and the identity part of H becomes a phase gate on the control.
inline void append_controlled_trotter(Circuit& circ, const PauliOperator& h, double t,
                                      int steps, int control,
                                      const std::vector<int>& system_qubits) {
  if (steps < 1) throw std::invalid_argument("controlled trotter: steps must be >= 1");
  if (h.n_qubits() != static_cast<int>(system_qubits.size())) {
    throw std::invalid_argument("controlled trotter: operator/target mismatch");
  }
  const double id_coeff = h.identity_coefficient().real();
  if (id_coeff != 0.0) circ.phase(2 * M_PI * t * id_coeff, control);
  for (int s = 0; s < steps; ++s) {
    for (const auto& [c, p] : h.terms()) {
      if (p.is_identity()) continue;
      std::vector<Axis> axes;
      std::vector<int> support;
      for (int q = 0; q < p.n_qubits(); ++q) {
        if (p.axis(q) != Axis::I) {
          axes.push_back(p.axis(q));
          support.push_back(system_qubits[static_cast<std::size_t>(q)]);
        }
      }
      const double phi = 2 * M_PI * t * c.real() / steps;
      circ.add(Instruction::pauli_rot(PauliString(axes), -phi, support));
      axes.push_back(Axis::Z);
      support.push_back(control);
      circ.add(Instruction::pauli_rot(PauliString(std::move(axes)), phi, std::move(support)));
    }
  }
}

}  // namespace qspec
