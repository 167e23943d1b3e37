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
#include "qspec/decompose.hpp"
#include "qspec/majorana.hpp"
#include "qspec/state_prep.hpp"
#include "qspec/statevector.hpp"

namespace qspec {

// Givens-chain angles rotating the first mode onto u:
//   u_p = cos(2 theta_p) prod_{j<p} sin(2 theta_j)
// solved by back-substitution over tail norms.
inline std::vector<double> givens_chain_angles(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  if (n == 0 || std::abs(u.norm() - 1.0) > 1e-10) {
    throw std::invalid_argument("givens_chain_angles: unit vector required");
  }
  std::vector<double> tail(static_cast<std::size_t>(n) + 1, 0.0);
  for (int p = n - 1; p >= 0; --p) {
    tail[static_cast<std::size_t>(p)] =
        std::hypot(u[p], tail[static_cast<std::size_t>(p) + 1]);
  }
  std::vector<double> theta(static_cast<std::size_t>(n - 1), 0.0);
  for (int p = 0; p < n - 1; ++p) {
    if (tail[static_cast<std::size_t>(p)] < 1e-14) break;  // remaining components vanish
    theta[static_cast<std::size_t>(p)] =
        0.5 * std::atan2(tail[static_cast<std::size_t>(p) + 1], u[p]);
  }
  return theta;
}

// Circuit whose unitary U satisfies U^dag gamma_{0,s,x} U = gamma_{u,s,x}.
// Each chain element is exp(theta_p gamma_{p,s,x} gamma_{p+1,s,x}); under
// Jordan-Wigner the adjacent-pair products reduce to two-qubit rotations
//   gamma_{p,0} gamma_{p+1,0} = -i Y_p X_{p+1}
//   gamma_{p,1} gamma_{p+1,1} = +i X_p Y_{p+1}
// within the spin block.
inline Circuit majorana_rotation_circuit(const Eigen::VectorXd& u, Spin sigma, int flavor) {
  const int n = static_cast<int>(u.size());
  const auto theta = givens_chain_angles(u);
  Circuit c(2 * n, 0);
  for (int p = n - 2; p >= 0; --p) {
    const double t = theta[static_cast<std::size_t>(p)];
    if (std::abs(t) < 1e-14) continue;
    const int q0 = spin_orbital_index(p, sigma, n);
    const int q1 = spin_orbital_index(p + 1, sigma, n);
    if (flavor == 0) {
      c.add(Instruction::pauli_rot(PauliString(std::vector<Axis>{Axis::Y, Axis::X}), 2 * t,
                                   {q0, q1}));
    } else {
      c.add(Instruction::pauli_rot(PauliString(std::vector<Axis>{Axis::X, Axis::Y}), -2 * t,
                                   {q0, q1}));
    }
  }
  return c;
}

// Both flavors combined: per chain site one two-qubit gate
// exp(-i theta_p (Y_p X_{p+1} - X_p Y_{p+1})).
inline Circuit majorana_pair_rotation_circuit(const Eigen::VectorXd& u, Spin sigma) {
  const int n = static_cast<int>(u.size());
  const auto theta = givens_chain_angles(u);
  Circuit c(2 * n, 0);
  for (int p = n - 2; p >= 0; --p) {
    const double t = theta[static_cast<std::size_t>(p)];
    if (std::abs(t) < 1e-14) continue;
    const int q0 = spin_orbital_index(p, sigma, n);
    const int q1 = spin_orbital_index(p + 1, sigma, n);
    Instruction yx =
        Instruction::pauli_rot(PauliString(std::vector<Axis>{Axis::Y, Axis::X}), 2 * t, {0, 1});
    Instruction xy =
        Instruction::pauli_rot(PauliString(std::vector<Axis>{Axis::X, Axis::Y}), -2 * t, {0, 1});
    c.add(Instruction::unitary(xy.to_matrix() * yx.to_matrix(), {q0, q1}, 1e-10));
  }
  return c;
}

// One reflected-Z unitary of the Majorana LCU:
//   V_{k,s} = U^dag Z_{q(0,s)} U  with  i gamma_{u,s,0} gamma_{u,s,1} = -V.
inline Circuit majorana_reflection_circuit(const Eigen::VectorXd& u, Spin sigma) {
  const int n = static_cast<int>(u.size());
  Circuit rot = majorana_pair_rotation_circuit(u, sigma);
  Circuit c(2 * n, 0);
  c.append(rot);
  c.z(spin_orbital_index(0, sigma, n));
  c.append(inverse_circuit(rot));
  return c;
}

enum class DipolePath { Direct, Lcu };

struct DipoleInputResult {
  StateVector state;    // normalized mu|gs> (unset when forbidden)
  double norm_sq = 0;   // ||mu |gs>||^2
  bool forbidden = false;

  // LCU path only:
  double lambda = 0;            // coefficient 1-norm of the decomposition
  double success_prob = 0;      // post-selection probability, (||mu|gs>||/lambda)^2
  int n_ancillas = 0;
  Circuit circuit;              // prepare-select-unprepare over ancilla + system
};

namespace detail {

struct LcuTerm {
  cplx coeff;
  Eigen::MatrixXcd unitary;
};

// Generic prepare-select-unprepare with post-selection on the all-zero
// ancilla outcome. System qubits are the low block, ancillas the high.
inline DipoleInputResult run_lcu(const StateVector& ground, const std::vector<LcuTerm>& terms) {
  if (terms.empty()) throw std::invalid_argument("lcu: empty decomposition");
  const int n_sys = ground.n_qubits();
  const std::size_t n_terms = terms.size();
  int n_anc = 0;
  while ((std::size_t{1} << n_anc) < n_terms) ++n_anc;

  double lambda = 0;
  for (const auto& t : terms) lambda += std::abs(t.coeff);

  // weight state sqrt(|c_i| / lambda) on the ancilla register
  std::vector<cplx> weights(std::size_t{1} << n_anc, cplx(0, 0));
  for (std::size_t i = 0; i < n_terms; ++i) {
    weights[i] = std::sqrt(std::abs(terms[i].coeff) / lambda);
  }
  Circuit prep = amplitude_encode(StateVector::from_amplitudes(std::move(weights)));

  // select: block-diagonal over the ancilla integer; coefficient phases
  // fold into the selected unitaries
  const Eigen::Index sys_dim = Eigen::Index{1} << n_sys;
  const Eigen::Index full_dim = sys_dim << n_anc;
  Eigen::MatrixXcd select = Eigen::MatrixXcd::Identity(full_dim, full_dim);
  for (std::size_t i = 0; i < n_terms; ++i) {
    const cplx phase =
        std::abs(terms[i].coeff) > 0 ? terms[i].coeff / std::abs(terms[i].coeff) : cplx(1, 0);
    select.block(static_cast<Eigen::Index>(i) * sys_dim, static_cast<Eigen::Index>(i) * sys_dim,
                 sys_dim, sys_dim) = phase * terms[i].unitary;
  }

  DipoleInputResult out;
  out.lambda = lambda;
  out.n_ancillas = n_anc;
  Circuit c(n_sys + n_anc, 0);
  if (n_anc > 0) c.append(prep, n_sys);
  std::vector<int> all;
  for (int q = 0; q < n_sys + n_anc; ++q) all.push_back(q);
  c.add(Instruction::unitary(std::move(select), all, 1e-9));
  if (n_anc > 0) c.append(inverse_circuit(prep), n_sys);
  out.circuit = c;

  // run on ground (x) |0...0> and post-select ancilla zeros
  StateVector full = StateVector::zero_state(n_sys + n_anc);
  for (std::size_t b = 0; b < ground.size(); ++b) full[b] = ground[b];
  for (const Instruction& in : c.instructions()) {
    if (in.kind != InstrKind::Label) full.apply_instruction(in);
  }
  std::vector<cplx> block(static_cast<std::size_t>(sys_dim));
  double p = 0;
  for (std::size_t b = 0; b < block.size(); ++b) {
    block[b] = full[b];
    p += std::norm(block[b]);
  }
  out.success_prob = p;
  out.norm_sq = p * lambda * lambda;
  if (out.norm_sq < 1e-24) {
    out.forbidden = true;
    return out;
  }
  StateVector sys_state = StateVector::from_amplitudes(std::move(block));
  sys_state.normalize();
  out.state = std::move(sys_state);
  return out;
}

inline DipoleInputResult apply_direct(const StateVector& ground, const Eigen::MatrixXcd& mu) {
  Eigen::VectorXcd v = mu * Eigen::Map<const Eigen::VectorXcd>(
                                ground.amplitudes().data(),
                                static_cast<Eigen::Index>(ground.size()));
  DipoleInputResult out;
  out.norm_sq = v.squaredNorm();
  if (out.norm_sq < 1e-24) {
    out.forbidden = true;
    return out;
  }
  v /= std::sqrt(out.norm_sq);
  std::vector<cplx> amps(v.data(), v.data() + v.size());
  out.state = StateVector::from_amplitudes(std::move(amps));
  return out;
}

}  // namespace detail

// Normalized dipole-excited input state from a qubit-space dipole
// operator. The LCU path decomposes the operator over its Pauli terms. A
// numerically vanishing mu|gs> is reported through `forbidden`, not thrown.
inline DipoleInputResult prepare_dipole_input(const StateVector& ground, const PauliOperator& mu,
                                              DipolePath path) {
  if (mu.n_qubits() != ground.n_qubits()) {
    throw std::invalid_argument("prepare_dipole_input: size mismatch");
  }
  if (path == DipolePath::Direct) {
    return detail::apply_direct(ground, pauli_to_matrix(mu));
  }
  std::vector<detail::LcuTerm> terms;
  for (const auto& [c, s] : mu.terms()) {
    terms.push_back({c, pauli_string_to_matrix(s)});
  }
  return detail::run_lcu(ground, terms);
}

// Same, from the Majorana normal form; the LCU runs over the reflected-Z
// pair unitaries with weights |eps_k|/2 per spin plus the constant term.
inline DipoleInputResult prepare_dipole_input(const StateVector& ground,
                                              const MajoranaDipoleForm& form, DipolePath path) {
  if (form.modes.empty()) throw std::invalid_argument("prepare_dipole_input: empty dipole form");
  const int n_modes = static_cast<int>(form.modes[0].u.size());
  if (2 * n_modes != ground.n_qubits()) {
    throw std::invalid_argument("prepare_dipole_input: ground state size mismatch");
  }
  if (path == DipolePath::Direct) {
    return detail::apply_direct(ground, pauli_to_matrix(majorana_dipole_operator(form)));
  }
  std::vector<detail::LcuTerm> terms;
  if (std::abs(form.e_const) > 1e-14) {
    const Eigen::Index dim = Eigen::Index{1} << (2 * n_modes);
    terms.push_back({form.e_const, Eigen::MatrixXcd::Identity(dim, dim)});
  }
  for (const auto& mode : form.modes) {
    if (std::abs(mode.eps) < 1e-14) continue;
    for (Spin s : {Spin::Alpha, Spin::Beta}) {
      terms.push_back({-0.5 * mode.eps,
                       circuit_unitary(majorana_reflection_circuit(mode.u, s))});
    }
  }
  return detail::run_lcu(ground, terms);
}

}  // namespace qspec
