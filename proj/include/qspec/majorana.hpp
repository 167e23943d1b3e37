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

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "qspec/fermion.hpp"
#include "qspec/pauli.hpp"

namespace qspec {

// Real symmetric one-body dipole matrix over spatial orbitals for one
// Cartesian polarization.
struct DipoleMatrix {
  char direction = 'x';  // {'x', 'y', 'z'}
  Eigen::MatrixXd mu;

  void validate(double tol = 1e-12) const {
    if (mu.rows() != mu.cols()) throw std::invalid_argument("dipole matrix must be square");
    if ((mu - mu.transpose()).cwiseAbs().maxCoeff() > tol) {
      throw std::invalid_argument("dipole matrix must be symmetric");
    }
  }
};

// Eigen-decomposed dipole, mu = e_const + (i/2) sum_k eps_k sum_s
// gamma_{u_k,s,0} gamma_{u_k,s,1}, with e_const the trace of the matrix.
struct MajoranaDipoleForm {
  double e_const = 0.0;
  struct Mode {
    double eps;
    Eigen::VectorXd u;  // unit vector over spatial modes
  };
  std::vector<Mode> modes;  // sorted by descending |eps|

  Eigen::MatrixXd reconstruct() const {
    if (modes.empty()) return Eigen::MatrixXd::Zero(0, 0);
    const Eigen::Index n = modes[0].u.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const Mode& k : modes) m += k.eps * k.u * k.u.transpose();
    return m;
  }
};

inline MajoranaDipoleForm dipole_majorana_decompose(const DipoleMatrix& dip,
                                                    double tol = 1e-10) {
  dip.validate(tol);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dip.mu);
  if (es.info() != Eigen::Success) throw std::runtime_error("dipole eigensolve failed");
  MajoranaDipoleForm form;
  form.e_const = dip.mu.trace();
  const Eigen::Index n = dip.mu.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    form.modes.push_back({es.eigenvalues()[k], es.eigenvectors().col(k)});
  }
  std::stable_sort(form.modes.begin(), form.modes.end(),
                   [](const auto& a, const auto& b) { return std::abs(a.eps) > std::abs(b.eps); });
  return form;
}

// Jordan-Wigner image of a single Majorana operator:
//   gamma_{j,s,0} = a_{js} + a+_{js},  gamma_{j,s,1} = -i (a_{js} - a+_{js})
inline PauliOperator majorana_pauli(int mode, Spin spin, int flavor, int n_modes_per_spin) {
  const int n_qubits = 2 * n_modes_per_spin;
  const int q = spin_orbital_index(mode, spin, n_modes_per_spin);
  PauliOperator a = jw_ladder(q, false, n_qubits);
  PauliOperator adag = jw_ladder(q, true, n_qubits);
  PauliOperator g = flavor == 0 ? a + adag : cplx(0, -1) * (a - adag);
  g.canonicalize();
  return g;
}

// gamma_{u,s,x} = sum_j u_j gamma_{j,s,x}
inline PauliOperator majorana_pauli_u(const Eigen::VectorXd& u, Spin spin, int flavor) {
  const int n_modes = static_cast<int>(u.size());
  PauliOperator g(2 * n_modes);
  for (int j = 0; j < n_modes; ++j) {
    if (u[j] == 0.0) continue;
    g += u[j] * majorana_pauli(j, spin, flavor, n_modes);
  }
  g.canonicalize();
  return g;
}

// Qubit operator of the decomposed dipole,
//   E_const + (i/2) sum_k eps_k sum_s gamma_{u_k,s,0} gamma_{u_k,s,1}.
inline PauliOperator majorana_dipole_operator(const MajoranaDipoleForm& form) {
  if (form.modes.empty()) throw std::invalid_argument("empty dipole form");
  const int n_modes = static_cast<int>(form.modes[0].u.size());
  PauliOperator op = PauliOperator::identity(2 * n_modes, form.e_const);
  for (const auto& mode : form.modes) {
    for (Spin s : {Spin::Alpha, Spin::Beta}) {
      PauliOperator pair =
          majorana_pauli_u(mode.u, s, 0) * majorana_pauli_u(mode.u, s, 1);
      op += cplx(0, 0.5) * mode.eps * pair;
    }
  }
  op.canonicalize();
  return op;
}

// JW image of sum_ij mu_ij sum_s a+_{is} a_{js} (the reference the Majorana
// form must reproduce).
inline PauliOperator dipole_number_operator(const Eigen::MatrixXd& mu) {
  const int n = static_cast<int>(mu.rows());
  FermionOperator f;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (mu(i, j) == 0.0) continue;
      for (Spin s : {Spin::Alpha, Spin::Beta}) {
        f.add_term(mu(i, j), {{i, s, true}, {j, s, false}});
      }
    }
  }
  return jordan_wigner(f, n);
}

}  // namespace qspec
