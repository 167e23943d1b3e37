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

#include <complex>
#include <vector>

#include "qspec/pauli.hpp"
#include "qspec/random.hpp"
#include "qspec/statevector.hpp"

namespace qspec::testing {

inline double normal(Rng& rng) {
  // Box-Muller; good enough for test data.
  const double u1 = uniform01(rng) + 1e-300;
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * M_PI * u2);
}

inline PauliString random_string(Rng& rng, int n_qubits) {
  std::vector<Axis> axes(static_cast<std::size_t>(n_qubits));
  for (auto& a : axes) a = static_cast<Axis>(rng() % 4);
  return PauliString(std::move(axes));
}

inline PauliOperator random_operator(Rng& rng, int n_qubits, int n_terms,
                                     bool hermitian = true) {
  PauliOperator op(n_qubits);
  for (int i = 0; i < n_terms; ++i) {
    const double re = normal(rng);
    const double im = hermitian ? 0.0 : normal(rng);
    op.add_term(cplx(re, im), random_string(rng, n_qubits));
  }
  op.canonicalize();
  return op;
}

inline StateVector random_state(Rng& rng, int n_qubits) {
  std::vector<cplx> amps(std::size_t{1} << n_qubits);
  for (auto& a : amps) a = cplx(normal(rng), normal(rng));
  StateVector s = StateVector::from_amplitudes(std::move(amps));
  s.normalize();
  return s;
}

inline Eigen::VectorXcd to_eigen(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) v[static_cast<Eigen::Index>(i)] = s[i];
  return v;
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Largest |a_i - b_i| between two distributions.
inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace qspec::testing
