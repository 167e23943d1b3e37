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

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qspec/circuit.hpp"
#include "qspec/statevector.hpp"

namespace qspec {

// Multiplexed rotation: R_A(angles[i]) on `target` where i is the integer
// read off the control qubits (controls[j] = bit j of i). Decomposed into
// 2^m alternating rotations and CNOTs along a Gray-code walk.
inline void append_multiplexed_rotation(Circuit& circ, Gate axis, int target,
                                        const std::vector<int>& controls,
                                        const std::vector<double>& angles,
                                        double angle_tol = 1e-12) {
  if (axis != Gate::RY && axis != Gate::RZ) {
    throw std::invalid_argument("multiplexed rotation supports RY/RZ only");
  }
  const std::size_t m = controls.size();
  const std::size_t n_angles = std::size_t{1} << m;
  if (angles.size() != n_angles) {
    throw std::invalid_argument("multiplexed rotation: wrong angle count");
  }
  bool all_zero = true;
  for (double a : angles) {
    if (std::abs(a) > angle_tol) all_zero = false;
  }
  if (all_zero) return;
  if (m == 0) {
    circ.add(Instruction::named(axis, {target}, {angles[0]}));
    return;
  }
  auto gray = [](std::size_t j) { return j ^ (j >> 1); };
  for (std::size_t j = 0; j < n_angles; ++j) {
    double phi = 0;
    for (std::size_t i = 0; i < n_angles; ++i) {
      const int parity = std::popcount(i & gray(j)) & 1;
      phi += (parity ? -1.0 : 1.0) * angles[i];
    }
    phi /= static_cast<double>(n_angles);
    if (std::abs(phi) > angle_tol) circ.add(Instruction::named(axis, {target}, {phi}));
    const std::size_t flip =
        j + 1 == n_angles ? m - 1 : static_cast<std::size_t>(std::countr_zero(j + 1));
    circ.cx(controls[flip], target);
  }
}

// Circuit mapping |0...0> to the target state up to global phase:
// a binary tree of multiplexed Y rotations for the magnitudes, then
// multiplexed Z rotations for the phases. Emits only RY/RZ/CX.
inline Circuit amplitude_encode(const StateVector& target, double norm_tol = 1e-10) {
  if (std::abs(target.norm() - 1.0) > norm_tol) {
    throw std::invalid_argument("amplitude_encode: target state is not normalized");
  }
  const int n = target.n_qubits();
  Circuit circ(n, 0);
  const std::size_t dim = target.size();

  // magnitudes, top qubit down
  for (int q = n - 1; q >= 0; --q) {
    const std::size_t n_prefix = dim >> (q + 1);
    std::vector<double> angles(n_prefix, 0.0);
    for (std::size_t p = 0; p < n_prefix; ++p) {
      double w0 = 0, w1 = 0;
      const std::size_t base = p << (q + 1);
      for (std::size_t low = 0; low < (std::size_t{1} << q); ++low) {
        w0 += std::norm(target[base | low]);
        w1 += std::norm(target[base | (std::size_t{1} << q) | low]);
      }
      angles[p] = 2 * std::atan2(std::sqrt(w1), std::sqrt(w0));
    }
    std::vector<int> controls;
    for (int c = q + 1; c < n; ++c) controls.push_back(c);
    append_multiplexed_rotation(circ, Gate::RY, q, controls, angles);
  }

  // phases, bottom qubit up; the leftover mean is a global phase
  std::vector<double> phase(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    phase[x] = std::abs(target[x]) > 1e-14 ? std::arg(target[x]) : 0.0;
  }
  for (int q = 0; q < n; ++q) {
    const std::size_t half = phase.size() / 2;
    std::vector<double> deltas(half), means(half);
    for (std::size_t p = 0; p < half; ++p) {
      deltas[p] = phase[2 * p + 1] - phase[2 * p];
      means[p] = 0.5 * (phase[2 * p + 1] + phase[2 * p]);
    }
    std::vector<int> controls;
    for (int c = q + 1; c < n; ++c) controls.push_back(c);
    append_multiplexed_rotation(circ, Gate::RZ, q, controls, deltas);
    phase = std::move(means);
  }
  return circ;
}

}  // namespace qspec
