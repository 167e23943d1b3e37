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

#include <catch2/catch_amalgamated.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "qspec/decompose.hpp"
#include "qspec/evolution.hpp"
#include "qspec/simulator.hpp"
#include "test_helpers.hpp"

using namespace qspec;
using namespace qspec::testing;

namespace {

Eigen::MatrixXcd dense_evolution(const PauliOperator& h, double t) {
  Eigen::MatrixXcd m = cplx(0, 2 * M_PI * t) * pauli_to_matrix(h);
  return m.exp();
}

}  // namespace

TEST_CASE("exact evolution gate conventions") {
  PauliOperator z = PauliOperator::from_terms(1, {{1.0, PauliString::parse("Z")}});
  // 2 pi t = pi: diag(e^{i pi}, e^{-i pi}) = -I
  Instruction g = exact_evolution_gate(z, 0.5, {0});
  Eigen::MatrixXcd u = g.to_matrix();
  REQUIRE(max_abs_diff(u, -Eigen::MatrixXcd::Identity(2, 2)) < 1e-12);

  Instruction id = exact_evolution_gate(z, 0.0, {0});
  REQUIRE(max_abs_diff(id.to_matrix(), Eigen::MatrixXcd::Identity(2, 2)) < 1e-14);
}

TEST_CASE("exact evolution matches the dense exponential and powers") {
  Rng rng(61);
  PauliOperator h = random_operator(rng, 2, 4, true);
  const double t = 0.173;
  Eigen::MatrixXcd u = exact_evolution_gate(h, t, {0, 1}).to_matrix();
  REQUIRE(max_abs_diff(u, dense_evolution(h, t)) < 1e-11);

  // (gate(t))^{2^m} = gate(t 2^m)
  const int m = 3;
  Eigen::MatrixXcd pow = Eigen::MatrixXcd::Identity(4, 4);
  for (int i = 0; i < (1 << m); ++i) pow = pow * u;
  Eigen::MatrixXcd direct = exact_evolution_gate(h, t * (1 << m), {0, 1}).to_matrix();
  REQUIRE(max_abs_diff(pow, direct) < 1e-10);
}

TEST_CASE("exact evolution requires hermitian input") {
  PauliOperator bad(1);
  bad.add_term(cplx(0, 1), PauliString::parse("X"));
  REQUIRE_THROWS_AS(exact_evolution_gate(bad, 0.1, {0}), std::invalid_argument);
}

TEST_CASE("controlled exact evolution is the block unitary") {
  Rng rng(62);
  PauliOperator h = random_operator(rng, 2, 4, true);
  const double t = 0.0931;
  Instruction g = exact_evolution_gate(h, t, {0, 1});
  Instruction cg = controlled(g, 2);
  Eigen::MatrixXcd u = dense_evolution(h, t);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(8, 8);
  expect.block(4, 4, 4, 4) = u;
  REQUIRE(max_abs_diff(cg.to_matrix(), expect) < 1e-11);

  // control |0> leaves the target untouched
  StateVector s = StateVector::zero_state(3);
  s.apply_instruction(Instruction::named(Gate::H, {0}));
  StateVector before = s;
  s.apply_instruction(cg);
  REQUIRE(s.fidelity(before) == Catch::Approx(1.0));
}

TEST_CASE("trotter: single term is exact for any step count") {
  PauliOperator h = PauliOperator::from_terms(2, {{0.8, PauliString::parse("XY")}});
  const double t = 0.21;
  for (int steps : {1, 3}) {
    Circuit c = trotter_evolution_circuit(h, t, steps);
    REQUIRE(max_abs_diff(circuit_unitary(c), dense_evolution(h, t)) < 1e-12);
  }
}

TEST_CASE("trotter: commuting terms are exact at one step") {
  PauliOperator h = PauliOperator::from_terms(
      2, {{0.5, PauliString::parse("ZI")}, {-0.3, PauliString::parse("ZZ")}});
  Circuit c = trotter_evolution_circuit(h, 0.4, 1);
  REQUIRE(max_abs_diff(circuit_unitary(c), dense_evolution(h, 0.4)) < 1e-10);
}

TEST_CASE("trotter error decreases with steps") {
  PauliOperator h = PauliOperator::from_terms(
      1, {{1.0, PauliString::parse("X")}, {1.0, PauliString::parse("Z")}});
  const double t = 0.3;
  Eigen::MatrixXcd exact = dense_evolution(h, t);
  const double e8 = max_abs_diff(circuit_unitary(trotter_evolution_circuit(h, t, 8)), exact);
  const double e32 = max_abs_diff(circuit_unitary(trotter_evolution_circuit(h, t, 32)), exact);
  REQUIRE(e32 < e8);
  REQUIRE(e32 < 4.2 * e8 / 4.0);  // first order: roughly 1/steps

  Rng rng(63);
  PauliOperator h2 = random_operator(rng, 2, 4, true);
  Eigen::MatrixXcd exact2 = dense_evolution(h2, t);
  const double f8 = max_abs_diff(circuit_unitary(trotter_evolution_circuit(h2, t, 8)), exact2);
  const double f32 = max_abs_diff(circuit_unitary(trotter_evolution_circuit(h2, t, 32)), exact2);
  REQUIRE(f32 < f8);
}

TEST_CASE("controlled trotter matches the controlled exact gate") {
  Rng rng(64);
  PauliOperator h = random_operator(rng, 2, 3, true);
  h.add_term(0.37, PauliString::identity(2));  // identity part becomes a control phase
  h.canonicalize();
  const double t = 0.11;

  Circuit c(3, 0);
  append_controlled_trotter(c, h, t, 64, 2, {0, 1});
  Eigen::MatrixXcd approx = circuit_unitary(c);

  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Identity(8, 8);
  expect.block(4, 4, 4, 4) = dense_evolution(h, t);
  REQUIRE(max_abs_diff(approx, expect) < 2e-3);

  // commuting instance is exact at one step
  PauliOperator hc = PauliOperator::from_terms(
      2, {{0.5, PauliString::parse("ZI")}, {0.25, PauliString::parse("IZ")},
          {0.37, PauliString::parse("II")}});
  Circuit cc(3, 0);
  append_controlled_trotter(cc, hc, t, 1, 2, {0, 1});
  Eigen::MatrixXcd expc = Eigen::MatrixXcd::Identity(8, 8);
  expc.block(4, 4, 4, 4) = dense_evolution(hc, t);
  REQUIRE(max_abs_diff(circuit_unitary(cc), expc) < 1e-11);
}

TEST_CASE("euler zxz reproduces random single-qubit unitaries") {
  Rng rng(65);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::Matrix2cd u = gate_matrix(Gate::RZ, {normal(rng)}) *
                         gate_matrix(Gate::RY, {normal(rng)}) *
                         gate_matrix(Gate::Phase, {normal(rng)});
    EulerZXZ e = euler_zxz(u);
    Eigen::Matrix2cd rebuilt = std::exp(cplx(0, e.alpha)) * gate_matrix(Gate::RZ, {e.c}) *
                               gate_matrix(Gate::RX, {e.b}) * gate_matrix(Gate::RZ, {e.a});
    REQUIRE(max_abs_diff(rebuilt, u) < 1e-12);
  }
  // diagonal and antidiagonal corner cases
  for (const Eigen::Matrix2cd& u :
       {gate_matrix(Gate::Z, {}), gate_matrix(Gate::X, {}), gate_matrix(Gate::Phase, {0.4})}) {
    EulerZXZ e = euler_zxz(u);
    Eigen::Matrix2cd rebuilt = std::exp(cplx(0, e.alpha)) * gate_matrix(Gate::RZ, {e.c}) *
                               gate_matrix(Gate::RX, {e.b}) * gate_matrix(Gate::RZ, {e.a});
    REQUIRE(max_abs_diff(rebuilt, u) < 1e-12);
  }
}

TEST_CASE("pauli rotation expansion to basic gates is exact") {
  Rng rng(66);
  for (int trial = 0; trial < 12; ++trial) {
    PauliString p = random_string(rng, 3);
    if (p.is_identity()) continue;
    const double theta = 2 * M_PI * uniform01(rng) - M_PI;
    Circuit native(4, 0);
    std::vector<int> targets = {0, 1, 3};
    native.add(Instruction::pauli_rot(p, theta, targets));
    Circuit basic = expand_pauli_rotations(native);
    for (const Instruction& in : basic.instructions()) {
      REQUIRE(in.kind == InstrKind::NamedGate);
    }
    REQUIRE(max_abs_diff(circuit_unitary(basic), circuit_unitary(native)) < 1e-12);
  }
}
