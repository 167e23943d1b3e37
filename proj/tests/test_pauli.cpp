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
#include <sstream>

#include "qspec/pauli.hpp"
#include "test_helpers.hpp"

using namespace qspec;
using namespace qspec::testing;

TEST_CASE("pauli string parse and print round-trip") {
  PauliString p = PauliString::parse("IZXI");
  REQUIRE(p.n_qubits() == 4);
  // qubit 0 is the rightmost character
  REQUIRE(p.axis(0) == Axis::I);
  REQUIRE(p.axis(1) == Axis::X);
  REQUIRE(p.axis(2) == Axis::Z);
  REQUIRE(p.axis(3) == Axis::I);
  REQUIRE(p.str() == "IZXI");
  REQUIRE(p.weight() == 2);
  REQUIRE_THROWS_AS(PauliString::parse("IQ"), std::invalid_argument);
}

TEST_CASE("single-qubit pauli products carry the right phases") {
  auto check = [](const char* a, const char* b, const char* prod, int phase) {
    StringProduct r = mul(PauliString::parse(a), PauliString::parse(b));
    REQUIRE(r.string.str() == prod);
    REQUIRE(r.phase_pow == phase);
  };
  check("X", "Y", "Z", 1);   // XY = iZ
  check("Y", "X", "Z", 3);   // YX = -iZ
  check("Y", "Z", "X", 1);
  check("Z", "Y", "X", 3);
  check("Z", "X", "Y", 1);
  check("X", "Z", "Y", 3);
  check("X", "X", "I", 0);
  check("I", "Y", "Y", 0);
}

TEST_CASE("string multiplication matches dense matrices") {
  Rng rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    PauliString a = random_string(rng, 3), b = random_string(rng, 3);
    StringProduct r = mul(a, b);
    Eigen::MatrixXcd lhs = pauli_string_to_matrix(a) * pauli_string_to_matrix(b);
    Eigen::MatrixXcd rhs = i_power(r.phase_pow) * pauli_string_to_matrix(r.string);
    REQUIRE(max_abs_diff(lhs, rhs) < 1e-14);
  }
}

TEST_CASE("commutation check agrees with matrices") {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    PauliString a = random_string(rng, 3), b = random_string(rng, 3);
    Eigen::MatrixXcd ma = pauli_string_to_matrix(a), mb = pauli_string_to_matrix(b);
    const double comm_norm = (ma * mb - mb * ma).cwiseAbs().maxCoeff();
    REQUIRE(a.commutes_with(b) == (comm_norm < 1e-12));
  }
}

TEST_CASE("canonicalization merges, prunes and is idempotent") {
  PauliOperator op(2);
  op.add_term(0.5, PauliString::parse("XZ"));
  op.add_term(cplx(0.25, 0.1), PauliString::parse("XZ"));
  op.add_term(1e-15, PauliString::parse("YY"));
  op.canonicalize();
  REQUIRE(op.n_terms() == 1);
  REQUIRE(op.terms()[0].first == cplx(0.75, 0.1));

  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    PauliOperator a = random_operator(rng, 3, 8, false);
    PauliOperator once = a;
    once.canonicalize();
    PauliOperator twice = once;
    twice.canonicalize();
    REQUIRE(once.terms() == twice.terms());
  }
}

TEST_CASE("hermiticity is equivalent to real canonical coefficients") {
  Rng rng(14);
  PauliOperator h = random_operator(rng, 3, 6, true);
  REQUIRE(h.is_hermitian());
  Eigen::MatrixXcd m = pauli_to_matrix(h);
  REQUIRE(max_abs_diff(m, m.adjoint()) < 1e-12);

  PauliOperator g = h;
  g.add_term(cplx(0, 0.3), PauliString::parse("XYZ"));
  g.canonicalize();
  REQUIRE_FALSE(g.is_hermitian());
}

TEST_CASE("dense expansion of simple operators") {
  // 1*Z -> diag(1, -1)
  PauliOperator z = PauliOperator::from_terms(1, {{1.0, PauliString::parse("Z")}});
  Eigen::MatrixXcd mz = pauli_to_matrix(z);
  REQUIRE(mz(0, 0) == cplx(1, 0));
  REQUIRE(mz(1, 1) == cplx(-1, 0));
  REQUIRE(std::abs(mz(0, 1)) + std::abs(mz(1, 0)) == 0.0);

  // 0.5X + 0.5Y -> [[0, 0.5-0.5i], [0.5+0.5i, 0]]
  PauliOperator xy = PauliOperator::from_terms(
      1, {{0.5, PauliString::parse("X")}, {0.5, PauliString::parse("Y")}});
  Eigen::MatrixXcd mxy = pauli_to_matrix(xy);
  REQUIRE(std::abs(mxy(0, 1) - cplx(0.5, -0.5)) < 1e-15);
  REQUIRE(std::abs(mxy(1, 0) - cplx(0.5, 0.5)) < 1e-15);
}

TEST_CASE("dense expansion linearity") {
  Rng rng(15);
  PauliOperator a = random_operator(rng, 3, 5, false);
  PauliOperator b = random_operator(rng, 3, 5, false);
  const cplx fa(0.37, -1.2), fb(-2.0, 0.55);
  Eigen::MatrixXcd lhs = pauli_to_matrix(fa * a + fb * b);
  Eigen::MatrixXcd rhs = fa * pauli_to_matrix(a) + fb * pauli_to_matrix(b);
  REQUIRE(max_abs_diff(lhs, rhs) < 1e-13);
}

TEST_CASE("dense expansion respects the size limit") {
  PauliOperator big = PauliOperator::identity(15);
  REQUIRE_THROWS_AS(pauli_to_matrix(big), std::invalid_argument);
}

TEST_CASE("operator text format round-trip") {
  const std::string text =
      "# test operator\n"
      "0.5 0.0 IZXI\n"
      "\n"
      "-1.25 0.75 XYZZ  # trailing comment\n";
  PauliOperator op = parse_pauli_operator(text);
  REQUIRE(op.n_qubits() == 4);
  REQUIRE(op.n_terms() == 2);

  std::ostringstream os;
  write_pauli_operator(os, op);
  PauliOperator again = parse_pauli_operator(os.str());
  REQUIRE(again.terms() == op.terms());

  REQUIRE_THROWS_AS(parse_pauli_operator("0.5 0.0 XX\n1.0 0.0 XXX\n"),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(parse_pauli_operator("# nothing\n"), std::invalid_argument);
}
