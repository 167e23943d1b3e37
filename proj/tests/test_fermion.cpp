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

#include "qspec/fermion.hpp"
#include "qspec/pauli.hpp"
#include "test_helpers.hpp"

using namespace qspec;
using namespace qspec::testing;

namespace {

// Occupation-basis oracle, independent of the Jordan-Wigner code path:
// basis index bit q holds the occupation of spin-orbital q and
//   a+_q |n> = (-1)^{sum_{k<q} n_k} |n + e_q>.
Eigen::MatrixXcd ladder_matrix(int q, bool dagger, int n_so) {
  const Eigen::Index dim = Eigen::Index{1} << n_so;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const bool occupied = (b >> q) & 1;
    if (dagger == occupied) continue;
    int parity = 0;
    for (int k = 0; k < q; ++k) parity ^= static_cast<int>((b >> k) & 1);
    const Eigen::Index b2 = b ^ (Eigen::Index{1} << q);
    m(b2, b) = parity ? -1.0 : 1.0;
  }
  return m;
}

Eigen::MatrixXcd fermion_matrix(const FermionOperator& f, int n_modes) {
  const int n_so = 2 * n_modes;
  const Eigen::Index dim = Eigen::Index{1} << n_so;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const FermionTerm& t : f.terms()) {
    Eigen::MatrixXcd prod = Eigen::MatrixXcd::Identity(dim, dim);
    for (const LadderOp& l : t.ops) {
      prod = prod * ladder_matrix(spin_orbital_index(l.mode, l.spin, n_modes), l.dagger, n_so);
    }
    m += t.coeff * prod;
  }
  return m;
}

}  // namespace

TEST_CASE("jw image of a single creation operator") {
  // one spin-orbital register: a+ = 0.5 X - 0.5i Y, i.e. [[0,0],[1,0]]
  PauliOperator adag = jw_ladder(0, true, 1);
  Eigen::MatrixXcd m = pauli_to_matrix(adag);
  Eigen::MatrixXcd expect(2, 2);
  expect << 0, 0, 1, 0;
  REQUIRE(max_abs_diff(m, expect) < 1e-15);
  REQUIRE(adag.n_terms() == 2);

  // number operator a+ a = 0.5 I - 0.5 Z
  PauliOperator num = adag * jw_ladder(0, false, 1);
  Eigen::MatrixXcd mn = pauli_to_matrix(num);
  Eigen::MatrixXcd dn(2, 2);
  dn << 0, 0, 0, 1;
  REQUIRE(max_abs_diff(mn, dn) < 1e-15);
}

TEST_CASE("jw of the zero operator is empty") {
  FermionOperator f;
  PauliOperator p = jordan_wigner(f, 2);
  REQUIRE(p.empty());
  REQUIRE(p.n_qubits() == 4);
}

TEST_CASE("jw rejects out-of-range modes") {
  FermionOperator f;
  f.add_term(1.0, {{3, Spin::Alpha, true}});
  REQUIRE_THROWS_AS(jordan_wigner(f, 2), std::out_of_range);
}

TEST_CASE("jw image matches the occupation-basis oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 8; ++trial) {
    const int n_modes = 2;
    FermionOperator f;
    const int n_terms = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < n_terms; ++t) {
      std::vector<LadderOp> ops;
      const int len = 1 + static_cast<int>(rng() % 4);
      for (int k = 0; k < len; ++k) {
        ops.push_back({static_cast<int>(rng() % n_modes),
                       rng() % 2 ? Spin::Beta : Spin::Alpha, rng() % 2 == 0});
      }
      f.add_term(cplx(normal(rng), normal(rng)), std::move(ops));
    }
    Eigen::MatrixXcd jw = pauli_to_matrix(jordan_wigner(f, n_modes));
    Eigen::MatrixXcd oracle = fermion_matrix(f, n_modes);
    REQUIRE(max_abs_diff(jw, oracle) < 1e-12);
  }
}

TEST_CASE("spin-free assembly: single-orbital one-body term") {
  TensorData t = TensorData::zeros({1, 1});
  t.at({0, 0}) = 1.0;
  TensorData eri = TensorData::zeros({1, 1, 1, 1});
  FermionOperator f = assemble_spin_free(t, eri);
  REQUIRE(f.terms().size() == 2);
  // 1 * (n_alpha + n_beta): diag(0, 1, 1, 2) over (beta, alpha) bits
  Eigen::MatrixXcd m = fermion_matrix(f, 1);
  Eigen::VectorXcd d = m.diagonal();
  REQUIRE(std::abs(d(0)) < 1e-15);
  REQUIRE(std::abs(d(1) - 1.0) < 1e-15);
  REQUIRE(std::abs(d(2) - 1.0) < 1e-15);
  REQUIRE(std::abs(d(3) - 2.0) < 1e-15);
  REQUIRE(max_abs_diff(m, Eigen::MatrixXcd(d.asDiagonal())) < 1e-15);
}

TEST_CASE("spin-free assembly: on-site repulsion") {
  const double u = 2.25;
  TensorData t = TensorData::zeros({1, 1});
  TensorData eri = TensorData::zeros({1, 1, 1, 1});
  eri.at({0, 0, 0, 0}) = u;
  FermionOperator f = assemble_spin_free(t, eri);
  // expands to u * n_alpha n_beta: only the doubly occupied state is raised
  Eigen::MatrixXcd m = fermion_matrix(f, 1);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
  expect(3, 3) = u;
  REQUIRE(max_abs_diff(m, expect) < 1e-12);
}

TEST_CASE("spin-free assembly: one-body block matches the dense oracle") {
  Rng rng(22);
  TensorData t = TensorData::zeros({2, 2});
  t.at({0, 0}) = normal(rng);
  t.at({1, 1}) = normal(rng);
  const double off = normal(rng);
  t.at({0, 1}) = off;
  t.at({1, 0}) = off;
  TensorData eri = TensorData::zeros({2, 2, 2, 2});
  FermionOperator f = assemble_spin_free(t, eri);
  Eigen::MatrixXcd jw = pauli_to_matrix(jordan_wigner(f, 2));
  Eigen::MatrixXcd oracle = fermion_matrix(f, 2);
  REQUIRE(max_abs_diff(jw, oracle) < 1e-12);
  REQUIRE(max_abs_diff(jw, jw.adjoint()) < 1e-12);
}

TEST_CASE("spin-free assembly validates symmetries") {
  TensorData t = TensorData::zeros({2, 2});
  t.at({0, 1}) = 0.5;  // not symmetric
  TensorData eri = TensorData::zeros({2, 2, 2, 2});
  REQUIRE_THROWS_AS(assemble_spin_free(t, eri), std::invalid_argument);

  TensorData t2 = TensorData::zeros({2, 2});
  TensorData bad = TensorData::zeros({2, 2, 2, 2});
  bad.at({0, 1, 0, 0}) = 0.3;  // (01|00) != (10|00)
  REQUIRE_THROWS_AS(assemble_spin_free(t2, bad), std::invalid_argument);
}

TEST_CASE("mfso assembly: z component") {
  std::array<TensorData, 3> h = {TensorData::zeros({1, 1}), TensorData::zeros({1, 1}),
                                 TensorData::zeros({1, 1})};
  h[2].at({0, 0}) = 1.0;
  FermionOperator f = assemble_mfso(h);
  // 0.5 (n_alpha - n_beta)
  Eigen::MatrixXcd m = fermion_matrix(f, 1);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(4, 4);
  expect(1, 1) = 0.5;
  expect(2, 2) = -0.5;
  REQUIRE(max_abs_diff(m, expect) < 1e-15);
}

TEST_CASE("mfso assembly: zero input and x component hermiticity") {
  std::array<TensorData, 3> zero = {TensorData::zeros({1, 1}), TensorData::zeros({1, 1}),
                                    TensorData::zeros({1, 1})};
  REQUIRE(assemble_mfso(zero).empty());

  std::array<TensorData, 3> hx = zero;
  hx[0].at({0, 0}) = 1.0;
  FermionOperator f = assemble_mfso(hx);
  PauliOperator p = jordan_wigner(f, 1);
  REQUIRE(p.is_hermitian());
  // 0.5 (a+_a a_b + a+_b a_a): couples the singly occupied states
  Eigen::MatrixXcd m = fermion_matrix(f, 1);
  REQUIRE(std::abs(m(1, 2) - 0.5) < 1e-15);
  REQUIRE(std::abs(m(2, 1) - 0.5) < 1e-15);
  REQUIRE(max_abs_diff(pauli_to_matrix(p), m) < 1e-14);
}

TEST_CASE("mfso assembly rejects mismatched dimensions") {
  std::array<TensorData, 3> h = {TensorData::zeros({2, 2}), TensorData::zeros({1, 1}),
                                 TensorData::zeros({2, 2})};
  REQUIRE_THROWS_AS(assemble_mfso(h), std::invalid_argument);
}

TEST_CASE("mfso coefficient contraction") {
  Rng rng(23);
  const std::size_t n = 2;
  auto rand_t2 = [&](bool sym) {
    TensorData td = TensorData::zeros({n, n});
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) td.at({i, j}) = normal(rng);
    if (sym) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) td.at({i, j}) = td.at({j, i});
    }
    return td;
  };
  std::array<TensorData, 3> t_so = {rand_t2(false), rand_t2(false), rand_t2(false)};
  std::array<TensorData, 3> v_so;
  for (auto& v : v_so) {
    v = TensorData::zeros({n, n, n, n});
    for (auto& x : v.values) x = normal(rng);
  }
  TensorData d = rand_t2(false);

  auto h = mfso_coefficients(t_so, v_so, d);
  // hand contraction with a different loop nesting
  for (int c = 0; c < 3; ++c) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        double expect = t_so[static_cast<std::size_t>(c)].at({p, q});
        for (std::size_t s = 0; s < n; ++s) {
          for (std::size_t r = 0; r < n; ++r) {
            const auto& v = v_so[static_cast<std::size_t>(c)];
            expect += d.at({r, s}) * v.at({p, q, r, s});
            expect -= 1.5 * d.at({r, s}) * v.at({p, s, s, r});
            expect -= 1.5 * d.at({r, s}) * v.at({r, q, p, s});
          }
        }
        REQUIRE(std::abs(h[static_cast<std::size_t>(c)].at({p, q}) - expect) < 1e-12);
      }
    }
  }
}
