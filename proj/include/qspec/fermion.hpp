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

#include <array>
#include <stdexcept>
#include <vector>

#include "qspec/pauli.hpp"
#include "qspec/tensor_io.hpp"

namespace qspec {

enum class Spin : std::uint8_t { Alpha = 0, Beta = 1 };

struct LadderOp {
  int mode = 0;
  Spin spin = Spin::Alpha;
  bool dagger = false;
};

struct FermionTerm {
  cplx coeff;
  std::vector<LadderOp> ops;  // product, leftmost factor first
};

// Weighted sum of ladder-operator products over spatial modes with spin.
// Normal ordering is not required on input.
class FermionOperator {
 public:
  FermionOperator() = default;

  void add_term(cplx coeff, std::vector<LadderOp> ops) {
    terms_.push_back({coeff, std::move(ops)});
  }

  const std::vector<FermionTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  FermionOperator& operator+=(const FermionOperator& other) {
    for (const auto& t : other.terms_) terms_.push_back(t);
    return *this;
  }

 private:
  std::vector<FermionTerm> terms_;
};

// Spin blocks are ordered all-alpha modes first, then all-beta.
inline int spin_orbital_index(int mode, Spin s, int n_modes_per_spin) {
  return mode + (s == Spin::Beta ? n_modes_per_spin : 0);
}

// Jordan-Wigner image of a single ladder operator on spin-orbital q:
//   a_q      = Z_{q-1} ... Z_0 (X_q + iY_q)/2
//   a_q^dag  = Z_{q-1} ... Z_0 (X_q - iY_q)/2
inline PauliOperator jw_ladder(int q, bool dagger, int n_qubits) {
  if (q < 0 || q >= n_qubits) throw std::out_of_range("jw_ladder: index out of range");
  PauliString xs = PauliString::identity(n_qubits);
  PauliString ys = PauliString::identity(n_qubits);
  for (int k = 0; k < q; ++k) {
    xs.set(k, Axis::Z);
    ys.set(k, Axis::Z);
  }
  xs.set(q, Axis::X);
  ys.set(q, Axis::Y);
  PauliOperator op(n_qubits);
  op.add_term(0.5, xs);
  op.add_term(dagger ? cplx(0, -0.5) : cplx(0, 0.5), ys);
  return op;
}

// Maps a fermionic operator onto 2 * n_modes_per_spin qubits. The image of
// an empty operator is the zero operator.
inline PauliOperator jordan_wigner(const FermionOperator& f, int n_modes_per_spin) {
  const int n_qubits = 2 * n_modes_per_spin;
  PauliOperator out(n_qubits);
  for (const FermionTerm& term : f.terms()) {
    PauliOperator prod = PauliOperator::identity(n_qubits, term.coeff);
    for (const LadderOp& l : term.ops) {
      if (l.mode < 0 || l.mode >= n_modes_per_spin) {
        throw std::out_of_range("jordan_wigner: mode index out of range");
      }
      prod = prod * jw_ladder(spin_orbital_index(l.mode, l.spin, n_modes_per_spin),
                              l.dagger, n_qubits);
    }
    out += prod;
  }
  out.canonicalize();
  return out;
}

namespace detail {

inline void require_square(const TensorData& t, const char* what) {
  if (t.rank() != 2 || t.dims[0] != t.dims[1]) {
    throw std::invalid_argument(std::string(what) + ": rank-2 square tensor expected");
  }
}

inline void require_symmetric(const TensorData& t, const char* what, double tol = 1e-10) {
  require_square(t, what);
  const std::size_t n = t.dims[0];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(t.at({i, j}) - t.at({j, i})) > tol) {
        throw std::invalid_argument(std::string(what) + ": symmetry violated beyond tolerance");
      }
    }
  }
}

}  // namespace detail

// One- plus two-body spin-free Hamiltonian from a Hermitian one-body tensor
// and a chemist-convention two-electron tensor with 8-fold real symmetry:
//   sum_{ij,s} t_ij a+_{is} a_{js}
//   + 1/2 sum_{ijkl,st} (ij|kl) a+_{is} a+_{kt} a_{lt} a_{js}
inline FermionOperator assemble_spin_free(const TensorData& t, const TensorData& eri,
                                          double tol = 1e-10) {
  detail::require_symmetric(t, "assemble_spin_free: t", tol);
  const std::size_t n = t.dims[0];
  if (eri.rank() != 4 ||
      eri.dims != std::vector<std::size_t>{n, n, n, n}) {
    throw std::invalid_argument("assemble_spin_free: eri must be rank 4 over the same modes");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const double v = eri.at({i, j, k, l});
          const double alts[] = {eri.at({j, i, k, l}), eri.at({i, j, l, k}),
                                 eri.at({k, l, i, j})};
          for (double a : alts) {
            if (std::abs(v - a) > tol) {
              throw std::invalid_argument(
                  "assemble_spin_free: eri 8-fold symmetry violated beyond tolerance");
            }
          }
        }

  FermionOperator op;
  const Spin spins[2] = {Spin::Alpha, Spin::Beta};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double tij = t.at({i, j});
      if (tij != 0.0) {
        for (Spin s : spins) {
          op.add_term(tij, {{static_cast<int>(i), s, true}, {static_cast<int>(j), s, false}});
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          const double v = eri.at({i, j, k, l});
          if (v == 0.0) continue;
          for (Spin s : spins) {
            for (Spin tau : spins) {
              op.add_term(0.5 * v, {{static_cast<int>(i), s, true},
                                    {static_cast<int>(k), tau, true},
                                    {static_cast<int>(l), tau, false},
                                    {static_cast<int>(j), s, false}});
            }
          }
        }
  return op;
}

// Cartesian triplet operators contracted with one-body coefficient
// matrices: sum_pq h_pq . T_pq, with
//   T^X_ij = (a+_{ia} a_{jb} + a+_{ib} a_{ja}) / 2
//   T^Y_ij = (a+_{ia} a_{jb} - a+_{ib} a_{ja}) / 2i
//   T^Z_ij = (a+_{ia} a_{ja} - a+_{ib} a_{jb}) / 2
inline FermionOperator assemble_mfso(const std::array<TensorData, 3>& h, double tol = 1e-10) {
  const std::size_t n = h[0].rank() == 2 ? h[0].dims[0] : 0;
  for (const TensorData& c : h) {
    detail::require_square(c, "assemble_mfso: h");
    if (c.dims[0] != n) throw std::invalid_argument("assemble_mfso: component dimension mismatch");
    detail::require_symmetric(c, "assemble_mfso: h", tol);
  }
  FermionOperator op;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const int i = static_cast<int>(p), j = static_cast<int>(q);
      const double hx = h[0].at({p, q}), hy = h[1].at({p, q}), hz = h[2].at({p, q});
      if (hx != 0.0) {
        op.add_term(0.5 * hx, {{i, Spin::Alpha, true}, {j, Spin::Beta, false}});
        op.add_term(0.5 * hx, {{i, Spin::Beta, true}, {j, Spin::Alpha, false}});
      }
      if (hy != 0.0) {
        op.add_term(cplx(0, -0.5) * hy, {{i, Spin::Alpha, true}, {j, Spin::Beta, false}});
        op.add_term(cplx(0, 0.5) * hy, {{i, Spin::Beta, true}, {j, Spin::Alpha, false}});
      }
      if (hz != 0.0) {
        op.add_term(0.5 * hz, {{i, Spin::Alpha, true}, {j, Spin::Alpha, false}});
        op.add_term(-0.5 * hz, {{i, Spin::Beta, true}, {j, Spin::Beta, false}});
      }
    }
  }
  return op;
}

// Mean-field SOC coefficient matrices from one-/two-body SOC integrals and
// a density matrix:
//   h_pq = t_pq + sum_rs D_rs (v_pqrs - 3/2 (v_pssr + v_rqps))
// computed per Cartesian component. Pure tensor contraction; all inputs are
// caller-supplied.
inline std::array<TensorData, 3> mfso_coefficients(const std::array<TensorData, 3>& t_so,
                                                   const std::array<TensorData, 3>& v_so,
                                                   const TensorData& density) {
  const std::size_t n = t_so[0].rank() == 2 ? t_so[0].dims[0] : 0;
  detail::require_square(density, "mfso_coefficients: D");
  if (density.dims[0] != n) {
    throw std::invalid_argument("mfso_coefficients: density dimension mismatch");
  }
  std::array<TensorData, 3> h;
  for (int c = 0; c < 3; ++c) {
    detail::require_square(t_so[static_cast<std::size_t>(c)], "mfso_coefficients: t");
    const TensorData& v = v_so[static_cast<std::size_t>(c)];
    if (v.rank() != 4 || v.dims != std::vector<std::size_t>{n, n, n, n}) {
      throw std::invalid_argument("mfso_coefficients: v must be rank 4 over the same modes");
    }
    TensorData out = TensorData::zeros({n, n});
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        double acc = t_so[static_cast<std::size_t>(c)].at({p, q});
        for (std::size_t r = 0; r < n; ++r) {
          for (std::size_t s = 0; s < n; ++s) {
            acc += density.at({r, s}) *
                   (v.at({p, q, r, s}) -
                    1.5 * (v.at({p, s, s, r}) + v.at({r, q, p, s})));
          }
        }
        out.at({p, q}) = acc;
      }
    }
    h[static_cast<std::size_t>(c)] = std::move(out);
  }
  return h;
}

}  // namespace qspec
