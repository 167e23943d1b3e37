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
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qspec/pauli.hpp"

namespace qspec {

// Z2 symmetry sector selection: a single Hermitian Pauli string, the qubit
// it is rotated onto, and the +-1 eigensector to keep.
struct SymmetrySpec {
  PauliString symmetry;
  int target_qubit = 0;
  int sector = +1;
};

enum class CliffordGate { H, S, Sdg, X, Z, CNOT };

struct CliffordOp {
  CliffordGate gate;
  int q0 = 0;
  int q1 = -1;  // CNOT target
};

namespace detail {

struct AxisImage {
  Axis axis;
  double sign;
};

// g^dag A g for a single-qubit Clifford, derived from dense matrices once.
inline AxisImage conj_axis_1q(CliffordGate g, Axis a) {
  static const auto tables = [] {
    std::map<CliffordGate, std::array<AxisImage, 4>> t;
    auto build = [](const Eigen::Matrix2cd& m) {
      std::array<AxisImage, 4> row{};
      for (int ia = 0; ia < 4; ++ia) {
        Eigen::Matrix2cd img = m.adjoint() * axis_matrix(static_cast<Axis>(ia)) * m;
        bool found = false;
        for (int ib = 0; ib < 4 && !found; ++ib) {
          for (double sign : {1.0, -1.0}) {
            if ((img - sign * axis_matrix(static_cast<Axis>(ib))).cwiseAbs().maxCoeff() < 1e-12) {
              row[static_cast<std::size_t>(ia)] = {static_cast<Axis>(ib), sign};
              found = true;
              break;
            }
          }
        }
        if (!found) throw std::logic_error("non-Clifford conjugation");
      }
      return row;
    };
    Eigen::Matrix2cd h;
    h << 1, 1, 1, -1;
    h /= std::sqrt(2.0);
    Eigen::Matrix2cd s = Eigen::Matrix2cd::Identity();
    s(1, 1) = cplx(0, 1);
    t[CliffordGate::H] = build(h);
    t[CliffordGate::S] = build(s);
    t[CliffordGate::Sdg] = build(s.adjoint());
    t[CliffordGate::X] = build(axis_matrix(Axis::X));
    t[CliffordGate::Z] = build(axis_matrix(Axis::Z));
    return t;
  }();
  return tables.at(g)[static_cast<std::size_t>(a)];
}

struct PairImage {
  Axis a0, a1;
  double sign;
};

// CNOT^dag (A0 on control, A1 on target) CNOT, also table-derived.
inline PairImage conj_axes_cnot(Axis c, Axis t) {
  static const auto table = [] {
    std::array<PairImage, 16> rows{};
    Eigen::Matrix4cd cx = Eigen::Matrix4cd::Zero();
    cx(0, 0) = 1;
    cx(2, 2) = 1;
    cx(1, 3) = 1;
    cx(3, 1) = 1;  // control = local bit 0
    for (int ic = 0; ic < 4; ++ic) {
      for (int it = 0; it < 4; ++it) {
        PauliString p(std::vector<Axis>{static_cast<Axis>(ic), static_cast<Axis>(it)});
        Eigen::Matrix4cd img = cx.adjoint() * pauli_string_to_matrix(p) * cx;
        bool found = false;
        for (int jc = 0; jc < 4 && !found; ++jc) {
          for (int jt = 0; jt < 4 && !found; ++jt) {
            PauliString q(std::vector<Axis>{static_cast<Axis>(jc), static_cast<Axis>(jt)});
            Eigen::Matrix4cd ref = pauli_string_to_matrix(q);
            for (double sign : {1.0, -1.0}) {
              if ((img - sign * ref).cwiseAbs().maxCoeff() < 1e-12) {
                rows[static_cast<std::size_t>(ic * 4 + it)] = {static_cast<Axis>(jc),
                                                               static_cast<Axis>(jt), sign};
                found = true;
                break;
              }
            }
          }
        }
        if (!found) throw std::logic_error("CNOT conjugation table failure");
      }
    }
    return rows;
  }();
  return table[static_cast<std::size_t>(static_cast<int>(c) * 4 + static_cast<int>(t))];
}

inline void conj_term_in_place(PauliString& s, double& sign, const CliffordOp& op) {
  if (op.gate == CliffordGate::CNOT) {
    PairImage im = conj_axes_cnot(s.axis(op.q0), s.axis(op.q1));
    s.set(op.q0, im.a0);
    s.set(op.q1, im.a1);
    sign *= im.sign;
  } else {
    AxisImage im = conj_axis_1q(op.gate, s.axis(op.q0));
    s.set(op.q0, im.axis);
    sign *= im.sign;
  }
}

}  // namespace detail

// U^dag op U with U = gates[0] * gates[1] * ... as matrices.
inline PauliOperator clifford_conjugate(const PauliOperator& op,
                                        const std::vector<CliffordOp>& gates) {
  PauliOperator out(op.n_qubits());
  for (const auto& [c, s0] : op.terms()) {
    PauliString s = s0;
    double sign = 1.0;
    for (const CliffordOp& g : gates) detail::conj_term_in_place(s, sign, g);
    out.add_term(sign * c, s);
  }
  out.canonicalize();
  return out;
}

// Dense matrix of the gate product (for oracle checks).
inline Eigen::MatrixXcd clifford_matrix(const std::vector<CliffordOp>& gates, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  auto embed1 = [&](const Eigen::Matrix2cd& m, int q) {
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    const Eigen::Index bit = Eigen::Index{1} << q;
    for (Eigen::Index b = 0; b < dim; ++b) {
      const int i = (b & bit) ? 1 : 0;
      for (int j = 0; j < 2; ++j) {
        const Eigen::Index b2 = (b & ~bit) | (static_cast<Eigen::Index>(j) << q);
        full(b, b2) += m(i, j);
      }
    }
    return full;
  };
  for (const CliffordOp& g : gates) {
    Eigen::MatrixXcd gm;
    switch (g.gate) {
      case CliffordGate::H: {
        Eigen::Matrix2cd h;
        h << 1, 1, 1, -1;
        gm = embed1(h / std::sqrt(2.0), g.q0);
        break;
      }
      case CliffordGate::S: {
        Eigen::Matrix2cd s = Eigen::Matrix2cd::Identity();
        s(1, 1) = cplx(0, 1);
        gm = embed1(s, g.q0);
        break;
      }
      case CliffordGate::Sdg: {
        Eigen::Matrix2cd s = Eigen::Matrix2cd::Identity();
        s(1, 1) = cplx(0, -1);
        gm = embed1(s, g.q0);
        break;
      }
      case CliffordGate::X: gm = embed1(axis_matrix(Axis::X), g.q0); break;
      case CliffordGate::Z: gm = embed1(axis_matrix(Axis::Z), g.q0); break;
      case CliffordGate::CNOT: {
        gm = Eigen::MatrixXcd::Zero(dim, dim);
        const Eigen::Index cb = Eigen::Index{1} << g.q0;
        const Eigen::Index tb = Eigen::Index{1} << g.q1;
        for (Eigen::Index b = 0; b < dim; ++b) {
          gm((b & cb) ? (b ^ tb) : b, b) = 1.0;
        }
        break;
      }
    }
    u = u * gm;
  }
  return u;
}

// Builds the Clifford gate list mapping the symmetry string onto a single
// +X on the target qubit (at most one single-qubit gate per support qubit
// plus a CNOT chain collapsing onto the target).
inline std::vector<CliffordOp> tapering_clifford(const PauliString& symmetry, int target) {
  if (symmetry.is_identity()) {
    throw std::invalid_argument("tapering: symmetry must not be the identity string");
  }
  if (target < 0 || target >= symmetry.n_qubits()) {
    throw std::out_of_range("tapering: target qubit out of range");
  }
  if (symmetry.axis(target) == Axis::I) {
    throw std::invalid_argument("tapering: symmetry does not act on the target qubit");
  }
  std::vector<CliffordOp> gates;
  PauliString s = symmetry;
  double sign = 1.0;
  auto push = [&](CliffordOp op) {
    detail::conj_term_in_place(s, sign, op);
    gates.push_back(op);
  };
  for (int q = 0; q < s.n_qubits(); ++q) {
    if (s.axis(q) == Axis::Y) push({CliffordGate::S, q});
    if (s.axis(q) == Axis::Z) push({CliffordGate::H, q});
  }
  for (int q = 0; q < s.n_qubits(); ++q) {
    if (q != target && s.axis(q) == Axis::X) push({CliffordGate::CNOT, target, q});
  }
  if (sign < 0) push({CliffordGate::Z, target});
  if (!(s.weight() == 1 && s.axis(target) == Axis::X && sign > 0)) {
    throw std::logic_error("tapering: reduction did not reach +X on target");
  }
  return gates;
}

namespace detail {

inline PauliString drop_qubit(const PauliString& s, int target) {
  std::vector<Axis> axes;
  axes.reserve(static_cast<std::size_t>(s.n_qubits() - 1));
  for (int q = 0; q < s.n_qubits(); ++q) {
    if (q != target) axes.push_back(s.axis(q));
  }
  return PauliString(std::move(axes));
}

inline void check_symmetry(const PauliOperator& op, const SymmetrySpec& spec) {
  if (spec.symmetry.n_qubits() != op.n_qubits()) {
    throw std::invalid_argument("tapering: symmetry qubit count mismatch");
  }
  if (spec.sector != 1 && spec.sector != -1) {
    throw std::invalid_argument("tapering: sector must be +1 or -1");
  }
  for (const auto& [c, s] : op.terms()) {
    if (!s.commutes_with(spec.symmetry)) {
      throw std::invalid_argument("tapering: operator does not commute with the symmetry");
    }
  }
}

}  // namespace detail

// Sector operator on n-1 qubits. The spectrum of h(+1) together with
// h(-1) equals the spectrum of the input.
inline PauliOperator z2_taper(const PauliOperator& op, const SymmetrySpec& spec) {
  detail::check_symmetry(op, spec);
  const auto gates = tapering_clifford(spec.symmetry, spec.target_qubit);
  PauliOperator rotated = clifford_conjugate(op, gates);
  PauliOperator out(op.n_qubits() - 1);
  for (const auto& [c, s] : rotated.terms()) {
    const Axis a = s.axis(spec.target_qubit);
    if (a == Axis::I) {
      out.add_term(c, detail::drop_qubit(s, spec.target_qubit));
    } else if (a == Axis::X) {
      out.add_term(static_cast<double>(spec.sector) * c, detail::drop_qubit(s, spec.target_qubit));
    } else {
      // linear independence of Pauli strings makes this unreachable for a
      // commuting operator
      throw std::logic_error("tapering: rotated term does not commute with X on target");
    }
  }
  out.canonicalize();
  return out;
}

// Operator split into sector blocks: mu -> sum_{p,q} mu_pq (x) |p><q| over
// the +-1 eigenstates of X on the target qubit, in the rotated frame fixed
// by the same Clifford as z2_taper.
struct SectorBlocks {
  PauliOperator pp, pm, mp, mm;  // (p, q) in {(+,+), (+,-), (-,+), (-,-)}

  const PauliOperator& block(int p, int q) const {
    if (p == +1 && q == +1) return pp;
    if (p == +1 && q == -1) return pm;
    if (p == -1 && q == +1) return mp;
    if (p == -1 && q == -1) return mm;
    throw std::invalid_argument("sector labels must be +-1");
  }
};

inline SectorBlocks split_dipole_by_sector(const PauliOperator& mu, const SymmetrySpec& spec) {
  if (spec.symmetry.n_qubits() != mu.n_qubits()) {
    throw std::invalid_argument("split: symmetry qubit count mismatch");
  }
  const auto gates = tapering_clifford(spec.symmetry, spec.target_qubit);
  PauliOperator rotated = clifford_conjugate(mu, gates);
  const int nr = mu.n_qubits() - 1;
  SectorBlocks b{PauliOperator(nr), PauliOperator(nr), PauliOperator(nr), PauliOperator(nr)};
  for (const auto& [c, s] : rotated.terms()) {
    const PauliString rs = detail::drop_qubit(s, spec.target_qubit);
    switch (s.axis(spec.target_qubit)) {
      case Axis::I:
        b.pp.add_term(c, rs);
        b.mm.add_term(c, rs);
        break;
      case Axis::X:
        b.pp.add_term(c, rs);
        b.mm.add_term(-c, rs);
        break;
      case Axis::Z:
        // Z = |+><-| + |-><+| in the X eigenbasis
        b.pm.add_term(c, rs);
        b.mp.add_term(c, rs);
        break;
      case Axis::Y:
        // Y = i|+><-| - i|-><+|
        b.pm.add_term(cplx(0, 1) * c, rs);
        b.mp.add_term(cplx(0, -1) * c, rs);
        break;
    }
  }
  b.pp.canonicalize();
  b.pm.canonicalize();
  b.mp.canonicalize();
  b.mm.canonicalize();
  return b;
}

}  // namespace qspec
