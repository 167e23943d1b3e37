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
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qspec {

using cplx = std::complex<double>;

// Dense expansions are refused above this qubit count.
inline constexpr int kDenseLimit = 14;

// Coefficients below this magnitude are dropped during canonicalization.
inline constexpr double kCoeffPruneTol = 1e-12;

enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char axis_char(Axis a) { return "IXYZ"[static_cast<int>(a)]; }

inline Axis char_axis(char c) {
  switch (c) {
    case 'I': return Axis::I;
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
    default: throw std::invalid_argument(std::string("invalid Pauli character '") + c + "'");
  }
}

// Tensor product of single-qubit Paulis.
//
// Conventions (fixed project-wide):
//   * qubit 0 is the rightmost character of the printed string and the
//     least-significant bit of computational-basis labels;
//   * the dense matrix of a string is A_{n-1} (x) ... (x) A_0.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::vector<Axis> axes) : axes_(std::move(axes)) {}

  static PauliString identity(int n_qubits) {
    return PauliString(std::vector<Axis>(static_cast<std::size_t>(n_qubits), Axis::I));
  }

  // Single non-identity axis on one qubit.
  static PauliString single(int n_qubits, int qubit, Axis a) {
    PauliString p = identity(n_qubits);
    p.set(qubit, a);
    return p;
  }

  // Parses e.g. "IZXI" (leftmost character = highest qubit).
  static PauliString parse(std::string_view s) {
    std::vector<Axis> axes(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      axes[s.size() - 1 - i] = char_axis(s[i]);
    }
    return PauliString(std::move(axes));
  }

  int n_qubits() const { return static_cast<int>(axes_.size()); }

  Axis axis(int q) const { return axes_.at(static_cast<std::size_t>(q)); }

  void set(int q, Axis a) { axes_.at(static_cast<std::size_t>(q)) = a; }

  const std::vector<Axis>& axes() const { return axes_; }

  bool is_identity() const {
    return std::all_of(axes_.begin(), axes_.end(), [](Axis a) { return a == Axis::I; });
  }

  int weight() const {
    return static_cast<int>(std::count_if(axes_.begin(), axes_.end(),
                                          [](Axis a) { return a != Axis::I; }));
  }

  std::string str() const {
    std::string s(axes_.size(), 'I');
    for (std::size_t q = 0; q < axes_.size(); ++q) {
      s[axes_.size() - 1 - q] = axis_char(axes_[q]);
    }
    return s;
  }

  bool commutes_with(const PauliString& other) const {
    if (n_qubits() != other.n_qubits()) {
      throw std::invalid_argument("PauliString size mismatch");
    }
    int anti = 0;
    for (std::size_t q = 0; q < axes_.size(); ++q) {
      Axis a = axes_[q], b = other.axes_[q];
      if (a != Axis::I && b != Axis::I && a != b) ++anti;
    }
    return anti % 2 == 0;
  }

  friend bool operator==(const PauliString& a, const PauliString& b) { return a.axes_ == b.axes_; }
  friend bool operator<(const PauliString& a, const PauliString& b) { return a.axes_ < b.axes_; }

 private:
  std::vector<Axis> axes_;
};

// Product of two single-qubit axes: a*b = i^phase_pow * axis.
struct AxisProduct {
  Axis axis;
  int phase_pow;  // exponent of i, mod 4
};

inline AxisProduct axis_mul(Axis a, Axis b) {
  if (a == Axis::I) return {b, 0};
  if (b == Axis::I) return {a, 0};
  if (a == b) return {Axis::I, 0};
  // XY=iZ, YZ=iX, ZX=iY and the reversed orders pick up -i.
  static constexpr Axis third[4][4] = {
      {Axis::I, Axis::I, Axis::I, Axis::I},
      {Axis::I, Axis::I, Axis::Z, Axis::Y},
      {Axis::I, Axis::Z, Axis::I, Axis::X},
      {Axis::I, Axis::Y, Axis::X, Axis::I}};
  const int ia = static_cast<int>(a), ib = static_cast<int>(b);
  const bool cyclic = (ib - ia + 3) % 3 == 1;  // X->Y->Z->X
  return {third[ia][ib], cyclic ? 1 : 3};
}

struct StringProduct {
  PauliString string;
  int phase_pow;  // product = i^phase_pow * string
};

inline StringProduct mul(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("PauliString size mismatch");
  std::vector<Axis> out(static_cast<std::size_t>(a.n_qubits()));
  int phase = 0;
  for (int q = 0; q < a.n_qubits(); ++q) {
    AxisProduct p = axis_mul(a.axis(q), b.axis(q));
    out[static_cast<std::size_t>(q)] = p.axis;
    phase = (phase + p.phase_pow) % 4;
  }
  return {PauliString(std::move(out)), phase};
}

inline cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Weighted sum of Pauli strings. Hamiltonians, observables and symmetry
// operators are all carried in this form.
class PauliOperator {
 public:
  using Term = std::pair<cplx, PauliString>;

  PauliOperator() = default;
  explicit PauliOperator(int n_qubits) : n_qubits_(n_qubits) {}

  static PauliOperator zero(int n_qubits) { return PauliOperator(n_qubits); }

  static PauliOperator from_terms(int n_qubits, std::vector<Term> terms) {
    PauliOperator op(n_qubits);
    for (auto& t : terms) op.add_term(t.first, t.second);
    op.canonicalize();
    return op;
  }

  static PauliOperator identity(int n_qubits, cplx coeff = 1.0) {
    PauliOperator op(n_qubits);
    op.add_term(coeff, PauliString::identity(n_qubits));
    return op;
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t n_terms() const { return terms_.size(); }

  void add_term(cplx coeff, const PauliString& s) {
    if (s.n_qubits() != n_qubits_) {
      throw std::invalid_argument("term qubit count does not match operator");
    }
    terms_.emplace_back(coeff, s);
  }

  // Merges duplicate strings, prunes tiny coefficients, sorts terms into a
  // deterministic order. Idempotent.
  PauliOperator& canonicalize(double tol = kCoeffPruneTol) {
    std::map<PauliString, cplx> merged;
    for (const auto& [c, s] : terms_) merged[s] += c;
    terms_.clear();
    for (const auto& [s, c] : merged) {
      if (std::abs(c) >= tol) terms_.emplace_back(c, s);
    }
    return *this;
  }

  // Hermitian iff every canonical coefficient is real (Pauli strings are
  // Hermitian and linearly independent).
  bool is_hermitian(double tol = 1e-10) const {
    PauliOperator c = *this;
    c.canonicalize();
    for (const auto& [coeff, s] : c.terms_) {
      if (std::abs(coeff.imag()) > tol) return false;
    }
    return true;
  }

  cplx identity_coefficient() const {
    cplx c = 0.0;
    for (const auto& [coeff, s] : terms_) {
      if (s.is_identity()) c += coeff;
    }
    return c;
  }

  PauliOperator& operator*=(cplx f) {
    for (auto& [c, s] : terms_) c *= f;
    return *this;
  }

  PauliOperator& operator+=(const PauliOperator& other) {
    if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("operator size mismatch");
    for (const auto& t : other.terms_) terms_.push_back(t);
    canonicalize();
    return *this;
  }

  PauliOperator& operator-=(const PauliOperator& other) {
    PauliOperator neg = other;
    neg *= -1.0;
    return (*this += neg);
  }

  friend PauliOperator operator+(PauliOperator a, const PauliOperator& b) { return a += b; }
  friend PauliOperator operator-(PauliOperator a, const PauliOperator& b) { return a -= b; }
  friend PauliOperator operator*(cplx f, PauliOperator a) {
    a *= f;
    return a;
  }

  friend PauliOperator operator*(const PauliOperator& a, const PauliOperator& b) {
    if (a.n_qubits_ != b.n_qubits_) throw std::invalid_argument("operator size mismatch");
    PauliOperator out(a.n_qubits_);
    for (const auto& [ca, sa] : a.terms_) {
      for (const auto& [cb, sb] : b.terms_) {
        StringProduct p = mul(sa, sb);
        out.add_term(ca * cb * i_power(p.phase_pow), p.string);
      }
    }
    out.canonicalize();
    return out;
  }

  bool commutes_with(const PauliOperator& other, double tol = 1e-10) const {
    PauliOperator comm = (*this) * other - other * (*this);
    comm.canonicalize(tol);
    return comm.empty();
  }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, s] : terms_) {
      if (!first) os << " + ";
      os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i) " << s.str();
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  int n_qubits_ = 0;
  std::vector<Term> terms_;
};

inline const Eigen::Matrix2cd& axis_matrix(Axis a) {
  static const Eigen::Matrix2cd mats[4] = {
      (Eigen::Matrix2cd() << 1, 0, 0, 1).finished(),
      (Eigen::Matrix2cd() << 0, 1, 1, 0).finished(),
      (Eigen::Matrix2cd() << 0, cplx(0, -1), cplx(0, 1), 0).finished(),
      (Eigen::Matrix2cd() << 1, 0, 0, -1).finished()};
  return mats[static_cast<int>(a)];
}

inline Eigen::MatrixXcd pauli_string_to_matrix(const PauliString& s) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = s.n_qubits() - 1; q >= 0; --q) {
    m = Eigen::kroneckerProduct(m, axis_matrix(s.axis(q))).eval();
  }
  return m;
}

// Kronecker-product expansion of the operator. Oracle backbone for the
// test suites; refuses to materialize anything above kDenseLimit qubits.
inline Eigen::MatrixXcd pauli_to_matrix(const PauliOperator& op, int dense_limit = kDenseLimit) {
  if (op.n_qubits() > dense_limit) {
    throw std::invalid_argument("pauli_to_matrix: operator exceeds dense limit");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << op.n_qubits());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [c, s] : op.terms()) {
    m += c * pauli_string_to_matrix(s);
  }
  return m;
}

// --- text format -----------------------------------------------------------
//
// One term per line: `<re> <im> <string>`, e.g. `0.5 0.0 IZXI`.
// `#` starts a comment; blank lines are ignored.

inline PauliOperator parse_pauli_operator(std::istream& in) {
  std::vector<PauliOperator::Term> terms;
  int n_qubits = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double re, im;
    std::string s;
    if (!(ls >> re)) continue;  // blank
    if (!(ls >> im >> s)) {
      throw std::invalid_argument("pauli text: malformed line " + std::to_string(lineno));
    }
    PauliString ps = PauliString::parse(s);
    if (n_qubits < 0) n_qubits = ps.n_qubits();
    if (ps.n_qubits() != n_qubits) {
      throw std::invalid_argument("pauli text: inconsistent string length at line " +
                                  std::to_string(lineno));
    }
    terms.emplace_back(cplx(re, im), ps);
  }
  if (n_qubits < 0) throw std::invalid_argument("pauli text: no terms found");
  return PauliOperator::from_terms(n_qubits, std::move(terms));
}

inline PauliOperator parse_pauli_operator(const std::string& text) {
  std::istringstream in(text);
  return parse_pauli_operator(in);
}

inline void write_pauli_operator(std::ostream& out, const PauliOperator& op) {
  char buf[80];
  for (const auto& [c, s] : op.terms()) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g ", c.real(), c.imag());
    out << buf << s.str() << "\n";
  }
}

}  // namespace qspec
