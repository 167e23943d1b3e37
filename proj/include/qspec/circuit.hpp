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
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qspec/pauli.hpp"

namespace qspec {

// Rotation sign conventions, fixed project-wide:
//   R_A(theta) = exp(-i theta A / 2) for A in {X, Y, Z, XX, YY, ZZ};
//   Phase(phi) = diag(1, e^{i phi});
//   RZZ is the MS-style entangler exp(-i theta/2 Z(x)Z).
enum class Gate {
  H,
  X,
  Y,
  Z,
  S,
  Sdg,
  RX,
  RY,
  RZ,
  Phase,
  CX,
  CZ,
  Swap,
  CPhase,
  RXX,
  RYY,
  RZZ,
};

inline const char* gate_name(Gate g) {
  switch (g) {
    case Gate::H: return "h";
    case Gate::X: return "x";
    case Gate::Y: return "y";
    case Gate::Z: return "z";
    case Gate::S: return "s";
    case Gate::Sdg: return "sdg";
    case Gate::RX: return "rx";
    case Gate::RY: return "ry";
    case Gate::RZ: return "rz";
    case Gate::Phase: return "p";
    case Gate::CX: return "cx";
    case Gate::CZ: return "cz";
    case Gate::Swap: return "swap";
    case Gate::CPhase: return "cp";
    case Gate::RXX: return "rxx";
    case Gate::RYY: return "ryy";
    case Gate::RZZ: return "rzz";
  }
  return "?";
}

inline int gate_arity(Gate g) {
  switch (g) {
    case Gate::CX:
    case Gate::CZ:
    case Gate::Swap:
    case Gate::CPhase:
    case Gate::RXX:
    case Gate::RYY:
    case Gate::RZZ: return 2;
    default: return 1;
  }
}

inline int gate_n_params(Gate g) {
  switch (g) {
    case Gate::RX:
    case Gate::RY:
    case Gate::RZ:
    case Gate::Phase:
    case Gate::CPhase:
    case Gate::RXX:
    case Gate::RYY:
    case Gate::RZZ: return 1;
    default: return 0;
  }
}

// Dense matrix of a named gate in the instruction-local basis: local bit i
// of the matrix index corresponds to qubits[i] of the instruction.
inline Eigen::MatrixXcd gate_matrix(Gate g, const std::vector<double>& params) {
  const cplx i1(0, 1);
  auto rot1 = [&](const Eigen::Matrix2cd& axis, double theta) {
    Eigen::Matrix2cd m = std::cos(theta / 2) * Eigen::Matrix2cd::Identity() -
                         i1 * std::sin(theta / 2) * axis;
    return m;
  };
  switch (g) {
    case Gate::H: {
      Eigen::Matrix2cd m;
      m << 1, 1, 1, -1;
      return m / std::sqrt(2.0);
    }
    case Gate::X: return axis_matrix(Axis::X);
    case Gate::Y: return axis_matrix(Axis::Y);
    case Gate::Z: return axis_matrix(Axis::Z);
    case Gate::S: {
      Eigen::Matrix2cd m;
      m << 1, 0, 0, i1;
      return m;
    }
    case Gate::Sdg: {
      Eigen::Matrix2cd m;
      m << 1, 0, 0, -i1;
      return m;
    }
    case Gate::RX: return rot1(axis_matrix(Axis::X), params.at(0));
    case Gate::RY: return rot1(axis_matrix(Axis::Y), params.at(0));
    case Gate::RZ: return rot1(axis_matrix(Axis::Z), params.at(0));
    case Gate::Phase: {
      Eigen::Matrix2cd m;
      m << 1, 0, 0, std::exp(i1 * params.at(0));
      return m;
    }
    case Gate::CX: {
      // control = local bit 0 (qubits[0]), target = local bit 1
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(2, 2) = 1;
      m(3, 1) = 1;
      m(1, 3) = 1;
      return m;
    }
    case Gate::CZ: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      m(3, 3) = -1;
      return m;
    }
    case Gate::Swap: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
      m(0, 0) = 1;
      m(1, 2) = 1;
      m(2, 1) = 1;
      m(3, 3) = 1;
      return m;
    }
    case Gate::CPhase: {
      Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
      m(3, 3) = std::exp(i1 * params.at(0));
      return m;
    }
    case Gate::RXX:
    case Gate::RYY:
    case Gate::RZZ: {
      Axis a = g == Gate::RXX ? Axis::X : (g == Gate::RYY ? Axis::Y : Axis::Z);
      Eigen::Matrix4cd axis =
          Eigen::kroneckerProduct(axis_matrix(a), axis_matrix(a)).eval();
      const double theta = params.at(0);
      return (std::cos(theta / 2) * Eigen::Matrix4cd::Identity() -
              i1 * std::sin(theta / 2) * axis)
          .eval();
    }
  }
  throw std::logic_error("unreachable");
}

enum class InstrKind { NamedGate, Unitary, PauliRot, Measure, Reset, Label };

// One circuit instruction: a gate (named, explicit unitary, or Pauli
// rotation), a measurement, a reset, or a label marker. Gates may carry a
// classical condition (clbit, expected value).
struct Instruction {
  InstrKind kind = InstrKind::Label;
  Gate gate = Gate::H;
  std::vector<int> qubits;
  std::vector<double> params;
  std::shared_ptr<const Eigen::MatrixXcd> matrix;  // Unitary payload
  PauliString pauli;                               // PauliRot payload (local indices)
  double angle = 0.0;                              // PauliRot angle
  int clbit = -1;                                  // Measure destination
  std::optional<std::pair<int, int>> condition;    // (clbit, expected value)
  std::string text;                                // Label payload

  bool is_unitary_kind() const {
    return kind == InstrKind::NamedGate || kind == InstrKind::Unitary ||
           kind == InstrKind::PauliRot;
  }

  static Instruction named(Gate g, std::vector<int> qs, std::vector<double> ps = {}) {
    Instruction in;
    in.kind = InstrKind::NamedGate;
    in.gate = g;
    in.qubits = std::move(qs);
    in.params = std::move(ps);
    if (static_cast<int>(in.qubits.size()) != gate_arity(g) ||
        static_cast<int>(in.params.size()) != gate_n_params(g)) {
      throw std::invalid_argument("gate arity/parameter mismatch");
    }
    for (double p : in.params) {
      if (!std::isfinite(p)) throw std::invalid_argument("non-finite gate parameter");
    }
    return in;
  }

  static Instruction unitary(Eigen::MatrixXcd u, std::vector<int> qs,
                             double unitarity_tol = 1e-10) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qs.size());
    if (u.rows() != dim || u.cols() != dim) {
      throw std::invalid_argument("unitary dimension does not match target count");
    }
    if (unitarity_tol > 0) {
      const double dev = (u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
      if (dev > unitarity_tol) throw std::invalid_argument("payload is not unitary");
    }
    Instruction in;
    in.kind = InstrKind::Unitary;
    in.qubits = std::move(qs);
    in.matrix = std::make_shared<const Eigen::MatrixXcd>(std::move(u));
    return in;
  }

  // exp(-i angle/2 * P), with P.axis(i) acting on qubits[i].
  static Instruction pauli_rot(PauliString p, double theta, std::vector<int> qs) {
    if (p.n_qubits() != static_cast<int>(qs.size())) {
      throw std::invalid_argument("pauli rotation string/target mismatch");
    }
    if (!std::isfinite(theta)) throw std::invalid_argument("non-finite rotation angle");
    Instruction in;
    in.kind = InstrKind::PauliRot;
    in.pauli = std::move(p);
    in.angle = theta;
    in.qubits = std::move(qs);
    return in;
  }

  static Instruction measure(int q, int c) {
    Instruction in;
    in.kind = InstrKind::Measure;
    in.qubits = {q};
    in.clbit = c;
    return in;
  }

  static Instruction reset(int q) {
    Instruction in;
    in.kind = InstrKind::Reset;
    in.qubits = {q};
    return in;
  }

  static Instruction label(std::string s) {
    Instruction in;
    in.kind = InstrKind::Label;
    in.text = std::move(s);
    return in;
  }

  Instruction with_condition(int c, int value) const {
    if (!is_unitary_kind()) throw std::invalid_argument("only gates can be conditioned");
    Instruction in = *this;
    in.condition = std::make_pair(c, value);
    return in;
  }

  // Dense matrix in the instruction-local basis.
  Eigen::MatrixXcd to_matrix() const {
    switch (kind) {
      case InstrKind::NamedGate: return gate_matrix(gate, params);
      case InstrKind::Unitary: return *matrix;
      case InstrKind::PauliRot: {
        const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits.size());
        Eigen::MatrixXcd p = pauli_string_to_matrix(pauli);
        return (std::cos(angle / 2) * Eigen::MatrixXcd::Identity(dim, dim) -
                cplx(0, 1) * std::sin(angle / 2) * p)
            .eval();
      }
      default: throw std::invalid_argument("instruction has no matrix");
    }
  }
};

// Block unitary I (+) U acting on control = 1; the control becomes the
// highest local bit of the payload.
inline Instruction controlled(const Instruction& instr, int control) {
  if (!instr.is_unitary_kind()) {
    throw std::invalid_argument("controlled: payload must be a gate");
  }
  for (int q : instr.qubits) {
    if (q == control) throw std::invalid_argument("controlled: control overlaps targets");
  }
  const Eigen::MatrixXcd u = instr.to_matrix();
  const Eigen::Index d = u.rows();
  Eigen::MatrixXcd block = Eigen::MatrixXcd::Identity(2 * d, 2 * d);
  block.block(d, d, d, d) = u;
  std::vector<int> qs = instr.qubits;
  qs.push_back(control);
  return Instruction::unitary(std::move(block), std::move(qs), 0.0);
}

enum class DetectionKind { Flag, SyndromeX, SyndromeZ };

// Classical bits whose nonzero value marks a shot for discard, tagged with
// the syndrome round that produced them. SyndromeX is the S_X stabilizer
// bit (fires on Pauli-Z-type errors), SyndromeZ the S_Z bit (Pauli-X-type).
struct DetectionBit {
  int clbit = -1;
  int round = 0;
  DetectionKind kind = DetectionKind::Flag;
};

// Ordered instruction list over a quantum and a classical register.
class Circuit {
 public:
  Circuit() = default;
  Circuit(int n_qubits, int n_clbits = 0) : n_qubits_(n_qubits), n_clbits_(n_clbits) {}

  int n_qubits() const { return n_qubits_; }
  int n_clbits() const { return n_clbits_; }
  const std::vector<Instruction>& instructions() const { return instrs_; }
  const std::vector<DetectionBit>& detection_bits() const { return detections_; }

  Circuit& add(Instruction in) {
    for (std::size_t i = 0; i < in.qubits.size(); ++i) {
      const int q = in.qubits[i];
      if (q < 0 || q >= n_qubits_) throw std::out_of_range("qubit index out of range");
      for (std::size_t j = i + 1; j < in.qubits.size(); ++j) {
        if (in.qubits[j] == q) throw std::invalid_argument("duplicate qubit operand");
      }
    }
    if (in.kind == InstrKind::Measure && (in.clbit < 0 || in.clbit >= n_clbits_)) {
      throw std::out_of_range("classical bit index out of range");
    }
    if (in.condition && (in.condition->first < 0 || in.condition->first >= n_clbits_)) {
      throw std::out_of_range("condition bit index out of range");
    }
    instrs_.push_back(std::move(in));
    return *this;
  }

  // fluent helpers
  Circuit& h(int q) { return add(Instruction::named(Gate::H, {q})); }
  Circuit& x(int q) { return add(Instruction::named(Gate::X, {q})); }
  Circuit& y(int q) { return add(Instruction::named(Gate::Y, {q})); }
  Circuit& z(int q) { return add(Instruction::named(Gate::Z, {q})); }
  Circuit& s(int q) { return add(Instruction::named(Gate::S, {q})); }
  Circuit& sdg(int q) { return add(Instruction::named(Gate::Sdg, {q})); }
  Circuit& rx(double t, int q) { return add(Instruction::named(Gate::RX, {q}, {t})); }
  Circuit& ry(double t, int q) { return add(Instruction::named(Gate::RY, {q}, {t})); }
  Circuit& rz(double t, int q) { return add(Instruction::named(Gate::RZ, {q}, {t})); }
  Circuit& phase(double t, int q) { return add(Instruction::named(Gate::Phase, {q}, {t})); }
  Circuit& cx(int c, int t) { return add(Instruction::named(Gate::CX, {c, t})); }
  Circuit& cz(int a, int b) { return add(Instruction::named(Gate::CZ, {a, b})); }
  Circuit& cphase(double t, int a, int b) {
    return add(Instruction::named(Gate::CPhase, {a, b}, {t}));
  }
  Circuit& swap(int a, int b) { return add(Instruction::named(Gate::Swap, {a, b})); }
  Circuit& rzz(double t, int a, int b) { return add(Instruction::named(Gate::RZZ, {a, b}, {t})); }
  Circuit& rxx(double t, int a, int b) { return add(Instruction::named(Gate::RXX, {a, b}, {t})); }
  Circuit& ryy(double t, int a, int b) { return add(Instruction::named(Gate::RYY, {a, b}, {t})); }
  Circuit& measure(int q, int c) { return add(Instruction::measure(q, c)); }
  Circuit& reset(int q) { return add(Instruction::reset(q)); }
  Circuit& label(std::string s) { return add(Instruction::label(std::move(s))); }

  void tag_detection(int clbit, int round, DetectionKind kind) {
    detections_.push_back({clbit, round, kind});
  }

  // Appends another circuit with its qubit/clbit indices shifted.
  Circuit& append(const Circuit& other, int qubit_offset = 0, int clbit_offset = 0) {
    for (Instruction in : other.instrs_) {
      for (int& q : in.qubits) q += qubit_offset;
      if (in.kind == InstrKind::Measure) in.clbit += clbit_offset;
      if (in.condition) in.condition->first += clbit_offset;
      add(std::move(in));
    }
    for (DetectionBit d : other.detections_) {
      d.clbit += clbit_offset;
      detections_.push_back(d);
    }
    return *this;
  }

  // Two-qubit gate count N_2Q (gates with exactly two qubit operands,
  // conditional or not).
  int n_two_qubit() const {
    int n = 0;
    for (const auto& in : instrs_) {
      if (in.is_unitary_kind() && in.qubits.size() == 2) ++n;
    }
    return n;
  }

  // Measurements followed by further instructions on any qubit.
  int n_mid_circuit_measurements() const {
    int n = 0;
    std::size_t last_non_measure = 0;
    for (std::size_t i = 0; i < instrs_.size(); ++i) {
      if (instrs_[i].kind != InstrKind::Measure && instrs_[i].kind != InstrKind::Label) {
        last_non_measure = i;
      }
    }
    for (std::size_t i = 0; i < instrs_.size(); ++i) {
      if (instrs_[i].kind == InstrKind::Measure && i < last_non_measure) ++n;
    }
    return n;
  }

  void dump(std::ostream& os) const {
    for (const auto& in : instrs_) {
      if (in.condition) {
        os << "if c" << in.condition->first << "==" << in.condition->second << ": ";
      }
      switch (in.kind) {
        case InstrKind::NamedGate:
          os << gate_name(in.gate);
          if (!in.params.empty()) {
            os << "(";
            for (std::size_t i = 0; i < in.params.size(); ++i) {
              os << (i ? "," : "") << in.params[i];
            }
            os << ")";
          }
          break;
        case InstrKind::Unitary: os << "unitary[" << in.matrix->rows() << "]"; break;
        case InstrKind::PauliRot:
          os << "paulirot(" << in.pauli.str() << "," << in.angle << ")";
          break;
        case InstrKind::Measure: os << "measure"; break;
        case InstrKind::Reset: os << "reset"; break;
        case InstrKind::Label: os << "# " << in.text; break;
      }
      for (int q : in.qubits) os << " q" << q;
      if (in.kind == InstrKind::Measure) os << " -> c" << in.clbit;
      os << "\n";
    }
  }

  std::string dump() const {
    std::ostringstream os;
    dump(os);
    return os.str();
  }

 private:
  int n_qubits_ = 0;
  int n_clbits_ = 0;
  std::vector<Instruction> instrs_;
  std::vector<DetectionBit> detections_;
};

}  // namespace qspec
