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
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qspec/circuit.hpp"
#include "qspec/evolution.hpp"
#include "qspec/pauli.hpp"
#include "qspec/statevector.hpp"

namespace qspec {

enum class AncillaVariant { Uniform, Epe, Slater };

inline AncillaVariant parse_variant(const std::string& s) {
  if (s == "uniform") return AncillaVariant::Uniform;
  if (s == "epe") return AncillaVariant::Epe;
  if (s == "slater") return AncillaVariant::Slater;
  throw std::invalid_argument("unknown ancilla variant '" + s + "'");
}

inline const char* variant_name(AncillaVariant v) {
  switch (v) {
    case AncillaVariant::Uniform: return "uniform";
    case AncillaVariant::Epe: return "epe";
    case AncillaVariant::Slater: return "slater";
  }
  return "?";
}

// Phase-estimation window and ancilla input choice.
//
// Readout integer k maps to energy omega_min + k / t0 with
// t0 = N_q / (omega_max - omega_min); the evolution is run under
// H - (e_ref + omega_min) I so the window starts at bin zero.
struct QpeConfig {
  int n_q = 4;
  double omega_min = 0.0;
  double omega_max = 1.0;
  AncillaVariant variant = AncillaVariant::Uniform;
  double a = 0.0;      // slater decay rate
  double e_ref = 0.0;  // reference energy (typically the ground state)

  void validate() const {
    if (n_q < 1) throw std::invalid_argument("n_q must be >= 1");
    if (!(omega_max > omega_min)) throw std::invalid_argument("energy window is degenerate");
    if (variant == AncillaVariant::Slater && !(a > 0)) {
      throw std::invalid_argument("slater variant requires a > 0");
    }
  }

  int big_n() const { return 1 << n_q; }
  double t0() const { return static_cast<double>(big_n()) / (omega_max - omega_min); }
  double shift() const { return e_ref + omega_min; }
  double bin_energy(int k) const { return omega_min + static_cast<double>(k) / t0(); }
};

// --- ancilla input states ----------------------------------------------------

inline Circuit prepare_uniform(int n_q) {
  Circuit c(n_q, 0);
  for (int q = 0; q < n_q; ++q) c.h(q);
  return c;
}

inline double slater_theta(int m, double a) { return std::atan(std::exp(-std::ldexp(a, m))); }

inline Circuit prepare_slater(int n_q, double a) {
  if (!(a > 0)) throw std::invalid_argument("prepare_slater: a must be positive");
  Circuit c(n_q, 0);
  for (int m = 0; m < n_q; ++m) c.ry(2 * slater_theta(m, a), m);
  return c;
}

// DFT unitary with qubit 0 as the least-significant bit of both input and
// output integers: QFT|x> = N^{-1/2} sum_k e^{2 pi i x k / N} |k>.
inline Circuit qft_circuit(int n_q) {
  Circuit c(n_q, 0);
  for (int j = n_q - 1; j >= 0; --j) {
    c.h(j);
    for (int m = j - 1; m >= 0; --m) {
      c.cphase(M_PI / std::ldexp(1.0, j - m), m, j);
    }
  }
  for (int i = 0; i < n_q / 2; ++i) c.swap(i, n_q - 1 - i);
  return c;
}

inline Circuit iqft_circuit(int n_q) {
  Circuit c(n_q, 0);
  for (int i = 0; i < n_q / 2; ++i) c.swap(i, n_q - 1 - i);
  for (int j = 0; j < n_q; ++j) {
    for (int m = 0; m < j; ++m) {
      c.cphase(-M_PI / std::ldexp(1.0, j - m), m, j);
    }
    c.h(j);
  }
  return c;
}

// Entangled sine-profile input: H and RZ(pi/N - pi) on the bottom qubit,
// the QFT, then per-qubit phase gates diag(1, e^{-i pi 2^m / N}). The
// resulting amplitudes are exactly sqrt(2/N) sin(pi (tau + 1/2) / N).
inline Circuit prepare_epe(int n_q) {
  const double n_big = std::ldexp(1.0, n_q);
  Circuit c(n_q, 0);
  c.h(0);
  c.rz(M_PI / n_big - M_PI, 0);
  c.append(qft_circuit(n_q));
  for (int m = 0; m < n_q; ++m) {
    c.phase(-M_PI * std::ldexp(1.0, m) / n_big, m);
  }
  return c;
}

inline Circuit prepare_ancilla(const QpeConfig& cfg) {
  switch (cfg.variant) {
    case AncillaVariant::Uniform: return prepare_uniform(cfg.n_q);
    case AncillaVariant::Epe: return prepare_epe(cfg.n_q);
    case AncillaVariant::Slater: return prepare_slater(cfg.n_q, cfg.a);
  }
  throw std::logic_error("unreachable");
}

// Reference amplitude profiles psi_in(tau).
inline double ancilla_amplitude(const QpeConfig& cfg, int tau) {
  const double n_big = cfg.big_n();
  switch (cfg.variant) {
    case AncillaVariant::Uniform: return 1.0 / std::sqrt(n_big);
    case AncillaVariant::Epe:
      return std::sqrt(2.0 / n_big) * std::sin(M_PI * (tau + 0.5) / n_big);
    case AncillaVariant::Slater: {
      const double c_s =
          std::sqrt((1 - std::exp(-2 * cfg.a)) / (1 - std::exp(-2 * cfg.a * n_big)));
      return c_s * std::exp(-cfg.a * tau);
    }
  }
  throw std::logic_error("unreachable");
}

// --- alpha(x): ancilla response functions ------------------------------------
//
// alpha(x) = N^{-1/2} sum_tau psi_in(tau) e^{2 pi i tau x / N}; the
// probability of reading k for an eigenphase landing at x + k is
// |alpha(x)|^2. All three evaluators below use the exact finite sums and
// are N-periodic in x by construction.

inline cplx alpha_uniform(double x, int n_q) {
  const int n_big = 1 << n_q;
  cplx acc = 0;
  for (int tau = 0; tau < n_big; ++tau) {
    acc += std::exp(cplx(0, 2 * M_PI * tau * x / n_big));
  }
  return acc / static_cast<double>(n_big);
}

inline cplx alpha_epe(double x, int n_q) {
  const int n_big = 1 << n_q;
  cplx acc = 0;
  for (int tau = 0; tau < n_big; ++tau) {
    acc += std::sin(M_PI * (tau + 0.5) / n_big) * std::exp(cplx(0, 2 * M_PI * tau * x / n_big));
  }
  return std::sqrt(2.0) / static_cast<double>(n_big) * acc;
}

inline cplx alpha_slater(double x, int n_q, double a) {
  const int n_big = 1 << n_q;
  const double c_s = std::sqrt((1 - std::exp(-2 * a)) / (1 - std::exp(-2 * a * n_big)));
  cplx acc = 0;
  for (int tau = 0; tau < n_big; ++tau) {
    acc += std::exp(cplx(-a * tau, 2 * M_PI * tau * x / n_big));
  }
  return c_s / std::sqrt(static_cast<double>(n_big)) * acc;
}

// Closed forms (cross-checks for the exact sums; removable singularities
// handled by limits).

inline double alpha_uniform_sq_closed(double x, int n_q) {
  const double n_big = std::ldexp(1.0, n_q);
  const double r = std::remainder(x, n_big);
  if (std::abs(r) < 1e-9) return 1.0;
  const double s = std::sin(M_PI * r / n_big);
  const double num = std::sin(M_PI * r);
  return num * num / (n_big * n_big * s * s);
}

inline cplx alpha_epe_closed(double x, int n_q) {
  const double n_big = std::ldexp(1.0, n_q);
  const double delta = 2 * M_PI * x;
  const double sp = std::sin((delta + M_PI) / (2 * n_big));
  const double sm = std::sin((delta - M_PI) / (2 * n_big));
  if (std::abs(sp) < 1e-9 || std::abs(sm) < 1e-9) {
    return alpha_epe(x, n_q);  // removable singularity at x = -+1/2 mod N
  }
  return -std::exp(cplx(0, delta * (1 - 1 / n_big) / 2)) * std::sqrt(2.0) / n_big *
         std::cos(delta / 2) * std::cos(delta / (2 * n_big)) * std::sin(M_PI / (2 * n_big)) /
         (sp * sm);
}

inline cplx alpha_slater_closed(double x, int n_q, double a) {
  const double n_big = std::ldexp(1.0, n_q);
  const double c_s = std::sqrt((1 - std::exp(-2 * a)) / (1 - std::exp(-2 * a * n_big)));
  const cplx num = 1.0 - std::exp(cplx(-a * n_big, 2 * M_PI * x));
  const cplx den = 1.0 - std::exp(cplx(-a, 2 * M_PI * x / n_big));
  return c_s / std::sqrt(n_big) * num / den;
}

// Lorentzian approximation of |alpha_slater|^2.
inline double alpha_slater_lorentz_sq(double x, int n_q, double a) {
  const double n_big = std::ldexp(1.0, n_q);
  const double c_s2 = (1 - std::exp(-2 * a)) / (1 - std::exp(-2 * a * n_big));
  const double w = 2 * M_PI * x / n_big;
  return c_s2 / n_big / (a * a + w * w);
}

inline double alpha_sq(const QpeConfig& cfg, double x) {
  switch (cfg.variant) {
    case AncillaVariant::Uniform: return std::norm(alpha_uniform(x, cfg.n_q));
    case AncillaVariant::Epe: return std::norm(alpha_epe(x, cfg.n_q));
    case AncillaVariant::Slater: return std::norm(alpha_slater(x, cfg.n_q, cfg.a));
  }
  throw std::logic_error("unreachable");
}

// --- eigen-spectrum input -----------------------------------------------------

// Transition energies with per-polarization overlap weights; each channel
// is normalized to unit total weight.
struct EigenSpectrum {
  std::vector<double> energies;
  std::vector<std::vector<double>> channels;

  void validate(double tol = 1e-10) const {
    for (const auto& w : channels) {
      if (w.size() != energies.size()) {
        throw std::invalid_argument("eigen spectrum: weight/energy size mismatch");
      }
      double sum = 0;
      for (double v : w) {
        if (v < -tol) throw std::invalid_argument("eigen spectrum: negative weight");
        sum += v;
      }
      if (std::abs(sum - 1.0) > tol) {
        throw std::invalid_argument("eigen spectrum: channel weights must sum to 1");
      }
    }
  }

  // Text format: one line per state, `E w_x w_y w_z` (1 to 3 weight
  // columns accepted). Channels are normalized on load; all-zero channels
  // are dropped.
  static EigenSpectrum load(std::istream& in) {
    std::vector<double> energies;
    std::vector<std::vector<double>> cols;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      double e;
      if (!(ls >> e)) continue;
      std::vector<double> ws;
      double w;
      while (ls >> w) ws.push_back(w);
      if (ws.empty() || ws.size() > 3) {
        throw std::invalid_argument("spectrum file: 1..3 weight columns expected at line " +
                                    std::to_string(lineno));
      }
      if (cols.empty()) cols.resize(ws.size());
      if (cols.size() != ws.size()) {
        throw std::invalid_argument("spectrum file: inconsistent column count at line " +
                                    std::to_string(lineno));
      }
      energies.push_back(e);
      for (std::size_t c = 0; c < ws.size(); ++c) cols[c].push_back(ws[c]);
    }
    if (energies.empty()) throw std::invalid_argument("spectrum file: no rows");
    EigenSpectrum spec;
    spec.energies = std::move(energies);
    for (auto& col : cols) {
      double sum = 0;
      for (double v : col) {
        if (v < 0) throw std::invalid_argument("spectrum file: negative weight");
        sum += v;
      }
      if (sum <= 0) continue;  // empty polarization channel
      for (double& v : col) v /= sum;
      spec.channels.push_back(std::move(col));
    }
    if (spec.channels.empty()) {
      throw std::invalid_argument("spectrum file: all channels are zero");
    }
    return spec;
  }
};

// P_k = sum_j w_j |alpha(t0 (E_j - e_ref - omega_min) - k)|^2. Peaks
// outside the window fold back in through the periodicity of alpha.
inline std::vector<double> analytic_pk(const std::vector<double>& energies,
                                       const std::vector<double>& weights,
                                       const QpeConfig& cfg) {
  cfg.validate();
  if (energies.size() != weights.size()) {
    throw std::invalid_argument("analytic_pk: size mismatch");
  }
  const int n_big = cfg.big_n();
  std::vector<double> pk(static_cast<std::size_t>(n_big), 0.0);
  for (std::size_t j = 0; j < energies.size(); ++j) {
    if (weights[j] == 0.0) continue;
    const double x = cfg.t0() * (energies[j] - cfg.shift());
    for (int k = 0; k < n_big; ++k) {
      pk[static_cast<std::size_t>(k)] += weights[j] * alpha_sq(cfg, x - k);
    }
  }
  return pk;
}

inline std::vector<double> analytic_pk(const EigenSpectrum& spec, const QpeConfig& cfg,
                                       std::size_t channel = 0) {
  return analytic_pk(spec.energies, spec.channels.at(channel), cfg);
}

// --- QPE circuits -------------------------------------------------------------

namespace detail {

inline void check_qpe_inputs(const QpeConfig& cfg, const PauliOperator& h,
                             const Circuit& system_prep) {
  cfg.validate();
  if (!h.is_hermitian()) throw std::invalid_argument("qpe: Hamiltonian must be Hermitian");
  if (system_prep.n_qubits() != h.n_qubits()) {
    throw std::invalid_argument("qpe: system preparation must act on the system register only");
  }
  for (const Instruction& in : system_prep.instructions()) {
    if (in.kind == InstrKind::Measure || in.kind == InstrKind::Reset) {
      throw std::invalid_argument("qpe: system preparation must be unitary");
    }
  }
}

inline PauliOperator shifted(const PauliOperator& h, double shift) {
  PauliOperator out = h;
  out.add_term(-shift, PauliString::identity(h.n_qubits()));
  out.canonicalize(0.0);
  return out;
}

}  // namespace detail

// Textbook layout: ancilla m (qubit n_sys + m) controls U^{2^m} with
// U = exp(+2 pi i t0 (H - shift) / N_q), then the inverse QFT over the
// ancillas and one measurement per ancilla. Readout integer k = sum b_m 2^m
// estimates t0 (E - shift) mod N_q.
inline Circuit build_qpe_circuit(const QpeConfig& cfg, const PauliOperator& h,
                                 const Circuit& system_prep) {
  detail::check_qpe_inputs(cfg, h, system_prep);
  const int n_sys = h.n_qubits();
  if (n_sys + cfg.n_q > kDenseLimit) {
    throw std::invalid_argument("qpe: register exceeds dense limit");
  }
  const PauliOperator h_eff = detail::shifted(h, cfg.shift());
  std::vector<int> sys(static_cast<std::size_t>(n_sys));
  for (int q = 0; q < n_sys; ++q) sys[static_cast<std::size_t>(q)] = q;

  Circuit c(n_sys + cfg.n_q, cfg.n_q);
  c.append(system_prep);
  c.append(prepare_ancilla(cfg), n_sys);
  for (int m = 0; m < cfg.n_q; ++m) {
    const double t = cfg.t0() * std::ldexp(1.0, m) / cfg.big_n();
    c.add(controlled(exact_evolution_gate(h_eff, t, sys), n_sys + m));
  }
  c.append(iqft_circuit(cfg.n_q), n_sys);
  for (int m = 0; m < cfg.n_q; ++m) c.measure(n_sys + m, m);
  return c;
}

struct DynamicQpeOptions {
  bool trotterize = false;  // exact dense controlled powers when false
  int trotter_steps = 1;    // per controlled power, when trotterize is set
};

// Semiclassical form of the same sampler: a single ancilla qubit is
// prepared, entangled, phase-corrected against previously measured bits,
// and measured n_q times. Round r applies controlled-U^{2^{n_q-1-r}} and
// produces bit r of the readout integer. The EPE input is entangled
// across ancillas and cannot be produced round by round, so it is
// rejected here.
inline Circuit build_dynamic_qpe_circuit(const QpeConfig& cfg, const PauliOperator& h,
                                         const Circuit& system_prep,
                                         const DynamicQpeOptions& opts = {}) {
  detail::check_qpe_inputs(cfg, h, system_prep);
  if (cfg.variant == AncillaVariant::Epe) {
    throw std::invalid_argument(
        "dynamic qpe: the epe input state is entangled across ancillas and has no "
        "single-ancilla product form; use the uniform or slater variant");
  }
  const int n_sys = h.n_qubits();
  const int anc = n_sys;
  const PauliOperator h_eff = detail::shifted(h, cfg.shift());
  std::vector<int> sys(static_cast<std::size_t>(n_sys));
  for (int q = 0; q < n_sys; ++q) sys[static_cast<std::size_t>(q)] = q;

  Circuit c(n_sys + 1, cfg.n_q);
  c.append(system_prep);
  for (int r = 0; r < cfg.n_q; ++r) {
    const int m = cfg.n_q - 1 - r;
    c.label("round " + std::to_string(r));
    if (cfg.variant == AncillaVariant::Uniform) {
      c.h(anc);
    } else {
      c.ry(2 * slater_theta(m, cfg.a), anc);
    }
    const double t = cfg.t0() * std::ldexp(1.0, m) / cfg.big_n();
    if (opts.trotterize) {
      append_controlled_trotter(c, h_eff, t, opts.trotter_steps, anc, sys);
    } else {
      c.add(controlled(exact_evolution_gate(h_eff, t, sys), anc));
    }
    for (int l = 0; l < r; ++l) {
      const double angle = -M_PI / std::ldexp(1.0, r - l);
      c.add(Instruction::named(Gate::Phase, {anc}, {angle}).with_condition(l, 1));
    }
    c.h(anc);
    c.measure(anc, r);
    c.reset(anc);
  }
  return c;
}

// --- spectrum construction from operators ------------------------------------

struct OperatorSpectrum {
  std::vector<double> energies;  // eigenvalues, ascending
  std::vector<double> weights;   // |<psi_j | mu | gs>|^2, normalized
  double e_gs = 0.0;
  double norm_sq = 0.0;  // ||mu |gs>||^2
  bool forbidden = false;
  StateVector input_state;  // normalized mu |gs> (empty when forbidden)
  StateVector ground_state;
};

// Dense diagonalization reference path: eigenbasis of H, dipole-excited
// input state and its overlap weights.
inline OperatorSpectrum spectrum_from_operators(const PauliOperator& h, const PauliOperator& mu,
                                                const StateVector* ground = nullptr) {
  if (!h.is_hermitian()) throw std::invalid_argument("spectrum: Hamiltonian must be Hermitian");
  if (mu.n_qubits() != h.n_qubits()) throw std::invalid_argument("spectrum: size mismatch");
  Eigen::MatrixXcd hm = pauli_to_matrix(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hm);
  if (es.info() != Eigen::Success) throw std::runtime_error("spectrum eigensolve failed");

  OperatorSpectrum out;
  const Eigen::Index dim = hm.rows();
  out.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + dim);
  out.e_gs = out.energies.front();

  Eigen::VectorXcd gs(dim);
  if (ground) {
    if (static_cast<Eigen::Index>(ground->size()) != dim) {
      throw std::invalid_argument("spectrum: ground state size mismatch");
    }
    for (Eigen::Index i = 0; i < dim; ++i) gs[i] = (*ground)[static_cast<std::size_t>(i)];
    gs.normalize();
  } else {
    gs = es.eigenvectors().col(0);
  }

  Eigen::VectorXcd excited = pauli_to_matrix(mu) * gs;
  out.norm_sq = excited.squaredNorm();
  std::vector<cplx> gs_amps(gs.data(), gs.data() + dim);
  out.ground_state = StateVector::from_amplitudes(std::move(gs_amps));
  if (out.norm_sq < 1e-24) {
    out.forbidden = true;
    out.weights.assign(static_cast<std::size_t>(dim), 0.0);
    return out;
  }
  excited /= std::sqrt(out.norm_sq);
  out.weights.resize(static_cast<std::size_t>(dim));
  for (Eigen::Index j = 0; j < dim; ++j) {
    out.weights[static_cast<std::size_t>(j)] = std::norm(es.eigenvectors().col(j).dot(excited));
  }
  std::vector<cplx> amps(excited.data(), excited.data() + dim);
  out.input_state = StateVector::from_amplitudes(std::move(amps));
  return out;
}

}  // namespace qspec
