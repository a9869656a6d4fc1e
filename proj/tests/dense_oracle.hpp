#pragma once

// Dense-matrix oracles for the tests: everything here is written directly
// from the gate/Pauli definitions and shares no code with the library.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cvqa/circuit.hpp"
#include "cvqa/clifford.hpp"
#include "cvqa/pauli.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cx = std::complex<double>;

inline Mat pauli_matrix(const cvqa::PauliString& p) {
  const std::size_t n = p.num_qubits();
  const std::size_t dim = std::size_t{1} << n;
  static const cx kI{0.0, 1.0};
  Mat out = Mat::Zero(dim, dim);
  cx global = std::pow(kI, static_cast<double>(p.phase()));
  for (std::size_t b = 0; b < dim; ++b) {
    // Apply X^x Z^z per qubit, X leftmost: column b maps to row b^x with
    // phase (-1)^{|b & z|}.
    std::size_t target = b;
    cx amp = global;
    for (std::size_t q = 0; q < n; ++q) {
      const bool bit = (b >> q) & 1;
      if (p.z(q) && bit) amp = -amp;
      if (p.x(q)) target ^= (std::size_t{1} << q);
    }
    out(target, b) = amp;
  }
  return out;
}

inline Mat gate_matrix(const cvqa::CliffordGate& g, std::size_t n) {
  using cvqa::GateKind;
  const std::size_t dim = std::size_t{1} << n;
  static const cx kI{0.0, 1.0};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Mat out = Mat::Zero(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const bool b0 = (b >> g.q0) & 1;
    switch (g.kind) {
      case GateKind::H:
        out(b & ~(std::size_t{1} << g.q0), b) += inv_sqrt2;
        out(b | (std::size_t{1} << g.q0), b) += b0 ? -inv_sqrt2 : inv_sqrt2;
        break;
      case GateKind::S:
        out(b, b) = b0 ? kI : cx{1.0, 0.0};
        break;
      case GateKind::Sdg:
        out(b, b) = b0 ? -kI : cx{1.0, 0.0};
        break;
      case GateKind::X:
        out(b ^ (std::size_t{1} << g.q0), b) = 1.0;
        break;
      case GateKind::Y:
        out(b ^ (std::size_t{1} << g.q0), b) = b0 ? -kI : kI;
        break;
      case GateKind::Z:
        out(b, b) = b0 ? -1.0 : 1.0;
        break;
      case GateKind::CX:
        out(b0 ? b ^ (std::size_t{1} << g.q1) : b, b) = 1.0;
        break;
      case GateKind::CZ:
        out(b, b) = (b0 && ((b >> g.q1) & 1)) ? -1.0 : 1.0;
        break;
      case GateKind::SWAP: {
        const bool b1 = (b >> g.q1) & 1;
        std::size_t t = b & ~((std::size_t{1} << g.q0) |
                              (std::size_t{1} << g.q1));
        if (b0) t |= (std::size_t{1} << g.q1);
        if (b1) t |= (std::size_t{1} << g.q0);
        out(t, b) = 1.0;
        break;
      }
    }
  }
  return out;
}

/// exp(-i G angle / 2) for involutory Hermitian G.
inline Mat rotation_matrix(const cvqa::PauliString& generator, double angle,
                           std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  static const cx kI{0.0, 1.0};
  return std::cos(angle / 2.0) * Mat::Identity(dim, dim) -
         kI * std::sin(angle / 2.0) * pauli_matrix(generator);
}

/// U(point)|0...0> built gate by gate from the dense matrices.
inline Vec run_circuit(const cvqa::ParamCircuit& circuit,
                       const cvqa::ParamPoint& point) {
  const std::size_t n = circuit.num_qubits();
  Vec v = Vec::Zero(std::size_t{1} << n);
  v(0) = 1.0;
  for (const auto& op : circuit.ops()) {
    if (const auto* g = std::get_if<cvqa::CliffordGate>(&op)) {
      v = gate_matrix(*g, n) * v;
    } else {
      const auto& r = std::get<cvqa::Rotation>(op);
      v = rotation_matrix(r.generator, point.angles[r.param_index], n) * v;
    }
  }
  return v;
}

inline double expectation(const Vec& v, const cvqa::PauliString& p) {
  return (v.adjoint() * pauli_matrix(p) * v)(0).real();
}

inline bool approx_equal(const Mat& a, const Mat& b, double tol = 1e-12) {
  return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace oracle
