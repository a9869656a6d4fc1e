#include "cvqa/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <variant>

namespace cvqa {

namespace {

constexpr std::complex<double> kPhases[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

std::uint64_t mask_of(const PauliString& p, bool z_part) {
  // n <= 64 in the dense engine, so a single word suffices.
  const auto words = z_part ? p.z_words() : p.x_words();
  return words.empty() ? 0 : words[0];
}

}  // namespace

Statevector::Statevector(std::size_t n, std::size_t qubit_cap) : n_(n) {
  if (n > qubit_cap) {
    throw std::length_error("statevector qubit cap exceeded");
  }
  amps_.assign(std::size_t{1} << n, {0.0, 0.0});
  amps_[0] = {1.0, 0.0};
}

void Statevector::apply(const CliffordGate& g) {
  const std::uint64_t dim = amps_.size();
  const std::uint64_t m0 = std::uint64_t{1} << g.q0;
  const std::uint64_t m1 = is_two_qubit(g.kind) ? (std::uint64_t{1} << g.q1) : 0;
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateKind::H:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if (b & m0) continue;
        const auto a0 = amps_[b];
        const auto a1 = amps_[b | m0];
        amps_[b] = kInvSqrt2 * (a0 + a1);
        amps_[b | m0] = kInvSqrt2 * (a0 - a1);
      }
      break;
    case GateKind::S:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if (b & m0) amps_[b] *= kPhases[1];
      }
      break;
    case GateKind::Sdg:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if (b & m0) amps_[b] *= kPhases[3];
      }
      break;
    case GateKind::X:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if (!(b & m0)) std::swap(amps_[b], amps_[b | m0]);
      }
      break;
    case GateKind::Y:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if (!(b & m0)) {
          const auto a0 = amps_[b];
          const auto a1 = amps_[b | m0];
          amps_[b] = kPhases[3] * a1;
          amps_[b | m0] = kPhases[1] * a0;
        }
      }
      break;
    case GateKind::Z:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if (b & m0) amps_[b] = -amps_[b];
      }
      break;
    case GateKind::CX:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if ((b & m0) && !(b & m1)) std::swap(amps_[b], amps_[b | m1]);
      }
      break;
    case GateKind::CZ:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if ((b & m0) && (b & m1)) amps_[b] = -amps_[b];
      }
      break;
    case GateKind::SWAP:
      for (std::uint64_t b = 0; b < dim; ++b) {
        if ((b & m0) && !(b & m1)) std::swap(amps_[b], amps_[b ^ m0 ^ m1]);
      }
      break;
  }
}

void Statevector::apply_pauli(const PauliString& p) {
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("qubit count mismatch");
  }
  const std::uint64_t xm = mask_of(p, false);
  const std::uint64_t zm = mask_of(p, true);
  const std::uint64_t dim = amps_.size();
  scratch_.assign(dim, {0.0, 0.0});
  const std::complex<double> front = kPhases[p.phase()];
  for (std::uint64_t b = 0; b < dim; ++b) {
    // prod X^x Z^z |b> = (-1)^{|b & z|} |b ^ x>
    const double sgn = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    scratch_[b ^ xm] = front * sgn * amps_[b];
  }
  amps_.swap(scratch_);
}

void Statevector::apply_rotation(const PauliString& generator, double angle) {
  const std::uint64_t xm = mask_of(generator, false);
  const std::uint64_t zm = mask_of(generator, true);
  const std::complex<double> front = kPhases[generator.phase()];
  const double c = std::cos(angle / 2.0);
  const std::complex<double> ms = {0.0, -std::sin(angle / 2.0)};
  const std::uint64_t dim = amps_.size();
  // e^{-iG angle/2} = cos(angle/2) I - i sin(angle/2) G, with G|b> computed
  // pairwise in place (G is an involution on the basis up to phase).
  if (xm == 0) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      const double sgn = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
      amps_[b] = (c + ms * front * sgn) * amps_[b];
    }
    return;
  }
  for (std::uint64_t b = 0; b < dim; ++b) {
    if (b > (b ^ xm)) continue;
    const std::uint64_t b2 = b ^ xm;
    const double s1 = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    const double s2 = (std::popcount(b2 & zm) & 1) ? -1.0 : 1.0;
    const auto a1 = amps_[b];
    const auto a2 = amps_[b2];
    amps_[b] = c * a1 + ms * front * s2 * a2;
    amps_[b2] = c * a2 + ms * front * s1 * a1;
  }
}

void Statevector::apply_circuit(const ParamCircuit& circuit,
                                const ParamPoint& point) {
  if (point.angles.size() != circuit.num_params()) {
    throw std::invalid_argument("parameter count mismatch");
  }
  for (const CircuitOp& op : circuit.ops()) {
    if (const auto* g = std::get_if<CliffordGate>(&op)) {
      apply(*g);
    } else {
      const auto& r = std::get<Rotation>(op);
      apply_rotation(r.generator, point.angles[r.param_index]);
    }
  }
}

double Statevector::expectation(const PauliString& p) const {
  const std::uint64_t xm = mask_of(p, false);
  const std::uint64_t zm = mask_of(p, true);
  const std::complex<double> front = kPhases[p.phase()];
  std::complex<double> acc = {0.0, 0.0};
  const std::uint64_t dim = amps_.size();
  for (std::uint64_t b = 0; b < dim; ++b) {
    const double sgn = (std::popcount(b & zm) & 1) ? -1.0 : 1.0;
    acc += std::conj(amps_[b ^ xm]) * front * sgn * amps_[b];
  }
  return acc.real();
}

double Statevector::expectation(const Observable& o) const {
  double acc = 0.0;
  for (const auto& term : o.terms()) {
    acc += term.coefficient * expectation(term.pauli);
  }
  return acc;
}

double eval_statevector(const ParamCircuit& circuit, const Observable& o,
                        const ParamPoint& point, std::size_t qubit_cap) {
  Statevector v(circuit.num_qubits(), qubit_cap);
  v.apply_circuit(circuit, point);
  return v.expectation(o);
}

}  // namespace cvqa
