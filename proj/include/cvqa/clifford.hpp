#pragma once

#include <cstddef>
#include <vector>

#include "cvqa/pauli.hpp"

namespace cvqa {

enum class GateKind { H, S, Sdg, X, Y, Z, CX, CZ, SWAP };

bool is_two_qubit(GateKind kind);
const char* gate_name(GateKind kind);

struct CliffordGate {
  GateKind kind;
  std::size_t q0;
  std::size_t q1 = 0;  // used by two-qubit kinds only

  static CliffordGate one(GateKind kind, std::size_t q) {
    return CliffordGate{kind, q, 0};
  }
  static CliffordGate two(GateKind kind, std::size_t a, std::size_t b) {
    return CliffordGate{kind, a, b};
  }
};

/// Heisenberg conjugation g^dagger P g, phase-exact.
/// Throws std::invalid_argument on bad targets.
PauliString conj_gate(const CliffordGate& g, const PauliString& p);

/// e^{i G theta/2} P e^{-i G theta/2} at theta = k*pi/2, for Hermitian
/// involutory G. The result is a single Hermitian Pauli up to sign.
PauliString conj_rotation_quarter(const PauliString& generator, int quarters,
                                  const PauliString& p);

/// Pure stabilizer state given by n independent, mutually commuting
/// Hermitian generators with signs. Default is |0...0> (generators +Z_q).
class StabilizerState {
 public:
  explicit StabilizerState(std::size_t n);
  StabilizerState(std::size_t n, std::vector<PauliString> generators);

  std::size_t num_qubits() const { return n_; }
  const std::vector<PauliString>& generators() const { return generators_; }

  /// Exact Pauli expectation: 0 when P is not in the stabilizer group up
  /// to sign, else +1 or -1. Throws on a non-Hermitian P.
  int expectation(const PauliString& p) const;

 private:
  void build_reduced();

  std::size_t n_;
  std::vector<PauliString> generators_;
  // Row-reduced products of generators, with pivot bit positions over the
  // packed (x|z) vector; signs track the actual group elements.
  std::vector<PauliString> reduced_;
  std::vector<std::size_t> pivots_;
};

}  // namespace cvqa
