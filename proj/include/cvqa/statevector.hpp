#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "cvqa/circuit.hpp"
#include "cvqa/pauli.hpp"

namespace cvqa {

/// Dense 2^n statevector simulator; the ground-truth oracle engine.
/// Qubit q maps to bit q of the basis index.
class Statevector {
 public:
  static constexpr std::size_t kDefaultQubitCap = 14;

  /// |0...0>. Throws std::length_error beyond the qubit cap.
  explicit Statevector(std::size_t n, std::size_t qubit_cap = kDefaultQubitCap);

  std::size_t num_qubits() const { return n_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

  void apply(const CliffordGate& g);
  void apply_pauli(const PauliString& p);
  /// Applies e^{-i G angle / 2} for involutory Hermitian G.
  void apply_rotation(const PauliString& generator, double angle);

  void apply_circuit(const ParamCircuit& circuit, const ParamPoint& point);

  /// Real expectation <v|O|v>.
  double expectation(const Observable& o) const;
  double expectation(const PauliString& p) const;

 private:
  std::size_t n_;
  std::vector<std::complex<double>> amps_;
  mutable std::vector<std::complex<double>> scratch_;
};

/// Builds U(point)|0...0> and returns <O>. Throws std::length_error when
/// n exceeds the cap.
double eval_statevector(const ParamCircuit& circuit, const Observable& o,
                        const ParamPoint& point,
                        std::size_t qubit_cap = Statevector::kDefaultQubitCap);

}  // namespace cvqa
