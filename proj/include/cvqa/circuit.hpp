#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cvqa/clifford.hpp"
#include "cvqa/pauli.hpp"

namespace cvqa {

struct Rotation {
  PauliString generator;    // Hermitian, involutory
  std::size_t param_index;  // each index appears exactly once per circuit
};

using CircuitOp = std::variant<CliffordGate, Rotation>;

/// Continuous parameter assignment; angles are interpreted mod 2*pi.
struct ParamPoint {
  std::vector<double> angles;
};

/// Clifford parameter assignment: angle_k = quarters_k * pi/2. Kept in
/// integer form end to end so Clifford-path evaluation never touches
/// floating point.
struct CliffordPoint {
  std::vector<std::uint8_t> quarters;

  ParamPoint to_param_point() const;
};

/// Fixed/free split of the parameter indices around a base Clifford point.
struct SplitPoint {
  CliffordPoint base;
  std::vector<std::size_t> fixed_indices;
  std::vector<std::size_t> free_indices;
};

/// Clifford-VQA circuit: constant Clifford gates interleaved with
/// parametric Pauli rotations e^{-i P_k phi_k / 2}.
class ParamCircuit {
 public:
  explicit ParamCircuit(std::size_t n) : n_(n) {}

  std::size_t num_qubits() const { return n_; }
  std::size_t num_params() const { return num_params_; }
  const std::vector<CircuitOp>& ops() const { return ops_; }

  void append(const CliffordGate& g);
  /// Appends a rotation and returns its fresh parameter index.
  std::size_t append_rotation(PauliString generator);

  /// Line-oriented text: `CZ 0 1` / `ROT +XIZ 3` (3 = parameter index).
  /// Round-trips bit-exactly.
  std::string to_text() const;
  static ParamCircuit from_text(const std::string& text);

 private:
  // Parsing-side constructor with explicit indices; verifies the bijection.
  void append_rotation_indexed(PauliString generator, std::size_t index);

  std::size_t n_;
  std::size_t num_params_ = 0;
  std::vector<CircuitOp> ops_;
};

/// Brickwork ansatz: odd layers pair (0,1),(2,3),...; even layers pair
/// (1,2),(3,4),...; each brick is CZ then RX,RZ on both qubits (RX before
/// RZ, lower qubit first). Open boundary.
ParamCircuit build_brickwork(std::size_t n, std::size_t layers);

std::size_t brickwork_param_count(std::size_t n, std::size_t layers);

enum class FixtureKind {
  product_rx,          // RX on each qubit, O = Z...Z; loss = prod cos(phi_k)
  global_rotation_bp,  // 1 brickwork layer + global rotation X_0 Z_1..Z_{n-1}
};

struct Fixture {
  ParamCircuit circuit;
  Observable observable;
};

Fixture build_fixture(FixtureKind kind, std::size_t n);

enum class SampleMode { uniform, clifford };

/// Deterministic per-(seed, index) sampling of a full parameter point.
ParamPoint sample_uniform_point(std::size_t m, std::uint64_t seed,
                                std::uint64_t index);
CliffordPoint sample_clifford_point(std::size_t m, std::uint64_t seed,
                                    std::uint64_t index);

/// Random circuit with `num_rotations` single/two-qubit Pauli rotations
/// interleaved with random Clifford gates; deterministic by seed.
ParamCircuit random_circuit(std::size_t n, std::size_t num_rotations,
                            std::uint64_t seed);

/// Overwrites the free coordinates of the split's base point.
CliffordPoint restrict_point(const SplitPoint& split,
                             const std::vector<std::uint8_t>& free_quarters);
ParamPoint restrict_point(const SplitPoint& split,
                          const std::vector<double>& free_angles);

}  // namespace cvqa
