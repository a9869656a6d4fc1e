#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cvqa/pauli.hpp"

namespace cvqa {

/// Reduced GF(2) basis of 2n-bit symplectic vectors (x|z), phases ignored.
/// Tracks the group generated by a set of Pauli strings up to phase.
class SymplecticBasis {
 public:
  SymplecticBasis() = default;
  explicit SymplecticBasis(std::size_t n) : n_(n) {}

  std::size_t num_qubits() const { return n_; }
  std::size_t rank() const { return rows_.size(); }

  /// Membership of P (up to phase) in the GF(2) span of the inserted rows.
  bool contains(const PauliString& p) const;

  /// Inserts P; returns false (no change) when P is already in the span.
  bool insert(const PauliString& p);

 private:
  struct Row {
    std::vector<std::uint64_t> bits;  // x words then z words
    std::size_t pivot;
  };

  std::vector<std::uint64_t> pack(const PauliString& p) const;
  void reduce(std::vector<std::uint64_t>& v) const;
  static std::size_t leading_bit(const std::vector<std::uint64_t>& v);

  std::size_t n_ = 0;
  std::vector<Row> rows_;  // kept in reduced row-echelon form
};

}  // namespace cvqa
