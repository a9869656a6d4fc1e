#include "cvqa/symplectic.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace cvqa {

std::vector<std::uint64_t> SymplecticBasis::pack(const PauliString& p) const {
  if (n_ != 0 && p.num_qubits() != n_) {
    throw std::invalid_argument("basis/Pauli qubit count mismatch");
  }
  std::vector<std::uint64_t> v;
  v.reserve(p.x_words().size() + p.z_words().size());
  v.insert(v.end(), p.x_words().begin(), p.x_words().end());
  v.insert(v.end(), p.z_words().begin(), p.z_words().end());
  return v;
}

std::size_t SymplecticBasis::leading_bit(const std::vector<std::uint64_t>& v) {
  for (std::size_t w = 0; w < v.size(); ++w) {
    if (v[w]) {
      return 64 * w + static_cast<std::size_t>(std::countr_zero(v[w]));
    }
  }
  return static_cast<std::size_t>(-1);
}

void SymplecticBasis::reduce(std::vector<std::uint64_t>& v) const {
  for (const Row& row : rows_) {
    if ((v[row.pivot >> 6] >> (row.pivot & 63)) & 1) {
      for (std::size_t w = 0; w < v.size(); ++w) {
        v[w] ^= row.bits[w];
      }
    }
  }
}

bool SymplecticBasis::contains(const PauliString& p) const {
  std::vector<std::uint64_t> v = pack(p);
  reduce(v);
  return leading_bit(v) == static_cast<std::size_t>(-1);
}

bool SymplecticBasis::insert(const PauliString& p) {
  if (n_ == 0) {
    n_ = p.num_qubits();
  }
  std::vector<std::uint64_t> v = pack(p);
  reduce(v);
  const std::size_t pivot = leading_bit(v);
  if (pivot == static_cast<std::size_t>(-1)) {
    return false;
  }
  // Back-reduce existing rows so the form stays idempotent under re-reduction.
  for (Row& row : rows_) {
    if ((row.bits[pivot >> 6] >> (pivot & 63)) & 1) {
      for (std::size_t w = 0; w < v.size(); ++w) {
        row.bits[w] ^= v[w];
      }
    }
  }
  rows_.push_back(Row{std::move(v), pivot});
  std::sort(rows_.begin(), rows_.end(),
            [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
  return true;
}

}  // namespace cvqa
