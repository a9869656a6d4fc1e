#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cvqa {

/// Phase-tracked n-qubit Pauli string in symplectic form.
///
/// The stored operator is i^phase * prod_q X^{x_q} Z^{z_q}, with the X
/// factor to the left of the Z factor on every qubit. All phase
/// bookkeeping follows from ZX = iY under this convention.
class PauliString {
 public:
  explicit PauliString(std::size_t n)
      : n_(n), x_(word_count(n), 0), z_(word_count(n), 0), phase_(0) {}

  static PauliString identity(std::size_t n) { return PauliString(n); }

  /// Builds the Hermitian string with the given per-qubit letters and an
  /// overall sign of +1. `letters[q]` is one of 'I','X','Y','Z'.
  static PauliString from_letters(std::string_view letters);

  /// Parses the text form "+XIZY" / "-iXZ" (sign, optional i, letters,
  /// leftmost letter = qubit 0). Round-trips bit-exactly with to_text().
  static PauliString from_text(std::string_view text);

  std::string to_text() const;

  std::size_t num_qubits() const { return n_; }

  bool x(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
  bool z(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }

  void set_x(std::size_t q, bool v) { set_bit(x_, q, v); }
  void set_z(std::size_t q, bool v) { set_bit(z_, q, v); }

  /// Sets qubit q to the given letter, keeping the overall operator equal
  /// to its previous value times the letter change (phase is adjusted so
  /// that a fresh identity string stays sign-+1 Hermitian).
  void set_letter(std::size_t q, char letter);
  char letter(std::size_t q) const;

  /// Phase exponent k in i^k.
  std::uint8_t phase() const { return phase_; }
  void set_phase(std::uint8_t k) { phase_ = k & 3; }
  void add_phase(int k) { phase_ = static_cast<std::uint8_t>((phase_ + k) & 3); }

  bool is_identity() const;

  /// Number of qubits carrying x=z=1 (Y letters).
  std::size_t y_count() const;

  /// True iff the operator equals its adjoint, i.e. the overall factor in
  /// front of the letter string is +1 or -1.
  bool is_hermitian() const { return ((phase_ - y_count()) & 1) == 0; }

  /// Overall sign for a Hermitian string: +1 or -1.
  int sign() const;

  /// Negates the operator in place.
  void negate() { add_phase(2); }

  std::size_t weight() const;
  std::vector<std::size_t> support() const;

  bool commutes(const PauliString& other) const;

  /// True iff the symplectic (x|z) parts match, phases ignored.
  bool same_symplectic(const PauliString& other) const {
    return x_ == other.x_ && z_ == other.z_;
  }

  bool operator==(const PauliString& other) const {
    return n_ == other.n_ && phase_ == other.phase_ && same_symplectic(other);
  }

  std::span<const std::uint64_t> x_words() const { return x_; }
  std::span<const std::uint64_t> z_words() const { return z_; }

  /// Phase-exact product. Throws std::invalid_argument on size mismatch.
  friend PauliString mul(const PauliString& p, const PauliString& q);

  /// 64-bit hash of the symplectic part (phase ignored).
  std::uint64_t symplectic_hash() const;

  static std::size_t word_count(std::size_t n) { return (n + 63) / 64; }

 private:
  static void set_bit(std::vector<std::uint64_t>& w, std::size_t q, bool v) {
    if (v) {
      w[q >> 6] |= (std::uint64_t{1} << (q & 63));
    } else {
      w[q >> 6] &= ~(std::uint64_t{1} << (q & 63));
    }
  }

  std::size_t n_;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  std::uint8_t phase_;
};

PauliString mul(const PauliString& p, const PauliString& q);

inline bool commutes(const PauliString& p, const PauliString& q) {
  return p.commutes(q);
}

/// Real-weighted sum of Hermitian Pauli strings; term signs are absorbed
/// into the coefficients, so the stored strings all carry sign +1.
class Observable {
 public:
  struct Term {
    double coefficient;
    PauliString pauli;
  };

  Observable() = default;
  explicit Observable(std::size_t n) : n_(n) {}

  static Observable single(const PauliString& p, double coefficient = 1.0);

  /// Throws on qubit-count mismatch, non-Hermitian terms, or duplicate
  /// Pauli strings (up to sign).
  void add_term(double coefficient, const PauliString& p);

  std::size_t num_qubits() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::size_t n_ = 0;
  std::vector<Term> terms_;
};

enum class PauliFamily {
  weight2_nn,   // nearest-neighbor weight-two strings, 9(n-1) elements
  weight2_all,  // all weight-two strings, 9n(n-1)/2 elements
};

/// Deterministic enumeration, ordered lexicographically by (qubit pair,
/// letters with X<Y<Z). All elements Hermitian with sign +1.
std::vector<PauliString> enumerate_family(PauliFamily kind, std::size_t n);

}  // namespace cvqa
