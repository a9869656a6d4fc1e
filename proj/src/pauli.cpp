#include "cvqa/pauli.hpp"

#include <algorithm>
#include <array>

namespace cvqa {

namespace {

std::size_t popcount_and(std::span<const std::uint64_t> a,
                         std::span<const std::uint64_t> b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  }
  return c;
}

}  // namespace

PauliString PauliString::from_letters(std::string_view letters) {
  PauliString p(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) {
    p.set_letter(q, letters[q]);
  }
  return p;
}

void PauliString::set_letter(std::size_t q, char letter) {
  if (q >= n_) {
    throw std::invalid_argument("qubit index out of range");
  }
  // Remove the old letter's contribution to the canonical phase, then add
  // the new one, so the string stays sign-+1 relative to its letters.
  if (x(q) && z(q)) {
    add_phase(-1);
  }
  switch (letter) {
    case 'I':
      set_x(q, false);
      set_z(q, false);
      break;
    case 'X':
      set_x(q, true);
      set_z(q, false);
      break;
    case 'Y':
      set_x(q, true);
      set_z(q, true);
      add_phase(1);  // Y = i * XZ
      break;
    case 'Z':
      set_x(q, false);
      set_z(q, true);
      break;
    default:
      throw std::invalid_argument(std::string("bad Pauli letter: ") + letter);
  }
}

char PauliString::letter(std::size_t q) const {
  const bool xb = x(q), zb = z(q);
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

PauliString PauliString::from_text(std::string_view text) {
  std::size_t i = 0;
  int sign_phase = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    sign_phase = (text[i] == '-') ? 2 : 0;
    ++i;
  }
  if (i < text.size() && text[i] == 'i') {
    sign_phase += 1;
    ++i;
  }
  if (i == text.size()) {
    throw std::invalid_argument("empty Pauli letter string");
  }
  PauliString p = from_letters(text.substr(i));
  p.add_phase(sign_phase);
  return p;
}

std::string PauliString::to_text() const {
  // Overall factor in front of the letters is i^{phase - y_count}.
  const int front = static_cast<int>((phase_ + 4 * n_ - y_count()) & 3);
  static constexpr std::array<const char*, 4> kPrefix = {"+", "+i", "-", "-i"};
  std::string out = kPrefix[front];
  out.reserve(out.size() + n_);
  for (std::size_t q = 0; q < n_; ++q) {
    out.push_back(letter(q));
  }
  return out;
}

bool PauliString::is_identity() const {
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (x_[i] | z_[i]) return false;
  }
  return true;
}

std::size_t PauliString::y_count() const { return popcount_and(x_, z_); }

int PauliString::sign() const {
  const int front = static_cast<int>((phase_ + 4 * n_ - y_count()) & 3);
  if (front == 0) return 1;
  if (front == 2) return -1;
  throw std::logic_error("sign() called on a non-Hermitian Pauli string");
}

std::size_t PauliString::weight() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    c += static_cast<std::size_t>(std::popcount(x_[i] | z_[i]));
  }
  return c;
}

std::vector<std::size_t> PauliString::support() const {
  std::vector<std::size_t> qs;
  for (std::size_t q = 0; q < n_; ++q) {
    if (x(q) || z(q)) qs.push_back(q);
  }
  return qs;
}

bool PauliString::commutes(const PauliString& other) const {
  if (n_ != other.n_) {
    throw std::invalid_argument("qubit count mismatch");
  }
  const std::size_t c =
      popcount_and(x_, other.z_) + popcount_and(z_, other.x_);
  return (c & 1) == 0;
}

PauliString mul(const PauliString& p, const PauliString& q) {
  if (p.n_ != q.n_) {
    throw std::invalid_argument("qubit count mismatch");
  }
  PauliString r(p.n_);
  // Reordering Z^{z_p} past X^{x_q} contributes (-1)^{|z_p & x_q|}.
  const std::size_t swaps = popcount_and(p.z_, q.x_);
  for (std::size_t i = 0; i < r.x_.size(); ++i) {
    r.x_[i] = p.x_[i] ^ q.x_[i];
    r.z_[i] = p.z_[i] ^ q.z_[i];
  }
  r.phase_ = static_cast<std::uint8_t>((p.phase_ + q.phase_ + 2 * swaps) & 3);
  return r;
}

std::uint64_t PauliString::symplectic_hash() const {
  std::uint64_t h = 0x243f6a8885a308d3ULL ^ n_;
  auto mix = [&h](std::uint64_t w) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (std::uint64_t w : x_) mix(w);
  for (std::uint64_t w : z_) mix(w);
  return h;
}

Observable Observable::single(const PauliString& p, double coefficient) {
  Observable o(p.num_qubits());
  o.add_term(coefficient, p);
  return o;
}

void Observable::add_term(double coefficient, const PauliString& p) {
  if (terms_.empty() && n_ == 0) {
    n_ = p.num_qubits();
  }
  if (p.num_qubits() != n_) {
    throw std::invalid_argument("observable term qubit count mismatch");
  }
  if (!p.is_hermitian()) {
    throw std::invalid_argument("observable terms must be Hermitian");
  }
  for (const Term& t : terms_) {
    if (t.pauli.same_symplectic(p)) {
      throw std::invalid_argument("duplicate Pauli term in observable");
    }
  }
  PauliString canon = p;
  double c = coefficient * p.sign();
  canon.add_phase(p.sign() < 0 ? 2 : 0);
  terms_.push_back(Term{c, canon});
}

std::vector<PauliString> enumerate_family(PauliFamily kind, std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("weight-two families need n >= 2");
  }
  static constexpr std::array<char, 3> kLetters = {'X', 'Y', 'Z'};
  std::vector<PauliString> out;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const std::size_t b_end =
        (kind == PauliFamily::weight2_nn) ? a + 2 : n;
    for (std::size_t b = a + 1; b < b_end; ++b) {
      for (char la : kLetters) {
        for (char lb : kLetters) {
          PauliString p(n);
          p.set_letter(a, la);
          p.set_letter(b, lb);
          out.push_back(std::move(p));
        }
      }
    }
  }
  return out;
}

}  // namespace cvqa
