#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <string>

#include "cvqa/pauli.hpp"
#include "cvqa/symplectic.hpp"
#include "dense_oracle.hpp"

using cvqa::Observable;
using cvqa::PauliString;

namespace {

PauliString random_pauli(std::size_t n, std::mt19937_64& rng,
                         bool random_phase = false) {
  PauliString p(n);
  static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t q = 0; q < n; ++q) {
    p.set_letter(q, kLetters[rng() % 4]);
  }
  if (random_phase) {
    p.add_phase(static_cast<int>(rng() % 4));
  }
  return p;
}

}  // namespace

TEST_CASE("single-qubit product table matches the matrix oracle") {
  const std::string letters = "IXYZ";
  for (char a : letters) {
    for (char b : letters) {
      PauliString p(1), q(1);
      p.set_letter(0, a);
      q.set_letter(0, b);
      const PauliString prod = mul(p, q);
      const oracle::Mat expected = oracle::pauli_matrix(p) * oracle::pauli_matrix(q);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(oracle::approx_equal(oracle::pauli_matrix(prod), expected));
    }
  }
}

TEST_CASE("multi-qubit product is phase-exact against the kron oracle") {
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 60; ++rep) {
      const PauliString p = random_pauli(n, rng, true);
      const PauliString q = random_pauli(n, rng, true);
      const oracle::Mat expected = oracle::pauli_matrix(p) * oracle::pauli_matrix(q);
      CHECK(oracle::approx_equal(oracle::pauli_matrix(mul(p, q)), expected));
    }
  }
}

TEST_CASE("commutes agrees with the product order") {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng() % 5;
    const PauliString p = random_pauli(n, rng, true);
    const PauliString q = random_pauli(n, rng, true);
    const PauliString pq = mul(p, q);
    const PauliString qp = mul(q, p);
    CHECK(pq.same_symplectic(qp));
    const bool equal_phase = pq.phase() == qp.phase();
    CHECK(p.commutes(q) == equal_phase);
  }
}

TEST_CASE("text form round-trips bit-exactly") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng() % 8;
    const PauliString p = random_pauli(n, rng, true);
    const PauliString back = PauliString::from_text(p.to_text());
    CHECK(back == p);
  }
  CHECK(PauliString::from_text("+XIZY").to_text() == "+XIZY");
  CHECK(PauliString::from_text("-iXZ").to_text() == "-iXZ");
  CHECK_THROWS_AS(PauliString::from_text("+XQ"), std::invalid_argument);
  CHECK_THROWS_AS(PauliString::from_text(""), std::invalid_argument);
}

TEST_CASE("letters, weight and support") {
  PauliString p = PauliString::from_letters("IXYZ");
  CHECK(p.letter(0) == 'I');
  CHECK(p.letter(1) == 'X');
  CHECK(p.letter(2) == 'Y');
  CHECK(p.letter(3) == 'Z');
  CHECK(p.weight() == 3);
  CHECK(p.support() == std::vector<std::size_t>{1, 2, 3});
  CHECK(p.y_count() == 1);
  CHECK(p.is_hermitian());
  CHECK(p.sign() == 1);
  p.negate();
  CHECK(p.sign() == -1);
  CHECK(p.is_hermitian());
}

TEST_CASE("hermiticity tracks the phase/Y parity") {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 1 + rng() % 6;
    const PauliString p = random_pauli(n, rng, true);
    const auto m = oracle::pauli_matrix(p);
    CHECK(p.is_hermitian() == oracle::approx_equal(m, m.adjoint()));
    if (p.is_hermitian()) {
      // sign() matches the matrix in front of the letter string.
      PauliString letters = PauliString::from_letters([&] {
        std::string s;
        for (std::size_t q = 0; q < n; ++q) s.push_back(p.letter(q));
        return s;
      }());
      CHECK(oracle::approx_equal(
          m, static_cast<double>(p.sign()) * oracle::pauli_matrix(letters)));
    }
  }
}

TEST_CASE("family enumeration has the advertised size and contents") {
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto nn = cvqa::enumerate_family(cvqa::PauliFamily::weight2_nn, n);
    const auto all = cvqa::enumerate_family(cvqa::PauliFamily::weight2_all, n);
    CHECK(nn.size() == 9 * (n - 1));
    CHECK(all.size() == 9 * n * (n - 1) / 2);
    std::set<std::string> seen;
    for (const PauliString& p : all) {
      CHECK(p.weight() == 2);
      CHECK(p.is_hermitian());
      CHECK(p.sign() == 1);
      CHECK(seen.insert(p.to_text()).second);
    }
    for (const PauliString& p : nn) {
      const auto s = p.support();
      REQUIRE(s.size() == 2);
      CHECK(s[1] == s[0] + 1);
      CHECK(seen.count(p.to_text()) == 1);
    }
  }
}

TEST_CASE("observable rejects duplicates and non-Hermitian terms") {
  Observable o(2);
  o.add_term(0.5, PauliString::from_text("+XZ"));
  CHECK_THROWS_AS(o.add_term(1.0, PauliString::from_text("+XZ")),
                  std::invalid_argument);
  CHECK_THROWS_AS(o.add_term(1.0, PauliString::from_text("-XZ")),
                  std::invalid_argument);
  PauliString bad(2);
  bad.set_letter(0, 'X');
  bad.add_phase(1);  // iX is not Hermitian
  CHECK_THROWS_AS(o.add_term(1.0, bad), std::invalid_argument);
  o.add_term(-2.0, PauliString::from_text("+ZZ"));
  CHECK(o.terms().size() == 2);
  // Negative-sign strings fold into the coefficient.
  Observable folded = Observable::single(PauliString::from_text("-YY"), 3.0);
  CHECK(folded.terms()[0].coefficient == -3.0);
  CHECK(folded.terms()[0].pauli.sign() == 1);
}

TEST_CASE("symplectic basis matches brute-force group span") {
  std::mt19937_64 rng(15);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 2 + rng() % 2;
    cvqa::SymplecticBasis basis(n);
    std::vector<PauliString> gens;
    const std::size_t count = 1 + rng() % 4;
    for (std::size_t i = 0; i < count; ++i) {
      PauliString p(n);
      static constexpr char kLetters[4] = {'I', 'X', 'Y', 'Z'};
      for (std::size_t q = 0; q < n; ++q) p.set_letter(q, kLetters[rng() % 4]);
      gens.push_back(p);
      basis.insert(p);
    }
    // Brute-force span: all GF(2) combinations of the generators.
    std::set<std::string> span;
    for (std::size_t mask = 0; mask < (std::size_t{1} << gens.size()); ++mask) {
      PauliString acc(n);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        if ((mask >> i) & 1) acc = mul(acc, gens[i]);
      }
      // Key on the symplectic part only.
      std::string key;
      for (std::size_t q = 0; q < n; ++q) {
        key.push_back('0' + acc.x(q));
        key.push_back('0' + acc.z(q));
      }
      span.insert(key);
    }
    CHECK((std::size_t{1} << basis.rank()) == span.size());
    // Membership agrees for random probes.
    for (int probe = 0; probe < 40; ++probe) {
      const PauliString p = random_pauli(n, rng);
      std::string key;
      for (std::size_t q = 0; q < n; ++q) {
        key.push_back('0' + p.x(q));
        key.push_back('0' + p.z(q));
      }
      CHECK(basis.contains(p) == (span.count(key) == 1));
    }
    // Insert is idempotent on members.
    for (const PauliString& g : gens) {
      CHECK_FALSE(basis.insert(g));
    }
  }
}
