#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "cvqa/clifford.hpp"
#include "cvqa/pauli.hpp"
#include "dense_oracle.hpp"

using cvqa::CliffordGate;
using cvqa::GateKind;
using cvqa::PauliString;
using cvqa::StabilizerState;

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

CliffordGate random_gate(std::size_t n, std::mt19937_64& rng) {
  static constexpr GateKind kOne[] = {GateKind::H, GateKind::S, GateKind::Sdg,
                                      GateKind::X, GateKind::Y, GateKind::Z};
  static constexpr GateKind kTwo[] = {GateKind::CX, GateKind::CZ,
                                      GateKind::SWAP};
  if (n >= 2 && rng() % 3 == 0) {
    const std::size_t a = rng() % n;
    std::size_t b = rng() % (n - 1);
    if (b >= a) ++b;
    return CliffordGate::two(kTwo[rng() % 3], a, b);
  }
  return CliffordGate::one(kOne[rng() % 6], rng() % n);
}

CliffordGate inverse_gate(const CliffordGate& g) {
  if (g.kind == GateKind::S) return CliffordGate::one(GateKind::Sdg, g.q0);
  if (g.kind == GateKind::Sdg) return CliffordGate::one(GateKind::S, g.q0);
  return g;  // every other kind is an involution
}

}  // namespace

TEST_CASE("conj_gate equals g^dagger P g on the matrix oracle") {
  std::mt19937_64 rng(21);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 150; ++rep) {
      const CliffordGate g = random_gate(n, rng);
      const PauliString p = random_pauli(n, rng, true);
      const auto gm = oracle::gate_matrix(g, n);
      const oracle::Mat expected = gm.adjoint() * oracle::pauli_matrix(p) * gm;
      CAPTURE(cvqa::gate_name(g.kind));
      CHECK(oracle::approx_equal(oracle::pauli_matrix(cvqa::conj_gate(g, p)),
                                 expected));
    }
  }
}

TEST_CASE("conj_gate preserves weight structure and commutation") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 2 + rng() % 4;
    const CliffordGate g = random_gate(n, rng);
    const PauliString p = random_pauli(n, rng);
    const PauliString q = random_pauli(n, rng);
    const PauliString cp = cvqa::conj_gate(g, p);
    const PauliString cq = cvqa::conj_gate(g, q);
    CHECK(p.commutes(q) == cp.commutes(cq));
    CHECK(p.is_hermitian() == cp.is_hermitian());
    // mul commutes with conjugation.
    CHECK(cvqa::conj_gate(g, mul(p, q)) == mul(cp, cq));
  }
}

TEST_CASE("conj_gate rejects bad targets") {
  const PauliString p(2);
  CHECK_THROWS_AS(cvqa::conj_gate(CliffordGate::one(GateKind::H, 2), p),
                  std::invalid_argument);
  CHECK_THROWS_AS(cvqa::conj_gate(CliffordGate::two(GateKind::CX, 0, 0), p),
                  std::invalid_argument);
  CHECK_THROWS_AS(cvqa::conj_gate(CliffordGate::two(GateKind::CZ, 0, 2), p),
                  std::invalid_argument);
}

TEST_CASE("quarter-turn rotation conjugation matches the exponential") {
  std::mt19937_64 rng(23);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int rep = 0; rep < 60; ++rep) {
      PauliString gen = random_pauli(n, rng);
      if (gen.is_identity()) gen.set_letter(0, 'X');
      const PauliString p = random_pauli(n, rng, true);
      for (int k = 0; k < 4; ++k) {
        const double theta = k * (std::numbers::pi / 2.0);
        const auto u = oracle::rotation_matrix(gen, theta, n);
        const oracle::Mat expected = u.adjoint() * oracle::pauli_matrix(p) * u;
        const PauliString got = cvqa::conj_rotation_quarter(gen, k, p);
        CAPTURE(k);
        CHECK(oracle::approx_equal(oracle::pauli_matrix(got), expected, 1e-12));
      }
    }
  }
}

TEST_CASE("default stabilizer state is |0...0>") {
  std::mt19937_64 rng(24);
  for (std::size_t n = 1; n <= 4; ++n) {
    const StabilizerState rho(n);
    oracle::Vec zero = oracle::Vec::Zero(std::size_t{1} << n);
    zero(0) = 1.0;
    for (int rep = 0; rep < 80; ++rep) {
      PauliString p = random_pauli(n, rng);
      if (rng() % 2) p.negate();
      const double expected = oracle::expectation(zero, p);
      CHECK(rho.expectation(p) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("expectation after a random Clifford word matches the dense state") {
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<CliffordGate> word;
    for (int i = 0; i < 8; ++i) word.push_back(random_gate(n, rng));

    // Dense |psi> = C|0...0>.
    oracle::Vec psi = oracle::Vec::Zero(std::size_t{1} << n);
    psi(0) = 1.0;
    for (const CliffordGate& g : word) {
      psi = oracle::gate_matrix(g, n) * psi;
    }

    for (int probe = 0; probe < 30; ++probe) {
      PauliString p = random_pauli(n, rng);
      if (rng() % 2) p.negate();
      // <psi|P|psi> = <0|C^dag P C|0>: pull P back through the word.
      PauliString back = p;
      for (auto it = word.rbegin(); it != word.rend(); ++it) {
        back = cvqa::conj_gate(*it, back);
      }
      const StabilizerState rho(n);
      CHECK(rho.expectation(back) ==
            doctest::Approx(oracle::expectation(psi, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("explicit generator sets reproduce dense expectations") {
  std::mt19937_64 rng(26);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 2 + rng() % 2;
    std::vector<CliffordGate> word;
    for (int i = 0; i < 6; ++i) word.push_back(random_gate(n, rng));

    // Generators of C|0>: S_q = C Z_q C^dag, via conjugation by the
    // inverse word.
    std::vector<PauliString> gens;
    for (std::size_t q = 0; q < n; ++q) {
      PauliString z(n);
      z.set_letter(q, 'Z');
      for (const CliffordGate& g : word) {
        z = cvqa::conj_gate(inverse_gate(g), z);
      }
      gens.push_back(z);
    }
    const StabilizerState rho(n, gens);

    oracle::Vec psi = oracle::Vec::Zero(std::size_t{1} << n);
    psi(0) = 1.0;
    for (const CliffordGate& g : word) {
      psi = oracle::gate_matrix(g, n) * psi;
    }
    for (int probe = 0; probe < 30; ++probe) {
      const PauliString p = random_pauli(n, rng);
      CHECK(rho.expectation(p) ==
            doctest::Approx(oracle::expectation(psi, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("stabilizer constructor validates its generators") {
  // Anticommuting pair.
  CHECK_THROWS_AS(
      StabilizerState(1, {PauliString::from_text("+X"),
                          PauliString::from_text("+Z")}),
      std::invalid_argument);
  // Dependent set.
  CHECK_THROWS_AS(
      StabilizerState(2, {PauliString::from_text("+ZI"),
                          PauliString::from_text("+ZI")}),
      std::invalid_argument);
  // Wrong count.
  CHECK_THROWS_AS(StabilizerState(2, {PauliString::from_text("+ZI")}),
                  std::invalid_argument);
  // Non-Hermitian generator.
  PauliString bad(1);
  bad.set_letter(0, 'Z');
  bad.add_phase(1);
  CHECK_THROWS_AS(StabilizerState(1, {bad}), std::invalid_argument);
  // Bell pair works.
  const StabilizerState bell(2, {PauliString::from_text("+XX"),
                                 PauliString::from_text("+ZZ")});
  CHECK(bell.expectation(PauliString::from_text("+XX")) == 1);
  CHECK(bell.expectation(PauliString::from_text("+ZZ")) == 1);
  CHECK(bell.expectation(PauliString::from_text("+YY")) == -1);
  CHECK(bell.expectation(PauliString::from_text("+ZI")) == 0);
}
