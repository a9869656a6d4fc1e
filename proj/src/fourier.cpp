#include "cvqa/fourier.hpp"

#include <cmath>
#include <unordered_map>
#include <variant>

namespace cvqa {

namespace {

constexpr double kPruneThreshold = 1e-15;

struct Branch {
  PauliString pauli;  // Hermitian, sign folded into coefficient
  std::vector<TrigSym> signature;
  double coefficient;
};

// Canonicalize: keep the +1-sign representative, move the sign into the
// coefficient.
void canonicalize(Branch& b) {
  const int s = b.pauli.sign();
  if (s < 0) {
    b.pauli.negate();
    b.coefficient = -b.coefficient;
  }
}

struct BranchKey {
  std::uint64_t pauli_hash;
  const Branch* branch;
};

std::uint64_t hash_branch(const Branch& b) {
  std::uint64_t h = b.pauli.symplectic_hash();
  for (TrigSym s : b.signature) {
    h = h * 1099511628211ULL + static_cast<std::uint64_t>(s) + 1;
  }
  return h;
}

bool same_key(const Branch& a, const Branch& b) {
  return a.signature == b.signature && a.pauli.same_symplectic(b.pauli);
}

// Merge branches with identical (Pauli, signature), drop cancellations.
std::vector<Branch> merge(std::vector<Branch> branches) {
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
  std::vector<Branch> out;
  out.reserve(branches.size());
  for (Branch& b : branches) {
    const std::uint64_t h = hash_branch(b);
    auto& bucket = buckets[h];
    bool merged = false;
    for (std::size_t idx : bucket) {
      if (same_key(out[idx], b)) {
        out[idx].coefficient += b.coefficient;
        merged = true;
        break;
      }
    }
    if (!merged) {
      bucket.push_back(out.size());
      out.push_back(std::move(b));
    }
  }
  std::vector<Branch> pruned;
  pruned.reserve(out.size());
  for (Branch& b : out) {
    if (std::abs(b.coefficient) > kPruneThreshold) {
      pruned.push_back(std::move(b));
    }
  }
  return pruned;
}

}  // namespace

std::size_t FourierTerm::level() const {
  std::size_t l = 0;
  for (TrigSym s : signature) {
    if (s != TrigSym::one) ++l;
  }
  return l;
}

double FourierExpansion::evaluate(const ParamPoint& point) const {
  if (point.angles.size() != m_) {
    throw std::invalid_argument("parameter count mismatch");
  }
  double acc = 0.0;
  for (const FourierTerm& t : terms_) {
    double v = t.coefficient;
    for (std::size_t k = 0; k < m_; ++k) {
      switch (t.signature[k]) {
        case TrigSym::one:
          break;
        case TrigSym::cos:
          v *= std::cos(point.angles[k]);
          break;
        case TrigSym::sin:
          v *= std::sin(point.angles[k]);
          break;
      }
    }
    acc += v;
  }
  return acc;
}

double FourierExpansion::constant_term() const {
  for (const FourierTerm& t : terms_) {
    if (t.level() == 0) return t.coefficient;
  }
  return 0.0;
}

std::vector<std::size_t> FourierExpansion::level_histogram() const {
  std::vector<std::size_t> hist(m_ + 1, 0);
  for (const FourierTerm& t : terms_) {
    ++hist[t.level()];
  }
  return hist;
}

FourierExpansion fourier_expand(const ParamCircuit& circuit,
                                const PauliString& observable,
                                const StabilizerState& rho,
                                std::size_t term_cap) {
  if (!observable.is_hermitian()) {
    throw std::invalid_argument("observable must be Hermitian");
  }
  const std::size_t m = circuit.num_params();
  std::vector<Branch> branches;
  branches.push_back(
      Branch{observable, std::vector<TrigSym>(m, TrigSym::one), 1.0});
  canonicalize(branches.front());

  const auto& ops = circuit.ops();
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (const auto* g = std::get_if<CliffordGate>(&*it)) {
      for (Branch& b : branches) {
        b.pauli = conj_gate(*g, b.pauli);
        canonicalize(b);
      }
      continue;
    }
    const auto& rot = std::get<Rotation>(*it);
    std::vector<Branch> next;
    next.reserve(branches.size() * 2);
    for (Branch& b : branches) {
      if (rot.generator.commutes(b.pauli)) {
        next.push_back(std::move(b));
        continue;
      }
      // e^{iG phi/2} P e^{-iG phi/2} = cos(phi) P + sin(phi) (iGP)
      Branch cos_part = b;
      cos_part.signature[rot.param_index] = TrigSym::cos;
      next.push_back(std::move(cos_part));

      Branch sin_part{mul(rot.generator, b.pauli), std::move(b.signature),
                      b.coefficient};
      sin_part.pauli.add_phase(1);
      sin_part.signature[rot.param_index] = TrigSym::sin;
      canonicalize(sin_part);
      next.push_back(std::move(sin_part));
    }
    branches = merge(std::move(next));
    if (branches.size() > term_cap) {
      throw TermCapExceeded(term_cap);
    }
  }

  std::vector<FourierTerm> terms;
  for (Branch& b : branches) {
    const int e = rho.expectation(b.pauli);
    const double c = b.coefficient * e;
    if (std::abs(c) > kPruneThreshold) {
      terms.push_back(FourierTerm{std::move(b.signature), c});
    }
  }
  return FourierExpansion(m, std::move(terms));
}

double eval_pauliprop(const ParamCircuit& circuit, const PauliString& observable,
                      const ParamPoint& point, const StabilizerState& rho,
                      std::size_t term_cap) {
  return fourier_expand(circuit, observable, rho, term_cap).evaluate(point);
}

double eval_pauliprop(const ParamCircuit& circuit, const Observable& o,
                      const ParamPoint& point, const StabilizerState& rho,
                      std::size_t term_cap) {
  double acc = 0.0;
  for (const auto& term : o.terms()) {
    acc += term.coefficient *
           eval_pauliprop(circuit, term.pauli, point, rho, term_cap);
  }
  return acc;
}

}  // namespace cvqa
