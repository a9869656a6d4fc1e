#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cvqa/circuit.hpp"
#include "cvqa/clifford.hpp"
#include "cvqa/pauli.hpp"

namespace cvqa {

/// Signals that a Pauli-propagation expansion would exceed its term cap.
/// This marks the expansion as intractable, not a bug.
class TermCapExceeded : public std::runtime_error {
 public:
  explicit TermCapExceeded(std::size_t cap)
      : std::runtime_error("Pauli propagation term cap exceeded"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

enum class TrigSym : std::uint8_t { one, cos, sin };

struct FourierTerm {
  std::vector<TrigSym> signature;  // one symbol per parameter
  double coefficient;

  /// Number of non-constant symbols in the signature.
  std::size_t level() const;
};

/// Exact multi-angle trigonometric expansion of a single-Pauli loss.
/// Evaluation at any point equals the loss; the constant term equals the
/// uniform parameter average of the loss.
class FourierExpansion {
 public:
  FourierExpansion(std::size_t m, std::vector<FourierTerm> terms)
      : m_(m), terms_(std::move(terms)) {}

  std::size_t num_params() const { return m_; }
  const std::vector<FourierTerm>& terms() const { return terms_; }

  double evaluate(const ParamPoint& point) const;
  double constant_term() const;
  /// Term counts indexed by level, length m+1.
  std::vector<std::size_t> level_histogram() const;

 private:
  std::size_t m_;
  std::vector<FourierTerm> terms_;
};

constexpr std::size_t kDefaultTermCap = std::size_t{1} << 20;

/// Backward branching Heisenberg propagation of a single Hermitian Pauli.
/// Each rotation whose generator anticommutes with a branch splits it into
/// a cos and a sin part; terminal branches are scored against rho.
FourierExpansion fourier_expand(const ParamCircuit& circuit,
                                const PauliString& observable,
                                const StabilizerState& rho,
                                std::size_t term_cap = kDefaultTermCap);

double eval_pauliprop(const ParamCircuit& circuit, const PauliString& observable,
                      const ParamPoint& point, const StabilizerState& rho,
                      std::size_t term_cap = kDefaultTermCap);

double eval_pauliprop(const ParamCircuit& circuit, const Observable& o,
                      const ParamPoint& point, const StabilizerState& rho,
                      std::size_t term_cap = kDefaultTermCap);

}  // namespace cvqa
