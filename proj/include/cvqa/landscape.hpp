#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cvqa/circuit.hpp"
#include "cvqa/evaluate.hpp"
#include "cvqa/pauli.hpp"
#include "cvqa/symplectic.hpp"

namespace cvqa {

constexpr double kMachineZero = 1e-12;

/// Indices k whose variation leaves the single-Pauli loss unchanged at the
/// given Clifford point: the observable propagated backward through every
/// gate after rotation k commutes with the rotation's generator. One
/// backward sweep, sorted output.
std::vector<std::size_t> null_directions(const ParamCircuit& circuit,
                                         const CliffordPoint& point,
                                         const PauliString& observable);

/// Per-stage sampling/verification budget. The per-stage point count for
/// an n-qubit search over a family of size f defaults to floor(30*2^n/f).
struct SearchBudget {
  std::size_t points_per_stage;
  std::size_t stage_cap = 64;
  std::size_t verification_samples = 10;
  std::uint64_t seed = 0;

  static std::size_t default_points(std::size_t n, std::size_t family_size);
};

struct StageRecord {
  PauliString pauli;
  std::size_t free_before;
  std::size_t free_after;
};

/// A Clifford point with its greedily optimized Pauli set and fixed/free
/// parameter split. Every optimized Pauli evaluates to -1 at the point and
/// stays at -1 for any completion of the free coordinates.
struct CriticalPoint {
  SplitPoint split;
  std::vector<PauliString> optimized;
  SymplecticBasis basis;
  std::vector<StageRecord> history;
};

/// Samples Clifford values of the free coordinates only and scans the
/// family for an expectation of exactly -1; returns the first hit in
/// family order, or nullopt when the budget is exhausted.
std::optional<std::pair<PauliString, CliffordPoint>> find_pauli_minimum(
    const ParamCircuit& circuit, const std::vector<PauliString>& family,
    const SplitPoint& split, std::size_t budget_points, std::uint64_t seed,
    const StabilizerState& rho);

/// Greedy siloed-minimum construction: repeatedly finds a family member
/// with value -1 over the current free coordinates, fixes the non-null
/// directions, and keeps only span-independent candidates.
CriticalPoint greedy_siloed_search(const ParamCircuit& circuit,
                                   const std::vector<PauliString>& family,
                                   const SearchBudget& budget,
                                   const StabilizerState& rho);

/// Family members whose symplectic vector is not in span(cp.basis).
std::vector<PauliString> independent_remainder(
    const std::vector<PauliString>& family, const CriticalPoint& cp);

/// True iff the single-Pauli loss is zero (|L| <= 1e-12, statevector
/// engine) at `samples` uniform completions of the free coordinates.
bool verify_exact_zero(const ParamCircuit& circuit, const CriticalPoint& cp,
                       const PauliString& observable, std::size_t samples,
                       std::uint64_t seed);

/// Fraction of (up to component_budget) randomly chosen fixed-coordinate
/// gradient components that vanish to 1e-12 at every one of `samples`
/// uniform completions of the free coordinates.
double verify_gradients_vanish(const ParamCircuit& circuit,
                               const CriticalPoint& cp,
                               const PauliString& observable,
                               std::size_t component_budget,
                               std::size_t samples, std::uint64_t seed);

enum class LmVerdict { zero_approx, eps_approx, not_critical };

const char* lm_verdict_name(LmVerdict v);

struct ApproxLMReport {
  CliffordPoint point;
  double epsilon;
  double max_abs_gradient;
  bool hessian_computed;
  double min_hessian_eigenvalue;  // valid only when hessian_computed
  std::size_t components_checked;
  LmVerdict verdict;
};

/// Exact Clifford-path check: all m gradient components, plus the full
/// Hessian and its minimum eigenvalue when m <= hessian_cap.
ApproxLMReport approximate_lm_check(const ParamCircuit& circuit,
                                    const Observable& o,
                                    const CliffordPoint& point, double epsilon,
                                    std::size_t hessian_cap,
                                    const StabilizerState& rho);

}  // namespace cvqa
