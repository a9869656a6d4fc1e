#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cvqa/circuit.hpp"
#include "cvqa/clifford.hpp"
#include "cvqa/fourier.hpp"
#include "cvqa/pauli.hpp"
#include "cvqa/statevector.hpp"

namespace cvqa {

enum class Engine { clifford, statevector, pauli_prop };

/// Full backward propagation U^dagger P U through the circuit with every
/// rotation at its Clifford value. Output is Hermitian up to sign.
PauliString heisenberg_at_clifford(const ParamCircuit& circuit,
                                   const CliffordPoint& point,
                                   const PauliString& p);

/// Exact loss at a Clifford point: sum_i c_i <rho| U^dag P_i U |rho>.
double eval_clifford(const ParamCircuit& circuit, const Observable& o,
                     const CliffordPoint& point, const StabilizerState& rho);
double eval_clifford(const ParamCircuit& circuit, const Observable& o,
                     const CliffordPoint& point);

/// Parameter-shift gradient: (L(p + pi/2 e_k) - L(p - pi/2 e_k)) / 2.
double gradient_shift(Engine engine, const ParamCircuit& circuit,
                      const Observable& o, const ParamPoint& point,
                      std::size_t k);
/// Exact Clifford-path gradient; the shifted points stay Clifford.
double gradient_shift(const ParamCircuit& circuit, const Observable& o,
                      const CliffordPoint& point, std::size_t k,
                      const StabilizerState& rho);
double gradient_shift(const ParamCircuit& circuit, const Observable& o,
                      const CliffordPoint& point, std::size_t k);

/// Hessian entry via nested parameter shifts (4 evaluations).
double hessian_shift(Engine engine, const ParamCircuit& circuit,
                     const Observable& o, const ParamPoint& point,
                     std::size_t k, std::size_t l);
double hessian_shift(const ParamCircuit& circuit, const Observable& o,
                     const CliffordPoint& point, std::size_t k, std::size_t l,
                     const StabilizerState& rho);

constexpr std::size_t kDefaultExactMeanParamCap = 10;

/// Exact average of the loss over all 4^m Clifford points.
/// Throws std::length_error when 4^m exceeds the budget implied by the cap.
double mean_over_clifford(const ParamCircuit& circuit, const Observable& o,
                          const StabilizerState& rho,
                          std::size_t param_cap = kDefaultExactMeanParamCap);
double mean_over_clifford(const ParamCircuit& circuit, const Observable& o,
                          std::size_t param_cap = kDefaultExactMeanParamCap);

/// Unbiased Monte Carlo estimate of the Clifford-point average.
double clifford_mean_sampled(const ParamCircuit& circuit, const Observable& o,
                             std::size_t num_samples, std::uint64_t seed,
                             const StabilizerState& rho);

enum class VarianceMode {
  uniform,
  clifford,
  clifford_conditioned,       // points where >= 1 family member is non-zero
  clifford_conditioned_excl,  // conditioning excludes the reported observable
};

const char* variance_mode_name(VarianceMode mode);

struct VarianceReport {
  std::string observable;  // text form
  VarianceMode mode;
  std::size_t sample_count;  // points contributing to the statistics
  double mean;
  double variance;  // unbiased (N-1 denominator)
  double second_moment;
  double nonzero_fraction;  // Clifford modes only, 0 otherwise
};

/// Per-observable sample statistics over N points in the given mode.
/// Conditioned modes reuse the Clifford samples for the same seed; an empty
/// conditioned set is reported with sample_count 0, not as an error.
std::vector<VarianceReport> variance_scan(const ParamCircuit& circuit,
                                          const std::vector<PauliString>& family,
                                          std::size_t num_points,
                                          std::uint64_t seed, VarianceMode mode,
                                          const StabilizerState& rho);

}  // namespace cvqa
