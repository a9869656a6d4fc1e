#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvqa/pauli.hpp"

namespace cvqa {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EngineCaps {
  std::size_t statevector_qubits = 14;
  std::size_t pauliprop_terms = std::size_t{1} << 20;
  std::size_t exact_mean_params = 10;
  std::size_t exact_identity_params = 8;
  std::size_t hessian_params = 128;
};

/// Experiment configuration: flat key/value file with one level of
/// sections, e.g.
///
///   experiment = variance_scan
///   [grid]
///   qubits = 2,4,6,8
///   layers = 30,50
///   family = p2nn
///   [sampling]
///   samples = 50
///   seed = 1
///   [output]
///   dir = out
struct RunConfig {
  std::string experiment;  // optional; must match the subcommand when set
  std::vector<std::size_t> qubit_counts = {2, 4, 6, 8};
  std::vector<std::size_t> layer_counts = {30, 50};
  PauliFamily family = PauliFamily::weight2_nn;
  std::vector<std::string> circuits = {"empty", "product_rx", "brickwork1"};
  std::size_t samples = 50;
  std::size_t trials = 10;
  std::size_t verification_samples = 10;
  bool seed_set = false;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  std::string out_dir = "out";
  EngineCaps caps;

  static RunConfig from_file(const std::string& path);
  /// Throws ConfigError unless lists are non-empty and the seed is set.
  void validate(const std::string& subcommand) const;
};

/// Variance-scaling study: per-(n, layers) variance statistics of the family
/// under uniform, Clifford, and conditioned-Clifford sampling. Writes
/// variance.csv and manifest.json under the output directory.
void run_variance_scan(const RunConfig& config);

/// Siloed-minimum study: greedy search trials with independence
/// filtering and exact-zero/gradient verification over the remainder.
/// Writes trials.jsonl, summary.csv and manifest.json.
void run_exact_minima(const RunConfig& config);

/// Random-observable second-moment identity: exact enumeration over all
/// Paulis and Clifford points for small (n, m), Monte Carlo otherwise.
/// Writes random_obs.csv and manifest.json.
void run_random_observable_identity(const RunConfig& config);

/// Averaging-identity, single-angle trig-fit, zero-mean-dichotomy and
/// fixture suites; writes lemma_checks.csv and manifest.json. Returns
/// true iff every check passed.
bool run_lemma_checks(const RunConfig& config);

/// Renders a CSV produced by the runners above into a deterministic SVG
/// scatter with a log2 y-axis and 2^-n guide lines.
/// kind is "variance" or "exact_minima". Throws ConfigError on a schema
/// mismatch.
void emit_plot(const std::string& csv_path, const std::string& kind,
               const std::string& svg_path);

/// FNV-1a 64-bit digest used in manifests, as a hex string.
std::string fnv1a_digest(const std::string& bytes);

}  // namespace cvqa
