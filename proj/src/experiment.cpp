#include "cvqa/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "cvqa/circuit.hpp"
#include "cvqa/evaluate.hpp"
#include "cvqa/fourier.hpp"
#include "cvqa/landscape.hpp"
#include "cvqa/parallel.hpp"
#include "cvqa/rng.hpp"
#include "cvqa/statevector.hpp"

namespace cvqa {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kCodeVersion = "0.1.0";

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::uint64_t parse_u64(const std::string& tok, const std::string& key) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad integer '" + tok + "' for " + key);
  }
}

std::vector<std::size_t> parse_size_list(const std::string& s,
                                         const std::string& key) {
  std::vector<std::size_t> out;
  for (const std::string& tok : split_list(s)) {
    out.push_back(parse_u64(tok, key));
  }
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

const char* family_name(PauliFamily f) {
  return f == PauliFamily::weight2_nn ? "p2nn" : "p2";
}

// Writes the manifest (config echo, derived constants, digests) before the
// data files themselves are put in place.
class OutputBundle {
 public:
  OutputBundle(const RunConfig& config, const std::string& experiment)
      : config_(config),
        experiment_(experiment),
        start_(std::chrono::steady_clock::now()) {}

  void add_file(const std::string& name, std::string content) {
    files_.emplace_back(name, std::move(content));
  }

  void add_derived(const std::string& key, const ordered_json& value) {
    derived_[key] = value;
  }

  void finalize() {
    namespace fs = std::filesystem;
    fs::create_directories(config_.out_dir);
    ordered_json manifest;
    manifest["experiment"] = experiment_;
    manifest["code_version"] = kCodeVersion;
    ordered_json cfg;
    cfg["qubits"] = config_.qubit_counts;
    cfg["layers"] = config_.layer_counts;
    cfg["family"] = family_name(config_.family);
    cfg["circuits"] = config_.circuits;
    cfg["samples"] = config_.samples;
    cfg["trials"] = config_.trials;
    cfg["verification_samples"] = config_.verification_samples;
    cfg["seed"] = config_.seed;
    cfg["threads"] = config_.threads;
    cfg["caps"] = {{"statevector_qubits", config_.caps.statevector_qubits},
                   {"pauliprop_terms", config_.caps.pauliprop_terms},
                   {"exact_mean_params", config_.caps.exact_mean_params},
                   {"exact_identity_params", config_.caps.exact_identity_params},
                   {"hessian_params", config_.caps.hessian_params}};
    manifest["config"] = cfg;
    manifest["derived"] = derived_;
    ordered_json digests;
    for (const auto& [name, content] : files_) {
      digests[name] = fnv1a_digest(content);
    }
    manifest["digests"] = digests;
    const auto elapsed = std::chrono::duration<double>(
        std::chrono::steady_clock::now() - start_);
    manifest["wall_time_seconds"] = elapsed.count();

    {
      std::ofstream mf(fs::path(config_.out_dir) / "manifest.json");
      mf << manifest.dump(2) << "\n";
    }
    for (const auto& [name, content] : files_) {
      const fs::path tmp = fs::path(config_.out_dir) / (name + ".tmp");
      const fs::path final_path = fs::path(config_.out_dir) / name;
      {
        std::ofstream f(tmp, std::ios::binary);
        f << content;
      }
      fs::rename(tmp, final_path);
    }
  }

 private:
  const RunConfig& config_;
  std::string experiment_;
  std::chrono::steady_clock::time_point start_;
  ordered_json derived_ = ordered_json::object();
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path);
  }
  std::map<std::string, std::string> kv;
  std::string section;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError("bad section line: " + line);
      }
      section = t.substr(1, t.size() - 2);
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value: " + line);
    }
    const std::string key =
        (section.empty() ? "" : section + ".") + trim(t.substr(0, eq));
    kv[key] = trim(t.substr(eq + 1));
  }

  RunConfig config;
  auto take = [&kv](const std::string& key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = take("experiment")) config.experiment = *v;
  if (const auto* v = take("grid.qubits"))
    config.qubit_counts = parse_size_list(*v, "grid.qubits");
  if (const auto* v = take("grid.layers"))
    config.layer_counts = parse_size_list(*v, "grid.layers");
  if (const auto* v = take("grid.family")) {
    if (*v == "p2nn") config.family = PauliFamily::weight2_nn;
    else if (*v == "p2") config.family = PauliFamily::weight2_all;
    else throw ConfigError("grid.family must be p2nn or p2");
  }
  if (const auto* v = take("grid.circuits")) config.circuits = split_list(*v);
  if (const auto* v = take("sampling.samples"))
    config.samples = parse_u64(*v, "sampling.samples");
  if (const auto* v = take("sampling.trials"))
    config.trials = parse_u64(*v, "sampling.trials");
  if (const auto* v = take("sampling.verification_samples"))
    config.verification_samples = parse_u64(*v, "sampling.verification_samples");
  if (const auto* v = take("sampling.seed")) {
    config.seed = parse_u64(*v, "sampling.seed");
    config.seed_set = true;
  }
  if (const auto* v = take("run.threads"))
    config.threads = parse_u64(*v, "run.threads");
  if (const auto* v = take("output.dir")) config.out_dir = *v;
  if (const auto* v = take("engine.statevector_qubits"))
    config.caps.statevector_qubits = parse_u64(*v, "engine.statevector_qubits");
  if (const auto* v = take("engine.pauliprop_terms"))
    config.caps.pauliprop_terms = parse_u64(*v, "engine.pauliprop_terms");
  if (const auto* v = take("engine.exact_mean_params"))
    config.caps.exact_mean_params = parse_u64(*v, "engine.exact_mean_params");
  if (const auto* v = take("engine.exact_identity_params"))
    config.caps.exact_identity_params =
        parse_u64(*v, "engine.exact_identity_params");
  if (const auto* v = take("engine.hessian_params"))
    config.caps.hessian_params = parse_u64(*v, "engine.hessian_params");
  return config;
}

void RunConfig::validate(const std::string& subcommand) const {
  if (!seed_set) {
    throw ConfigError("seed is mandatory (config sampling.seed or --seed)");
  }
  if (qubit_counts.empty() || layer_counts.empty() || circuits.empty()) {
    throw ConfigError("qubit/layer/circuit lists must be non-empty");
  }
  if (samples == 0 || trials == 0 || verification_samples == 0) {
    throw ConfigError("sample and trial counts must be positive");
  }
  if (threads == 0) {
    throw ConfigError("threads must be positive");
  }
  if (!experiment.empty() && experiment != subcommand) {
    throw ConfigError("config experiment '" + experiment +
                      "' does not match subcommand '" + subcommand + "'");
  }
}

// ---------------------------------------------------------------------------
// variance-scan

namespace {

constexpr const char* kVarianceHeader =
    "# cvqa.variance.v1\n"
    "n,layers,observable,mode,N,mean,variance,nonzero_fraction,seed\n";

std::string variance_rows(const RunConfig& config, std::size_t n,
                          std::size_t layers) {
  const std::uint64_t cell_seed = derive_seed(config.seed, {n, layers});
  const ParamCircuit circuit = build_brickwork(n, layers);
  const auto family = enumerate_family(config.family, n);
  const StabilizerState rho(n);

  std::ostringstream out;
  auto emit = [&](const VarianceReport& r) {
    out << n << "," << layers << "," << r.observable << ","
        << variance_mode_name(r.mode) << "," << r.sample_count << ","
        << fmt_double(r.mean) << "," << fmt_double(r.variance) << ","
        << fmt_double(r.nonzero_fraction) << "," << cell_seed << "\n";
  };
  for (VarianceMode mode :
       {VarianceMode::uniform, VarianceMode::clifford,
        VarianceMode::clifford_conditioned,
        VarianceMode::clifford_conditioned_excl}) {
    const auto reports =
        variance_scan(circuit, family, config.samples, cell_seed, mode, rho);
    double mean_sum = 0.0, var_sum = 0.0, nz_sum = 0.0;
    std::size_t rows = 0;
    for (const auto& r : reports) {
      // An empty conditioned set yields a missing row.
      if (r.sample_count == 0) continue;
      emit(r);
      mean_sum += r.mean;
      var_sum += r.variance;
      nz_sum += r.nonzero_fraction;
      ++rows;
    }
    if (rows > 0) {
      VarianceReport avg;
      avg.observable = "FAMILY_AVG";
      avg.mode = mode;
      avg.sample_count = config.samples;
      avg.mean = mean_sum / static_cast<double>(rows);
      avg.variance = var_sum / static_cast<double>(rows);
      avg.nonzero_fraction = nz_sum / static_cast<double>(rows);
      emit(avg);
    }
  }
  return out.str();
}

}  // namespace

void run_variance_scan(const RunConfig& config) {
  OutputBundle bundle(config, "variance_scan");
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t n : config.qubit_counts) {
    for (std::size_t layers : config.layer_counts) {
      cells.emplace_back(n, layers);
    }
  }
  std::vector<std::string> chunks(cells.size());
  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    chunks[i] = variance_rows(config, cells[i].first, cells[i].second);
  });
  std::string csv = kVarianceHeader;
  for (const std::string& c : chunks) csv += c;
  bundle.add_derived("modes", ordered_json::array({"uniform", "clifford",
                                                   "clifford_conditioned",
                                                   "clifford_conditioned_excl"}));
  bundle.add_file("variance.csv", std::move(csv));
  bundle.finalize();
}

// ---------------------------------------------------------------------------
// exact-minima

namespace {

constexpr const char* kSummaryHeader =
    "# cvqa.exact_minima.v1\n"
    "n,layers,trial,seed,stage_budget,m,num_optimized,free_remaining,"
    "remainder_size,frac_values_nonzero,frac_grads_nonzero,status\n";

struct TrialResult {
  std::string record;   // one JSON line
  std::string summary;  // one CSV row
  std::size_t n;
  double frac_values_nonzero = 0.0;
  double frac_grads_nonzero = 0.0;
  bool produced = false;
};

TrialResult run_trial(const RunConfig& config, std::size_t n,
                      std::size_t layers, std::size_t trial) {
  const std::uint64_t trial_seed = derive_seed(config.seed, {n, layers, trial});
  const ParamCircuit circuit = build_brickwork(n, layers);
  const auto family = enumerate_family(config.family, n);
  const StabilizerState rho(n);

  SearchBudget budget;
  budget.points_per_stage = SearchBudget::default_points(n, family.size());
  budget.verification_samples = config.verification_samples;
  budget.seed = trial_seed;

  const CriticalPoint cp = greedy_siloed_search(circuit, family, budget, rho);
  const auto remainder = independent_remainder(family, cp);

  std::size_t values_nonzero = 0;
  double grads_nonzero_sum = 0.0;
  ordered_json verdicts = ordered_json::array();
  for (std::size_t i = 0; i < remainder.size(); ++i) {
    const PauliString& p = remainder[i];
    const std::uint64_t vseed = derive_seed(trial_seed, {0x76657269ULL, i});
    const bool zero = verify_exact_zero(circuit, cp, p,
                                        config.verification_samples, vseed);
    const double vanish_frac = verify_gradients_vanish(
        circuit, cp, p, budget.points_per_stage, config.verification_samples,
        vseed);
    if (!zero) ++values_nonzero;
    grads_nonzero_sum += 1.0 - vanish_frac;
    verdicts.push_back({{"pauli", p.to_text()},
                        {"value_zero", zero},
                        {"grad_vanish_fraction", vanish_frac}});
  }

  TrialResult result;
  result.n = n;
  result.produced = !cp.optimized.empty();
  const bool have_remainder = !remainder.empty();
  result.frac_values_nonzero =
      have_remainder ? static_cast<double>(values_nonzero) /
                           static_cast<double>(remainder.size())
                     : 0.0;
  result.frac_grads_nonzero =
      have_remainder ? grads_nonzero_sum / static_cast<double>(remainder.size())
                     : 0.0;

  ordered_json record;
  record["seed"] = trial_seed;
  record["n"] = n;
  record["layers"] = layers;
  record["trial"] = trial;
  record["stage_budget"] = budget.points_per_stage;
  ordered_json optimized = ordered_json::array();
  for (const PauliString& p : cp.optimized) optimized.push_back(p.to_text());
  record["optimized"] = optimized;
  record["fixed_indices"] = cp.split.fixed_indices;
  record["free_indices"] = cp.split.free_indices;
  ordered_json history = ordered_json::array();
  for (const StageRecord& h : cp.history) {
    history.push_back({{"pauli", h.pauli.to_text()},
                       {"free_before", h.free_before},
                       {"free_after", h.free_after}});
  }
  record["history"] = history;
  record["verdicts"] = verdicts;
  record["status"] = result.produced ? "ok" : "empty";
  result.record = record.dump();

  std::ostringstream row;
  row << n << "," << layers << "," << trial << "," << trial_seed << ","
      << budget.points_per_stage << "," << circuit.num_params() << ","
      << cp.optimized.size() << "," << cp.split.free_indices.size() << ","
      << remainder.size() << "," << fmt_double(result.frac_values_nonzero)
      << "," << fmt_double(result.frac_grads_nonzero) << ","
      << (result.produced ? "ok" : "empty") << "\n";
  result.summary = row.str();
  return result;
}

}  // namespace

void run_exact_minima(const RunConfig& config) {
  OutputBundle bundle(config, "exact_minima");
  struct Cell {
    std::size_t n, layers, trial;
  };
  std::vector<Cell> cells;
  for (std::size_t n : config.qubit_counts) {
    for (std::size_t layers : config.layer_counts) {
      for (std::size_t t = 0; t < config.trials; ++t) {
        cells.push_back(Cell{n, layers, t});
      }
    }
  }
  std::vector<TrialResult> results(cells.size());
  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    results[i] = run_trial(config, cells[i].n, cells[i].layers, cells[i].trial);
  });

  std::string records;
  std::string summary = kSummaryHeader;
  for (const TrialResult& r : results) {
    records += r.record + "\n";
    summary += r.summary;
  }
  // Per-n means over produced trials (empty trials are reported as rows but
  // excluded from the averages).
  ordered_json means = ordered_json::object();
  for (std::size_t n : config.qubit_counts) {
    double v = 0.0, g = 0.0;
    std::size_t count = 0;
    for (const TrialResult& r : results) {
      if (r.n == n && r.produced) {
        v += r.frac_values_nonzero;
        g += r.frac_grads_nonzero;
        ++count;
      }
    }
    if (count > 0) {
      means[std::to_string(n)] = {
          {"trials", count},
          {"mean_frac_values_nonzero", v / static_cast<double>(count)},
          {"mean_frac_grads_nonzero", g / static_cast<double>(count)}};
      summary += std::to_string(n) + ",,,,,,,,," +
                 fmt_double(v / static_cast<double>(count)) + "," +
                 fmt_double(g / static_cast<double>(count)) + ",mean\n";
    }
  }
  bundle.add_derived("per_n_means", means);
  bundle.add_derived("stage_budget_formula", "floor(30 * 2^n / |family|)");
  bundle.add_file("trials.jsonl", std::move(records));
  bundle.add_file("summary.csv", std::move(summary));
  bundle.finalize();
}

// ---------------------------------------------------------------------------
// random-obs

namespace {

constexpr const char* kRandomObsHeader =
    "# cvqa.random_obs.v1\n"
    "n,circuit,mode,samples,value,expected,abs_error,std_error,seed\n";

ParamCircuit circuit_by_name(const std::string& name, std::size_t n) {
  if (name == "empty") {
    return ParamCircuit(n);
  }
  if (name == "product_rx") {
    return build_fixture(FixtureKind::product_rx, n).circuit;
  }
  if (name == "brickwork1") {
    return build_brickwork(n, 1);
  }
  if (name.rfind("brickwork", 0) == 0) {
    return build_brickwork(n, std::stoull(name.substr(9)));
  }
  throw ConfigError("unknown circuit kind: " + name);
}

PauliString pauli_from_index(std::size_t n, std::uint64_t idx) {
  PauliString p(n);
  static constexpr char kMap[4] = {'I', 'X', 'Y', 'Z'};
  for (std::size_t q = 0; q < n; ++q) {
    p.set_letter(q, kMap[idx & 3]);
    idx >>= 2;
  }
  return p;
}

/// Exact E_P[E_phi[L_P^2]] by full enumeration of Paulis and Clifford
/// points. Throws std::length_error past the parameter cap.
double exact_second_moment(const ParamCircuit& circuit,
                           const StabilizerState& rho, std::size_t param_cap) {
  const std::size_t n = circuit.num_qubits();
  const std::size_t m = circuit.num_params();
  if (m > param_cap || n > 6) {
    throw std::length_error("exact random-observable budget exceeded");
  }
  const std::uint64_t num_points = std::uint64_t{1} << (2 * m);
  const std::uint64_t num_paulis = std::uint64_t{1} << (2 * n);
  CliffordPoint point;
  point.quarters.assign(m, 0);
  double acc = 0.0;
  for (std::uint64_t pt = 0; pt < num_points; ++pt) {
    std::uint64_t v = pt;
    for (std::size_t k = 0; k < m; ++k) {
      point.quarters[k] = static_cast<std::uint8_t>(v & 3);
      v >>= 2;
    }
    for (std::uint64_t pi = 0; pi < num_paulis; ++pi) {
      const PauliString back =
          heisenberg_at_clifford(circuit, point, pauli_from_index(n, pi));
      const int e = rho.expectation(back);
      acc += static_cast<double>(e) * static_cast<double>(e);
    }
  }
  return acc / static_cast<double>(num_points) /
         static_cast<double>(num_paulis);
}

}  // namespace

void run_random_observable_identity(const RunConfig& config) {
  OutputBundle bundle(config, "random_observable_identity");
  struct Cell {
    std::size_t n;
    std::string circuit;
  };
  std::vector<Cell> cells;
  for (std::size_t n : config.qubit_counts) {
    for (const std::string& c : config.circuits) {
      cells.push_back(Cell{n, c});
    }
  }
  std::vector<std::string> rows(cells.size());
  parallel_for(cells.size(), config.threads, [&](std::size_t i) {
    const std::size_t n = cells[i].n;
    const ParamCircuit circuit = circuit_by_name(cells[i].circuit, n);
    const StabilizerState rho(n);
    const double expected = std::pow(2.0, -static_cast<double>(n));
    const std::uint64_t cell_seed = derive_seed(config.seed, {n, i});
    std::ostringstream out;
    const std::size_t m = circuit.num_params();
    if (m <= config.caps.exact_identity_params && n <= 6) {
      const double value =
          exact_second_moment(circuit, rho, config.caps.exact_identity_params);
      out << n << "," << cells[i].circuit << ",exact,"
          << ((std::uint64_t{1} << (2 * m)) * (std::uint64_t{1} << (2 * n)))
          << "," << fmt_double(value) << "," << fmt_double(expected) << ","
          << fmt_double(std::abs(value - expected)) << ",0," << cell_seed
          << "\n";
    } else {
      // Monte Carlo over (observable, Clifford point) pairs.
      const std::size_t num = config.samples;
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t s = 0; s < num; ++s) {
        Rng rng(cell_seed, {0x70617372ULL, s});
        PauliString p(n);
        static constexpr char kMap[4] = {'I', 'X', 'Y', 'Z'};
        for (std::size_t q = 0; q < n; ++q) {
          p.set_letter(q, kMap[rng.quarter()]);
        }
        const CliffordPoint point =
            sample_clifford_point(m, cell_seed, 0x70ULL + s);
        const PauliString back = heisenberg_at_clifford(circuit, point, p);
        const int e = rho.expectation(back);
        const double sq = static_cast<double>(e) * static_cast<double>(e);
        sum += sq;
        sum_sq += sq * sq;
      }
      const double mean = sum / static_cast<double>(num);
      const double var =
          (sum_sq / static_cast<double>(num) - mean * mean) *
          static_cast<double>(num) / static_cast<double>(num > 1 ? num - 1 : 1);
      const double stderr_est = std::sqrt(var / static_cast<double>(num));
      out << n << "," << cells[i].circuit << ",sampled," << num << ","
          << fmt_double(mean) << "," << fmt_double(expected) << ","
          << fmt_double(std::abs(mean - expected)) << ","
          << fmt_double(stderr_est) << "," << cell_seed << "\n";
    }
    rows[i] = out.str();
  });
  std::string csv = kRandomObsHeader;
  for (const std::string& r : rows) csv += r;
  bundle.add_derived("identity_expected", "2^-n");
  bundle.add_file("random_obs.csv", std::move(csv));
  bundle.finalize();
}

// ---------------------------------------------------------------------------
// lemma-checks

namespace {

constexpr const char* kLemmaHeader =
    "# cvqa.lemma_checks.v1\n"
    "check,instance,status,detail\n";

}  // namespace

bool run_lemma_checks(const RunConfig& config) {
  OutputBundle bundle(config, "lemma_checks");
  std::ostringstream out;
  bool all_pass = true;
  auto emit = [&](const std::string& check, const std::string& instance,
                  bool pass, const std::string& detail) {
    out << check << "," << instance << "," << (pass ? "pass" : "fail") << ","
        << detail << "\n";
    all_pass = all_pass && pass;
  };

  // Averaging identity: exact Clifford-point mean equals the expansion's
  // constant term, on random small circuits.
  for (std::size_t i = 0; i < 20; ++i) {
    const std::size_t n = 2 + (i % 3);  // 2..4
    const std::size_t m = 3 + (i % 6);  // 3..8
    const ParamCircuit circuit =
        random_circuit(n, m, derive_seed(config.seed, {0x6c656dULL, i}));
    const StabilizerState rho(n);
    PauliString obs(n);
    Rng rng(config.seed, {0x6f6273ULL, i});
    static constexpr char kLetters[3] = {'X', 'Y', 'Z'};
    obs.set_letter(rng.integer(n), kLetters[rng.integer(3)]);
    const double exact = mean_over_clifford(circuit, Observable::single(obs),
                                            rho, config.caps.exact_mean_params);
    const double constant =
        fourier_expand(circuit, obs, rho, config.caps.pauliprop_terms)
            .constant_term();
    const double err = std::abs(exact - constant);
    emit("clifford_average_identity", "random_" + std::to_string(i),
         err <= 1e-12, fmt_double(err));
  }

  // Single-angle restriction fits a + b cos + c sin exactly.
  for (std::size_t i = 0; i < 10; ++i) {
    const std::size_t n = 3;
    const ParamCircuit circuit =
        random_circuit(n, 6, derive_seed(config.seed, {0x747269ULL, i}));
    const Observable o = Observable::single(
        enumerate_family(PauliFamily::weight2_nn, n)[i % 18]);
    const std::size_t k = i % circuit.num_params();
    ParamPoint base = sample_uniform_point(
        circuit.num_params(), derive_seed(config.seed, {0x706fULL, i}), 0);
    auto eval_at = [&](double angle) {
      ParamPoint p = base;
      p.angles[k] = angle;
      return eval_statevector(circuit, o, p);
    };
    // Fit on 0, pi/2, pi; predict 4th point.
    const double f0 = eval_at(0.0), f1 = eval_at(std::acos(-1.0) / 2),
                 f2 = eval_at(std::acos(-1.0));
    const double a = 0.5 * (f0 + f2), b = 0.5 * (f0 - f2), c = f1 - a;
    const double probe = 1.234567;
    const double predicted = a + b * std::cos(probe) + c * std::sin(probe);
    const double err = std::abs(predicted - eval_at(probe));
    emit("single_angle_trig_fit", "random_" + std::to_string(i), err <= 1e-10,
         fmt_double(err));
  }

  // Zero-mean dichotomy: single-Pauli losses are constant or average to 0.
  for (std::size_t i = 0; i < 10; ++i) {
    const std::size_t n = 2 + (i % 3);
    const ParamCircuit circuit =
        random_circuit(n, 4 + (i % 4),
                       derive_seed(config.seed, {0x64696368ULL, i}));
    const StabilizerState rho(n);
    Rng rng(config.seed, {0x64703242ULL, i});
    PauliString obs(n);
    static constexpr char kLetters[3] = {'X', 'Y', 'Z'};
    obs.set_letter(rng.integer(n), kLetters[rng.integer(3)]);
    const Observable o = Observable::single(obs);
    const double first = eval_statevector(
        circuit, o, sample_uniform_point(circuit.num_params(),
                                         derive_seed(config.seed, {i}), 0));
    bool constant = true;
    for (std::size_t s = 1; s < 20 && constant; ++s) {
      const double v = eval_statevector(
          circuit, o, sample_uniform_point(circuit.num_params(),
                                           derive_seed(config.seed, {i}), s));
      constant = std::abs(v - first) <= 1e-12;
    }
    const double mean = mean_over_clifford(circuit, o, rho,
                                           config.caps.exact_mean_params);
    const bool pass = constant || std::abs(mean) <= 1e-12;
    emit("zero_mean_dichotomy", "random_" + std::to_string(i), pass,
         constant ? "constant" : fmt_double(mean));
  }

  // product_rx expansion: a single term at the top level.
  for (std::size_t n : {2, 3, 4}) {
    const Fixture fx = build_fixture(FixtureKind::product_rx, n);
    const auto expansion =
        fourier_expand(fx.circuit, fx.observable.terms()[0].pauli,
                       StabilizerState(n), config.caps.pauliprop_terms);
    const auto hist = expansion.level_histogram();
    const bool pass = expansion.terms().size() == 1 && hist[n] == 1;
    emit("product_rx_single_top_term", "n" + std::to_string(n), pass,
         std::to_string(expansion.terms().size()) + " terms");
  }

  // Global-rotation fixture: setting the last gate's quarter to 1 localizes
  // the observable and inflates the variance over the remaining angles.
  {
    const std::size_t n = 6;
    const Fixture fx = build_fixture(FixtureKind::global_rotation_bp, n);
    const std::size_t m = fx.circuit.num_params();
    const std::size_t last = m - 1;
    double var_on = 0.0, var_off = 0.0;
    for (int setting = 0; setting < 2; ++setting) {
      std::vector<double> values;
      const std::size_t num = config.samples;
      for (std::size_t s = 0; s < num; ++s) {
        ParamPoint p = sample_uniform_point(
            m, derive_seed(config.seed, {0x62703242ULL}), s);
        p.angles[last] = setting == 1 ? std::acos(-1.0) / 2 : 0.0;
        values.push_back(eval_statevector(fx.circuit, fx.observable, p));
      }
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      double var = 0.0;
      for (double v : values) var += (v - mean) * (v - mean);
      var /= static_cast<double>(values.size() - 1);
      (setting == 1 ? var_on : var_off) = var;
    }
    const bool pass = var_on >= 4.0 * var_off;
    emit("single_gate_bp_variance_ratio", "n6", pass,
         fmt_double(var_on) + "/" + fmt_double(var_off));
  }

  std::string csv = kLemmaHeader + out.str();
  bundle.add_derived("all_pass", all_pass);
  bundle.add_file("lemma_checks.csv", std::move(csv));
  bundle.finalize();
  return all_pass;
}

// ---------------------------------------------------------------------------
// plot

namespace {

struct PlotPoint {
  double x;
  double y;  // log2 of the plotted quantity
  std::size_t n;
  std::string mode;
};

}  // namespace

void emit_plot(const std::string& csv_path, const std::string& kind,
               const std::string& svg_path) {
  std::ifstream in(csv_path);
  if (!in) {
    throw ConfigError("cannot open CSV: " + csv_path);
  }
  std::string header;
  std::getline(in, header);
  const std::string expected_schema = kind == "variance"
                                          ? "# cvqa.variance.v1"
                                          : "# cvqa.exact_minima.v1";
  if (kind != "variance" && kind != "exact_minima") {
    throw ConfigError("plot kind must be variance or exact_minima");
  }
  if (trim(header) != expected_schema) {
    throw ConfigError("CSV schema mismatch: expected " + expected_schema);
  }
  std::string columns;
  std::getline(in, columns);

  std::vector<PlotPoint> points;
  std::vector<std::size_t> qubit_counts;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split_list(line);
    if (kind == "variance") {
      if (fields.size() < 9) continue;
      if (fields[2] != "FAMILY_AVG") continue;
      const double var = std::stod(fields[6]);
      if (var <= 0.0) continue;
      PlotPoint p;
      p.n = std::stoull(fields[0]);
      p.x = std::stod(fields[1]);
      p.y = std::log2(var);
      p.mode = fields[3];
      points.push_back(p);
    } else {
      if (fields.size() < 12 || fields.back() != "ok") continue;
      const double frac = std::stod(fields[9]);
      if (frac <= 0.0) continue;
      PlotPoint p;
      p.n = std::stoull(fields[0]);
      p.x = static_cast<double>(p.n);
      p.y = std::log2(frac);
      p.mode = "trial";
      points.push_back(p);
    }
    if (std::find(qubit_counts.begin(), qubit_counts.end(), points.back().n) ==
        qubit_counts.end()) {
      qubit_counts.push_back(points.back().n);
    }
  }
  std::sort(qubit_counts.begin(), qubit_counts.end());

  // Fixed frame; empty input yields empty axes.
  const double width = 640, height = 480, margin = 48;
  double x_min = 0, x_max = 1, y_min = -1, y_max = 0;
  if (!points.empty()) {
    x_min = x_max = points[0].x;
    y_min = y_max = points[0].y;
    for (const PlotPoint& p : points) {
      x_min = std::min(x_min, p.x);
      x_max = std::max(x_max, p.x);
      y_min = std::min(y_min, p.y);
      y_max = std::max(y_max, p.y);
    }
    for (std::size_t n : qubit_counts) {
      y_min = std::min(y_min, -static_cast<double>(n));
      y_max = std::max(y_max, -static_cast<double>(n));
    }
    if (x_min == x_max) x_max = x_min + 1;
    y_min -= 0.5;
    y_max += 0.5;
  }
  auto sx = [&](double x) {
    return margin + (x - x_min) / (x_max - x_min) * (width - 2 * margin);
  };
  auto sy = [&](double y) {
    return height - margin -
           (y - y_min) / (y_max - y_min) * (height - 2 * margin);
  };
  static constexpr const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                            "#d62728", "#9467bd", "#8c564b"};
  auto color_of = [&](std::size_t n) {
    for (std::size_t i = 0; i < qubit_counts.size(); ++i) {
      if (qubit_counts[i] == n) return kColors[i % 6];
    }
    return kColors[0];
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\""
      << width - margin << "\" y2=\"" << height - margin
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin
      << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"" << height - 10
      << "\" font-size=\"12\">"
      << (kind == "variance" ? "layers" : "qubits") << "</text>\n";
  svg << "<text x=\"12\" y=\"" << height / 2
      << "\" font-size=\"12\" transform=\"rotate(-90 12 " << height / 2
      << ")\">log2</text>\n";
  // 2^-n guide lines.
  for (std::size_t n : qubit_counts) {
    const double y = sy(-static_cast<double>(n));
    svg << "<line x1=\"" << margin << "\" y1=\"" << fmt_double(y) << "\" x2=\""
        << width - margin << "\" y2=\"" << fmt_double(y) << "\" stroke=\""
        << color_of(n) << "\" stroke-dasharray=\"4 3\" opacity=\"0.6\"/>\n";
  }
  for (const PlotPoint& p : points) {
    if (p.mode == "clifford") {
      svg << "<rect x=\"" << fmt_double(sx(p.x) - 3) << "\" y=\""
          << fmt_double(sy(p.y) - 3) << "\" width=\"6\" height=\"6\" fill=\""
          << color_of(p.n) << "\"/>\n";
    } else if (p.mode == "clifford_conditioned") {
      svg << "<polygon points=\"" << fmt_double(sx(p.x)) << ","
          << fmt_double(sy(p.y) - 4) << " " << fmt_double(sx(p.x) - 4) << ","
          << fmt_double(sy(p.y) + 3) << " " << fmt_double(sx(p.x) + 4) << ","
          << fmt_double(sy(p.y) + 3) << "\" fill=\"" << color_of(p.n)
          << "\"/>\n";
    } else if (p.mode == "clifford_conditioned_excl") {
      continue;  // secondary diagnostic series, not drawn
    } else {
      svg << "<circle cx=\"" << fmt_double(sx(p.x)) << "\" cy=\""
          << fmt_double(sy(p.y)) << "\" r=\"3.5\" fill=\"" << color_of(p.n)
          << "\"/>\n";
    }
  }
  svg << "</svg>\n";

  std::ofstream out(svg_path, std::ios::binary);
  if (!out) {
    throw ConfigError("cannot write SVG: " + svg_path);
  }
  out << svg.str();
}

}  // namespace cvqa
