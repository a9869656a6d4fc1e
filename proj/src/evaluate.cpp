#include "cvqa/evaluate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <variant>

namespace cvqa {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

ParamPoint shifted(const ParamPoint& p, std::size_t k, double delta) {
  ParamPoint q = p;
  q.angles[k] += delta;
  return q;
}

CliffordPoint shifted(const CliffordPoint& p, std::size_t k, int quarters) {
  CliffordPoint q = p;
  q.quarters[k] =
      static_cast<std::uint8_t>((q.quarters[k] + quarters + 4) & 3);
  return q;
}

double eval_engine(Engine engine, const ParamCircuit& circuit,
                   const Observable& o, const ParamPoint& point) {
  switch (engine) {
    case Engine::statevector:
      return eval_statevector(circuit, o, point);
    case Engine::pauli_prop:
      return eval_pauliprop(circuit, o, point,
                            StabilizerState(circuit.num_qubits()));
    case Engine::clifford:
      throw std::invalid_argument(
          "clifford engine requires a CliffordPoint overload");
  }
  throw std::logic_error("unreachable");
}

struct Moments {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double second_moment = 0.0;
  double nonzero_fraction = 0.0;
};

// Fixed-order reduction so replays are bit-identical.
Moments moments_of(const std::vector<double>& values) {
  Moments m;
  m.count = values.size();
  if (values.empty()) return m;
  double sum = 0.0, sum_sq = 0.0;
  std::size_t nonzero = 0;
  for (double v : values) {
    sum += v;
    sum_sq += v * v;
    if (v != 0.0) ++nonzero;
  }
  m.mean = sum / static_cast<double>(m.count);
  m.second_moment = sum_sq / static_cast<double>(m.count);
  m.nonzero_fraction =
      static_cast<double>(nonzero) / static_cast<double>(m.count);
  if (m.count > 1) {
    double acc = 0.0;
    for (double v : values) {
      const double d = v - m.mean;
      acc += d * d;
    }
    m.variance = acc / static_cast<double>(m.count - 1);
  }
  return m;
}

}  // namespace

PauliString heisenberg_at_clifford(const ParamCircuit& circuit,
                                   const CliffordPoint& point,
                                   const PauliString& p) {
  if (point.quarters.size() != circuit.num_params()) {
    throw std::invalid_argument("unassigned parameter");
  }
  PauliString q = p;
  const auto& ops = circuit.ops();
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (const auto* g = std::get_if<CliffordGate>(&*it)) {
      q = conj_gate(*g, q);
    } else {
      const auto& r = std::get<Rotation>(*it);
      q = conj_rotation_quarter(r.generator, point.quarters[r.param_index], q);
    }
  }
  return q;
}

double eval_clifford(const ParamCircuit& circuit, const Observable& o,
                     const CliffordPoint& point, const StabilizerState& rho) {
  double acc = 0.0;
  for (const auto& term : o.terms()) {
    const PauliString back = heisenberg_at_clifford(circuit, point, term.pauli);
    acc += term.coefficient * rho.expectation(back);
  }
  return acc;
}

double eval_clifford(const ParamCircuit& circuit, const Observable& o,
                     const CliffordPoint& point) {
  return eval_clifford(circuit, o, point, StabilizerState(circuit.num_qubits()));
}

double gradient_shift(Engine engine, const ParamCircuit& circuit,
                      const Observable& o, const ParamPoint& point,
                      std::size_t k) {
  if (k >= circuit.num_params()) {
    throw std::invalid_argument("parameter index out of range");
  }
  return 0.5 * (eval_engine(engine, circuit, o, shifted(point, k, kHalfPi)) -
                eval_engine(engine, circuit, o, shifted(point, k, -kHalfPi)));
}

double gradient_shift(const ParamCircuit& circuit, const Observable& o,
                      const CliffordPoint& point, std::size_t k,
                      const StabilizerState& rho) {
  if (k >= circuit.num_params()) {
    throw std::invalid_argument("parameter index out of range");
  }
  return 0.5 * (eval_clifford(circuit, o, shifted(point, k, 1), rho) -
                eval_clifford(circuit, o, shifted(point, k, -1), rho));
}

double gradient_shift(const ParamCircuit& circuit, const Observable& o,
                      const CliffordPoint& point, std::size_t k) {
  return gradient_shift(circuit, o, point, k,
                        StabilizerState(circuit.num_qubits()));
}

double hessian_shift(Engine engine, const ParamCircuit& circuit,
                     const Observable& o, const ParamPoint& point,
                     std::size_t k, std::size_t l) {
  const auto pp = shifted(shifted(point, k, kHalfPi), l, kHalfPi);
  const auto pm = shifted(shifted(point, k, kHalfPi), l, -kHalfPi);
  const auto mp = shifted(shifted(point, k, -kHalfPi), l, kHalfPi);
  const auto mm = shifted(shifted(point, k, -kHalfPi), l, -kHalfPi);
  return 0.25 * (eval_engine(engine, circuit, o, pp) -
                 eval_engine(engine, circuit, o, pm) -
                 eval_engine(engine, circuit, o, mp) +
                 eval_engine(engine, circuit, o, mm));
}

double hessian_shift(const ParamCircuit& circuit, const Observable& o,
                     const CliffordPoint& point, std::size_t k, std::size_t l,
                     const StabilizerState& rho) {
  const auto pp = shifted(shifted(point, k, 1), l, 1);
  const auto pm = shifted(shifted(point, k, 1), l, -1);
  const auto mp = shifted(shifted(point, k, -1), l, 1);
  const auto mm = shifted(shifted(point, k, -1), l, -1);
  return 0.25 *
         (eval_clifford(circuit, o, pp, rho) - eval_clifford(circuit, o, pm, rho) -
          eval_clifford(circuit, o, mp, rho) + eval_clifford(circuit, o, mm, rho));
}

double mean_over_clifford(const ParamCircuit& circuit, const Observable& o,
                          const StabilizerState& rho, std::size_t param_cap) {
  const std::size_t m = circuit.num_params();
  if (m > param_cap) {
    throw std::length_error("exact Clifford mean budget exceeded");
  }
  const std::uint64_t total = std::uint64_t{1} << (2 * m);
  CliffordPoint point;
  point.quarters.assign(m, 0);
  double acc = 0.0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t v = idx;
    for (std::size_t k = 0; k < m; ++k) {
      point.quarters[k] = static_cast<std::uint8_t>(v & 3);
      v >>= 2;
    }
    acc += eval_clifford(circuit, o, point, rho);
  }
  return acc / static_cast<double>(total);
}

double mean_over_clifford(const ParamCircuit& circuit, const Observable& o,
                          std::size_t param_cap) {
  return mean_over_clifford(circuit, o, StabilizerState(circuit.num_qubits()),
                            param_cap);
}

double clifford_mean_sampled(const ParamCircuit& circuit, const Observable& o,
                             std::size_t num_samples, std::uint64_t seed,
                             const StabilizerState& rho) {
  double acc = 0.0;
  for (std::size_t s = 0; s < num_samples; ++s) {
    const CliffordPoint p =
        sample_clifford_point(circuit.num_params(), seed, s);
    acc += eval_clifford(circuit, o, p, rho);
  }
  return acc / static_cast<double>(num_samples);
}

const char* variance_mode_name(VarianceMode mode) {
  switch (mode) {
    case VarianceMode::uniform:
      return "uniform";
    case VarianceMode::clifford:
      return "clifford";
    case VarianceMode::clifford_conditioned:
      return "clifford_conditioned";
    case VarianceMode::clifford_conditioned_excl:
      return "clifford_conditioned_excl";
  }
  return "?";
}

std::vector<VarianceReport> variance_scan(const ParamCircuit& circuit,
                                          const std::vector<PauliString>& family,
                                          std::size_t num_points,
                                          std::uint64_t seed, VarianceMode mode,
                                          const StabilizerState& rho) {
  const std::size_t m = circuit.num_params();
  std::vector<VarianceReport> reports;
  reports.reserve(family.size());

  if (mode == VarianceMode::uniform) {
    for (const PauliString& p : family) {
      const Observable o = Observable::single(p);
      std::vector<double> values;
      values.reserve(num_points);
      for (std::size_t s = 0; s < num_points; ++s) {
        values.push_back(
            eval_statevector(circuit, o, sample_uniform_point(m, seed, s)));
      }
      const Moments mom = moments_of(values);
      reports.push_back(VarianceReport{p.to_text(), mode, mom.count, mom.mean,
                                       mom.variance, mom.second_moment, 0.0});
    }
    return reports;
  }

  // Clifford modes: one value matrix shared by plain and conditioned stats.
  std::vector<std::vector<double>> values(family.size());
  for (auto& v : values) v.reserve(num_points);
  for (std::size_t s = 0; s < num_points; ++s) {
    const CliffordPoint point = sample_clifford_point(m, seed, s);
    for (std::size_t i = 0; i < family.size(); ++i) {
      const PauliString back = heisenberg_at_clifford(circuit, point, family[i]);
      values[i].push_back(static_cast<double>(rho.expectation(back)));
    }
  }

  for (std::size_t i = 0; i < family.size(); ++i) {
    std::vector<double> kept;
    if (mode == VarianceMode::clifford) {
      kept = values[i];
    } else {
      const bool exclude_self = (mode == VarianceMode::clifford_conditioned_excl);
      for (std::size_t s = 0; s < num_points; ++s) {
        bool any = false;
        for (std::size_t j = 0; j < family.size(); ++j) {
          if (exclude_self && j == i) continue;
          if (values[j][s] != 0.0) {
            any = true;
            break;
          }
        }
        if (any) kept.push_back(values[i][s]);
      }
    }
    const Moments mom = moments_of(kept);
    reports.push_back(VarianceReport{family[i].to_text(), mode, mom.count,
                                     mom.mean, mom.variance, mom.second_moment,
                                     mom.nonzero_fraction});
  }
  return reports;
}

}  // namespace cvqa
