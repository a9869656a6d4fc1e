#include "cvqa/landscape.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <variant>

#include "cvqa/rng.hpp"
#include "cvqa/statevector.hpp"

namespace cvqa {

namespace {

std::vector<std::size_t> all_indices(std::size_t m) {
  std::vector<std::size_t> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = i;
  return v;
}

std::vector<std::size_t> intersect_sorted(const std::vector<std::size_t>& a,
                                          const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<std::uint8_t> sample_free_quarters(std::size_t count,
                                               std::uint64_t seed,
                                               std::uint64_t index) {
  Rng rng(seed, {0x66726565ULL, index});
  std::vector<std::uint8_t> q(count);
  for (auto& v : q) v = rng.quarter();
  return q;
}

std::vector<double> sample_free_angles(std::size_t count, std::uint64_t seed,
                                       std::uint64_t index) {
  Rng rng(seed, {0x616e676cULL, index});
  std::vector<double> a(count);
  for (auto& v : a) v = rng.angle();
  return a;
}

}  // namespace

std::vector<std::size_t> null_directions(const ParamCircuit& circuit,
                                         const CliffordPoint& point,
                                         const PauliString& observable) {
  if (point.quarters.size() != circuit.num_params()) {
    throw std::invalid_argument("unassigned parameter");
  }
  std::vector<std::size_t> nulls;
  PauliString q = observable;
  const auto& ops = circuit.ops();
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (const auto* g = std::get_if<CliffordGate>(&*it)) {
      q = conj_gate(*g, q);
      continue;
    }
    const auto& r = std::get<Rotation>(*it);
    // q is the observable pulled back through everything after this
    // rotation; the direction is null iff the generator commutes with it.
    if (r.generator.commutes(q)) {
      nulls.push_back(r.param_index);
    }
    q = conj_rotation_quarter(r.generator, point.quarters[r.param_index], q);
  }
  std::sort(nulls.begin(), nulls.end());
  return nulls;
}

std::size_t SearchBudget::default_points(std::size_t n,
                                         std::size_t family_size) {
  return static_cast<std::size_t>((30.0 * std::pow(2.0, double(n))) /
                                  static_cast<double>(family_size));
}

std::optional<std::pair<PauliString, CliffordPoint>> find_pauli_minimum(
    const ParamCircuit& circuit, const std::vector<PauliString>& family,
    const SplitPoint& split, std::size_t budget_points, std::uint64_t seed,
    const StabilizerState& rho) {
  if (family.empty() || split.free_indices.empty()) {
    return std::nullopt;
  }
  for (std::size_t s = 0; s < budget_points; ++s) {
    const CliffordPoint point = restrict_point(
        split, sample_free_quarters(split.free_indices.size(), seed, s));
    for (const PauliString& p : family) {
      const PauliString back = heisenberg_at_clifford(circuit, point, p);
      if (rho.expectation(back) == -1) {
        return std::make_pair(p, point);
      }
    }
  }
  return std::nullopt;
}

CriticalPoint greedy_siloed_search(const ParamCircuit& circuit,
                                   const std::vector<PauliString>& family,
                                   const SearchBudget& budget,
                                   const StabilizerState& rho) {
  const std::size_t m = circuit.num_params();
  CriticalPoint cp;
  cp.split.base.quarters.assign(m, 0);
  cp.split.free_indices = all_indices(m);
  cp.basis = SymplecticBasis(circuit.num_qubits());

  std::vector<PauliString> candidates = family;
  for (std::size_t stage = 0; stage < budget.stage_cap; ++stage) {
    if (cp.split.free_indices.empty() || candidates.empty()) {
      break;
    }
    auto found = find_pauli_minimum(circuit, candidates, cp.split,
                                    budget.points_per_stage,
                                    derive_seed(budget.seed, {stage}), rho);
    if (!found) {
      break;
    }
    const auto& [pauli, point] = *found;
    cp.split.base = point;
    cp.optimized.push_back(pauli);
    cp.basis.insert(pauli);

    // New free set: previous free directions that are null for every
    // optimized Pauli at the updated point. Previously fixed values stay
    // frozen by construction.
    std::vector<std::size_t> common = cp.split.free_indices;
    for (const PauliString& p : cp.optimized) {
      common = intersect_sorted(common, null_directions(circuit, point, p));
    }
    cp.history.push_back(
        StageRecord{pauli, cp.split.free_indices.size(), common.size()});
    cp.split.free_indices = std::move(common);
    cp.split.fixed_indices.clear();
    for (std::size_t k = 0; k < m; ++k) {
      if (!std::binary_search(cp.split.free_indices.begin(),
                              cp.split.free_indices.end(), k)) {
        cp.split.fixed_indices.push_back(k);
      }
    }

    // Drop candidates generated by the optimized set.
    std::vector<PauliString> remaining;
    for (const PauliString& p : candidates) {
      if (!cp.basis.contains(p)) {
        remaining.push_back(p);
      }
    }
    candidates = std::move(remaining);
  }
  return cp;
}

std::vector<PauliString> independent_remainder(
    const std::vector<PauliString>& family, const CriticalPoint& cp) {
  std::vector<PauliString> out;
  for (const PauliString& p : family) {
    if (cp.optimized.empty() || !cp.basis.contains(p)) {
      out.push_back(p);
    }
  }
  return out;
}

bool verify_exact_zero(const ParamCircuit& circuit, const CriticalPoint& cp,
                       const PauliString& observable, std::size_t samples,
                       std::uint64_t seed) {
  const Observable o = Observable::single(observable);
  for (std::size_t s = 0; s < samples; ++s) {
    const ParamPoint point = restrict_point(
        cp.split,
        sample_free_angles(cp.split.free_indices.size(), seed, s));
    if (std::abs(eval_statevector(circuit, o, point)) > kMachineZero) {
      return false;
    }
  }
  return true;
}

double verify_gradients_vanish(const ParamCircuit& circuit,
                               const CriticalPoint& cp,
                               const PauliString& observable,
                               std::size_t component_budget,
                               std::size_t samples, std::uint64_t seed) {
  if (cp.split.fixed_indices.empty() || component_budget == 0) {
    return 1.0;
  }
  std::vector<std::size_t> components = cp.split.fixed_indices;
  if (components.size() > component_budget) {
    Rng rng(seed, {0x636f6d70ULL});
    std::shuffle(components.begin(), components.end(), rng.engine());
    components.resize(component_budget);
    std::sort(components.begin(), components.end());
  }
  const Observable o = Observable::single(observable);
  std::size_t vanished = 0;
  for (std::size_t k : components) {
    bool ok = true;
    for (std::size_t s = 0; s < samples && ok; ++s) {
      const ParamPoint point = restrict_point(
          cp.split,
          sample_free_angles(cp.split.free_indices.size(), seed, s));
      const double g =
          gradient_shift(Engine::statevector, circuit, o, point, k);
      ok = std::abs(g) <= kMachineZero;
    }
    if (ok) ++vanished;
  }
  return static_cast<double>(vanished) / static_cast<double>(components.size());
}

const char* lm_verdict_name(LmVerdict v) {
  switch (v) {
    case LmVerdict::zero_approx:
      return "zero_approx";
    case LmVerdict::eps_approx:
      return "eps_approx";
    case LmVerdict::not_critical:
      return "not_critical";
  }
  return "?";
}

ApproxLMReport approximate_lm_check(const ParamCircuit& circuit,
                                    const Observable& o,
                                    const CliffordPoint& point, double epsilon,
                                    std::size_t hessian_cap,
                                    const StabilizerState& rho) {
  const std::size_t m = circuit.num_params();
  ApproxLMReport report;
  report.point = point;
  report.epsilon = epsilon;
  report.hessian_computed = (m <= hessian_cap);
  report.min_hessian_eigenvalue = 0.0;

  double max_grad = 0.0;
  bool all_exact_zero = true;
  for (std::size_t k = 0; k < m; ++k) {
    const double g = gradient_shift(circuit, o, point, k, rho);
    max_grad = std::max(max_grad, std::abs(g));
    if (g != 0.0) all_exact_zero = false;
  }
  report.max_abs_gradient = max_grad;
  report.components_checked = m;

  if (report.hessian_computed) {
    Eigen::MatrixXd h(m, m);
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t l = k; l < m; ++l) {
        const double v = hessian_shift(circuit, o, point, k, l, rho);
        h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(l)) = v;
        h(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = v;
        if (v != 0.0) all_exact_zero = false;
      }
    }
    report.components_checked += m * m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    report.min_hessian_eigenvalue = solver.eigenvalues().minCoeff();
  }

  if (all_exact_zero && max_grad == 0.0) {
    report.verdict = LmVerdict::zero_approx;
  } else if (max_grad <= epsilon &&
             (!report.hessian_computed ||
              report.min_hessian_eigenvalue >= -std::sqrt(epsilon))) {
    report.verdict = LmVerdict::eps_approx;
  } else {
    report.verdict = LmVerdict::not_critical;
  }
  return report;
}

}  // namespace cvqa
