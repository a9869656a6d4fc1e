#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cvqa/circuit.hpp"
#include "cvqa/evaluate.hpp"
#include "cvqa/fourier.hpp"
#include "cvqa/landscape.hpp"
#include "cvqa/pauli.hpp"
#include "cvqa/statevector.hpp"

namespace py = pybind11;
using namespace cvqa;

PYBIND11_MODULE(_cvqa, m) {
  m.doc() = "Clifford-point loss landscape toolkit";

  py::register_exception<TermCapExceeded>(m, "TermCapExceeded");

  py::class_<PauliString>(m, "PauliString")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_static("from_text", &PauliString::from_text)
      .def_static("from_letters", &PauliString::from_letters)
      .def("to_text", &PauliString::to_text)
      .def_property_readonly("num_qubits", &PauliString::num_qubits)
      .def("letter", &PauliString::letter)
      .def("set_letter", &PauliString::set_letter)
      .def("weight", &PauliString::weight)
      .def("support", &PauliString::support)
      .def("is_hermitian", &PauliString::is_hermitian)
      .def("sign", &PauliString::sign)
      .def("commutes", &PauliString::commutes)
      .def("__mul__",
           [](const PauliString& a, const PauliString& b) { return mul(a, b); })
      .def("__eq__", [](const PauliString& a,
                        const PauliString& b) { return a == b; })
      .def("__repr__", [](const PauliString& p) {
        return "PauliString('" + p.to_text() + "')";
      });

  py::class_<Observable>(m, "Observable")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_static("single", &Observable::single, py::arg("pauli"),
                  py::arg("coefficient") = 1.0)
      .def("add_term", &Observable::add_term)
      .def_property_readonly("num_qubits", &Observable::num_qubits)
      .def("terms", [](const Observable& o) {
        std::vector<std::pair<double, std::string>> out;
        for (const auto& t : o.terms()) {
          out.emplace_back(t.coefficient, t.pauli.to_text());
        }
        return out;
      });

  py::enum_<PauliFamily>(m, "PauliFamily")
      .value("weight2_nn", PauliFamily::weight2_nn)
      .value("weight2_all", PauliFamily::weight2_all);
  m.def("enumerate_family", &enumerate_family);

  py::class_<ParamPoint>(m, "ParamPoint")
      .def(py::init<>())
      .def_readwrite("angles", &ParamPoint::angles);
  py::class_<CliffordPoint>(m, "CliffordPoint")
      .def(py::init<>())
      .def_readwrite("quarters", &CliffordPoint::quarters)
      .def("to_param_point", &CliffordPoint::to_param_point);

  py::class_<ParamCircuit>(m, "ParamCircuit")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def_property_readonly("num_qubits", &ParamCircuit::num_qubits)
      .def_property_readonly("num_params", &ParamCircuit::num_params)
      .def("append_rotation", &ParamCircuit::append_rotation)
      .def("to_text", &ParamCircuit::to_text)
      .def_static("from_text", &ParamCircuit::from_text);

  m.def("build_brickwork", &build_brickwork, py::arg("n"), py::arg("layers"));
  m.def("brickwork_param_count", &brickwork_param_count);
  m.def("sample_uniform_point", &sample_uniform_point);
  m.def("sample_clifford_point", &sample_clifford_point);
  m.def("random_circuit", &random_circuit);

  py::class_<StabilizerState>(m, "StabilizerState")
      .def(py::init<std::size_t>(), py::arg("n"))
      .def("expectation",
           [](const StabilizerState& s, const PauliString& p) {
             return s.expectation(p);
           });

  m.def(
      "eval_clifford",
      [](const ParamCircuit& c, const Observable& o, const CliffordPoint& p) {
        return eval_clifford(c, o, p);
      },
      py::arg("circuit"), py::arg("observable"), py::arg("point"));
  m.def(
      "eval_statevector",
      [](const ParamCircuit& c, const Observable& o, const ParamPoint& p) {
        return eval_statevector(c, o, p);
      },
      py::arg("circuit"), py::arg("observable"), py::arg("point"));
  m.def(
      "eval_pauliprop",
      [](const ParamCircuit& c, const Observable& o, const ParamPoint& p) {
        return eval_pauliprop(c, o, p,
                              StabilizerState(c.num_qubits()));
      },
      py::arg("circuit"), py::arg("observable"), py::arg("point"));
  m.def(
      "gradient_shift",
      [](const ParamCircuit& c, const Observable& o, const ParamPoint& p,
         std::size_t k) {
        return gradient_shift(Engine::statevector, c, o, p, k);
      },
      py::arg("circuit"), py::arg("observable"), py::arg("point"),
      py::arg("k"));
  m.def(
      "mean_over_clifford",
      [](const ParamCircuit& c, const Observable& o, std::size_t cap) {
        return mean_over_clifford(c, o, cap);
      },
      py::arg("circuit"), py::arg("observable"),
      py::arg("param_cap") = kDefaultExactMeanParamCap);

  py::class_<FourierExpansion>(m, "FourierExpansion")
      .def("evaluate", &FourierExpansion::evaluate)
      .def("constant_term", &FourierExpansion::constant_term)
      .def("level_histogram", &FourierExpansion::level_histogram)
      .def_property_readonly("num_terms", [](const FourierExpansion& e) {
        return e.terms().size();
      });
  m.def(
      "fourier_expand",
      [](const ParamCircuit& c, const PauliString& obs, std::size_t cap) {
        return fourier_expand(c, obs, StabilizerState(c.num_qubits()), cap);
      },
      py::arg("circuit"), py::arg("observable"),
      py::arg("term_cap") = kDefaultTermCap);

  m.def(
      "null_directions",
      [](const ParamCircuit& c, const CliffordPoint& p,
         const PauliString& obs) { return null_directions(c, p, obs); },
      py::arg("circuit"), py::arg("point"), py::arg("observable"));

  py::class_<SearchBudget>(m, "SearchBudget")
      .def(py::init<>())
      .def_readwrite("points_per_stage", &SearchBudget::points_per_stage)
      .def_readwrite("stage_cap", &SearchBudget::stage_cap)
      .def_readwrite("verification_samples", &SearchBudget::verification_samples)
      .def_readwrite("seed", &SearchBudget::seed)
      .def_static("default_points", &SearchBudget::default_points);

  py::class_<CriticalPoint>(m, "CriticalPoint")
      .def_property_readonly("optimized",
                             [](const CriticalPoint& cp) {
                               std::vector<std::string> out;
                               for (const auto& p : cp.optimized) {
                                 out.push_back(p.to_text());
                               }
                               return out;
                             })
      .def_property_readonly(
          "free_indices",
          [](const CriticalPoint& cp) { return cp.split.free_indices; })
      .def_property_readonly(
          "fixed_indices",
          [](const CriticalPoint& cp) { return cp.split.fixed_indices; })
      .def_property_readonly("base_quarters", [](const CriticalPoint& cp) {
        return cp.split.base.quarters;
      });
  m.def(
      "greedy_siloed_search",
      [](const ParamCircuit& c, const std::vector<PauliString>& family,
         const SearchBudget& budget) {
        return greedy_siloed_search(c, family, budget,
                                    StabilizerState(c.num_qubits()));
      },
      py::arg("circuit"), py::arg("family"), py::arg("budget"));
  m.def("independent_remainder",
        [](const std::vector<PauliString>& family, const CriticalPoint& cp) {
          std::vector<std::string> out;
          for (const auto& p : independent_remainder(family, cp)) {
            out.push_back(p.to_text());
          }
          return out;
        });

  py::enum_<LmVerdict>(m, "LmVerdict")
      .value("zero_approx", LmVerdict::zero_approx)
      .value("eps_approx", LmVerdict::eps_approx)
      .value("not_critical", LmVerdict::not_critical);
  py::class_<ApproxLMReport>(m, "ApproxLMReport")
      .def_readonly("epsilon", &ApproxLMReport::epsilon)
      .def_readonly("max_abs_gradient", &ApproxLMReport::max_abs_gradient)
      .def_readonly("hessian_computed", &ApproxLMReport::hessian_computed)
      .def_readonly("min_hessian_eigenvalue",
                    &ApproxLMReport::min_hessian_eigenvalue)
      .def_readonly("verdict", &ApproxLMReport::verdict);
  m.def(
      "approximate_lm_check",
      [](const ParamCircuit& c, const Observable& o, const CliffordPoint& p,
         double epsilon, std::size_t hessian_cap) {
        return approximate_lm_check(c, o, p, epsilon, hessian_cap,
                                    StabilizerState(c.num_qubits()));
      },
      py::arg("circuit"), py::arg("observable"), py::arg("point"),
      py::arg("epsilon"), py::arg("hessian_cap") = 128);
}
