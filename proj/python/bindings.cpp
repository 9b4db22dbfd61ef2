#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diffelim/cli/commands.hpp"
#include "diffelim/error.hpp"

namespace py = pybind11;
using namespace diffelim;
using namespace diffelim::cli;

namespace {

py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

FormulaKind kind_of(const std::string& s) {
  if (s == "fres") return FormulaKind::FRES;
  if (s == "cres") return FormulaKind::CRES;
  if (s == "cf") return FormulaKind::CF;
  if (s == "general") return FormulaKind::GENERAL;
  throw Error(ErrorCode::InvalidArgument, "unknown formula '" + s + "'");
}

MatrixRequest matrix_request(const std::string& formula, std::vector<int> beta, std::vector<int> omega, bool dump) {
  return {kind_of(formula), std::move(beta), std::move(omega), dump};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Differential elimination for linear systems by resultant matrices";

  static py::exception<Error> error_type(m, "DiffelimError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::handle(error_type.ptr())(std::string(e.name()), e.what());
      err.attr("code") = std::string(e.name());
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  py::class_<SystemDocument>(m, "System")
      .def_static(
          "parse",
          [](const std::string& text, bool allow_any_shape) {
            return parse_document(text, {.allow_any_shape = allow_any_shape});
          },
          py::arg("text"), py::arg("allow_any_shape") = false)
      .def_property_readonly("parameters", [](const SystemDocument& d) { return d.params; })
      .def_property_readonly("equations",
                             [](const SystemDocument& d) {
                               std::vector<std::string> names;
                               for (const auto& e : d.equations) names.push_back(e.name);
                               return names;
                             })
      .def("render", [](const SystemDocument& d) { return render(d); })
      .def("check", [](const SystemDocument& d) { return to_python(run_check(d).data); })
      .def("gamma", [](const SystemDocument& d) { return to_python(run_gamma(d).data["gamma"]); })
      .def(
          "matrix",
          [](const SystemDocument& d, const std::string& formula, std::vector<int> beta, std::vector<int> omega,
             bool dump) {
            return to_python(run_matrix(d, matrix_request(formula, std::move(beta), std::move(omega), dump))
                                 .data["formula"]);
          },
          py::arg("formula") = "fres", py::arg("beta") = std::vector<int>{}, py::arg("omega") = std::vector<int>{},
          py::arg("dump") = false)
      .def(
          "det",
          [](const SystemDocument& d, const std::string& formula, const std::string& mode, int trials,
             std::uint64_t seed) {
            DetRequest r;
            r.matrix = matrix_request(formula, {}, {}, false);
            if (mode != "exact" && mode != "random") throw Error(ErrorCode::InvalidArgument, "mode is exact or random");
            r.mode = mode == "exact" ? DetMode::Exact : DetMode::Random;
            r.certify.trials = trials;
            r.certify.seed = seed;
            json data = run_det(d, r).data;
            return to_python(data.contains("determinant") ? data["determinant"] : data["certificate"]);
          },
          py::arg("formula") = "fres", py::arg("mode") = "exact", py::arg("trials") = 8,
          py::arg("seed") = CertifyOptions{}.seed)
      .def(
          "subsystem", [](const SystemDocument& d, bool all) { return to_python(run_subsystem(d, all).data["subsystem"]); },
          py::arg("all") = false)
      .def(
          "eliminate",
          [](const SystemDocument& d, const std::string& perturb, const std::string& custom) {
            EliminateOptions opts;
            if (perturb == "auto") {
              opts.mode = PerturbMode::Auto;
            } else if (perturb == "off") {
              opts.mode = PerturbMode::Off;
            } else if (perturb == "custom") {
              opts.mode = PerturbMode::Custom;
              opts.custom = custom.empty() ? document_perturbation(d) : read_perturbation(d, custom);
            } else {
              throw Error(ErrorCode::InvalidArgument, "perturb is auto, off or custom");
            }
            return to_python(run_eliminate(d, opts).data["elimination"]);
          },
          py::arg("perturb") = "auto", py::arg("custom") = "")
      .def("verify", [](const SystemDocument& d, const std::string& poly) {
        return run_verify(d, parse_expression(poly, d)).data["verification"]["membershipVerified"].get<bool>();
      });

  m.def(
      "report",
      [](const std::string& command, const SystemDocument& d) -> py::object {
        if (command == "check") return to_python(run_check(d).data);
        if (command == "gamma") return to_python(run_gamma(d).data);
        if (command == "subsystem") return to_python(run_subsystem(d, false).data);
        if (command == "eliminate") return to_python(run_eliminate(d, {}).data);
        throw Error(ErrorCode::InvalidArgument, "no default report for '" + command + "'");
      },
      "Full JSON report of a command with default options.");
}
