#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>

#include "contact_bounds/bounds.hpp"
#include "contact_bounds/cli.hpp"
#include "contact_bounds/error.hpp"
#include "contact_bounds/material.hpp"

namespace py = pybind11;
using namespace cbounds;

namespace {

using Rows = std::array<std::array<double, 3>, 3>;

Mat3 to_mat(const Rows& r) {
  Mat3 F;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) F.m[static_cast<std::size_t>(3 * i + j)] = r[i][j];
  return F;
}

Rows to_rows(const Mat3& F) {
  Rows r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = F.m[static_cast<std::size_t>(3 * i + j)];
  return r;
}

ExampleParams make_params(double C1, double C2, double a1, double a2, double g, double A, double b1,
                          std::optional<double> b2, bool contact_closed) {
  ExampleParams p;
  p.C1 = C1;
  p.C2 = C2;
  p.a1 = a1;
  p.a2 = a2;
  p.g = g;
  p.A = A;
  p.b1 = b1;
  p.b2 = b2.value_or(a1 + b1 - a2);
  p.contact_closed = contact_closed;
  return p;
}

BodySpec triaxial_body(double C, double a, double p) {
  return {kBody1Domain, NeoHookeanIncompressible{C}, TriaxialStretch{a, 0.0}, ConstantPressure{p}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Load bounds for two incompressible neo-Hookean bodies in unilateral contact";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::enum_<Regime>(m, "Regime").value("Closed", Regime::Closed).value("Open", Regime::Open);
  py::enum_<Example>(m, "Example")
      .value("Compression", Example::Compression)
      .value("Cohesive", Example::Cohesive)
      .value("Bending", Example::Bending);

  py::class_<LoadInterval>(m, "LoadInterval")
      .def_readonly("tau_lo", &LoadInterval::tau_lo)
      .def_readonly("tau_hi", &LoadInterval::tau_hi)
      .def_readonly("regime", &LoadInterval::regime)
      .def_readonly("empty", &LoadInterval::empty)
      .def("__repr__", [](const LoadInterval& in) {
        return "LoadInterval(" + std::to_string(in.tau_lo) + ", " + std::to_string(in.tau_hi) +
               (in.empty ? ", empty" : "") + ", " + to_string(in.regime) + ")";
      });

  py::class_<ExampleParams>(m, "ExampleParams")
      .def(py::init(&make_params), py::arg("C1") = 1.0, py::arg("C2") = 1.0, py::arg("a1") = 1.0,
           py::arg("a2") = 1.0, py::arg("g") = 0.0, py::arg("A") = 1.0, py::arg("b1") = 1.0,
           py::arg("b2") = py::none(), py::arg("contact_closed") = true)
      .def_readwrite("C1", &ExampleParams::C1)
      .def_readwrite("C2", &ExampleParams::C2)
      .def_readwrite("a1", &ExampleParams::a1)
      .def_readwrite("a2", &ExampleParams::a2)
      .def_readwrite("g", &ExampleParams::g)
      .def_readwrite("A", &ExampleParams::A)
      .def_readwrite("b1", &ExampleParams::b1)
      .def_readwrite("b2", &ExampleParams::b2)
      .def_readwrite("contact_closed", &ExampleParams::contact_closed);

  m.def("load_interval_compression", &load_interval_compression, py::arg("C1"), py::arg("C2"), py::arg("a1"),
        py::arg("a2"), py::arg("contact_closed") = true);
  m.def("load_interval_cohesive", &load_interval_cohesive, py::arg("C1"), py::arg("C2"), py::arg("a1"),
        py::arg("a2"), py::arg("g"), py::arg("contact_closed") = true);
  m.def("load_interval_bending", &load_interval_bending, py::arg("C1"), py::arg("C2"), py::arg("A"), py::arg("a1"),
        py::arg("a2"), py::arg("b1"), py::arg("b2"), py::arg("contact_closed") = true);
  m.def("closed_form_interval", &closed_form_interval, py::arg("example"), py::arg("params"));
  m.def(
      "numeric_load_bounds", [](Example e, const ExampleParams& p) { return numeric_load_bounds(e, p); },
      py::arg("example"), py::arg("params"));
  m.def("brute_force_oracle", &brute_force_oracle, py::arg("example"), py::arg("params"), py::arg("grid_n") = 1000);
  m.def("oracle_bracket", &oracle_bracket, py::arg("example"), py::arg("params"));

  m.def(
      "triaxial_pressure_window", [](double C, double a) { return pressure_window(triaxial_body(C, a, 0.0)); },
      py::arg("C"), py::arg("a"));
  m.def(
      "triaxial_criteria",
      [](double C, double a, double p, int probe_count, std::uint64_t seed) {
        const CriteriaResult r = criteria_check(triaxial_body(C, a, p), probe_count, seed);
        py::dict d;
        d["primal_ok"] = r.primal_ok;
        d["complementary_ok"] = r.complementary_ok;
        d["min_quadratic_value"] = r.min_quadratic_value;
        d["pressure_window"] = r.pressure_window;
        return d;
      },
      py::arg("C"), py::arg("a"), py::arg("p"), py::arg("probe_count") = 200, py::arg("seed") = 1);

  m.def(
      "strain_energy", [](double C, const Rows& F) { return strain_energy(NeoHookeanIncompressible{C}, to_mat(F)); },
      py::arg("C"), py::arg("F"));
  m.def(
      "piola_stress",
      [](double C, const Rows& F, double p) { return to_rows(piola_stress(NeoHookeanIncompressible{C}, to_mat(F), p)); },
      py::arg("C"), py::arg("F"), py::arg("p"));
  m.def(
      "cauchy_stress",
      [](double C, const Rows& F, double p) { return to_rows(cauchy_stress(NeoHookeanIncompressible{C}, to_mat(F), p)); },
      py::arg("C"), py::arg("F"), py::arg("p"));

  // Config-driven entry points mirroring the command-line tool.
  m.def(
      "run_config",
      [](const std::string& text, const std::string& format) {
        const ProblemConfig c = parse_config(text);
        return format_report(run(c), c, format == "json" ? ReportFormat::Json : ReportFormat::Report);
      },
      py::arg("config"), py::arg("format") = "json");
  m.def(
      "verify_config",
      [](const std::string& text, const std::string& format) {
        const VerifyReport v = verify(parse_config(text));
        return py::make_tuple(v.passed(), format_verify(v, format == "json" ? ReportFormat::Json : ReportFormat::Report));
      },
      py::arg("config"), py::arg("format") = "json");
  m.def(
      "sweep_csv",
      [](const std::string& text, const std::string& param, double lo, double hi, int steps) {
        return format_csv(sweep(parse_config(text), param, lo, hi, steps));
      },
      py::arg("config"), py::arg("param"), py::arg("lo"), py::arg("hi"), py::arg("steps"));
  m.def("warning_vocabulary", &warning_vocabulary);
}
