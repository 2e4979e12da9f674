#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sincpow/core_math.hpp"
#include "sincpow/dominance.hpp"
#include "sincpow/figure.hpp"
#include "sincpow/verify.hpp"

namespace py = pybind11;
using namespace sincpow;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Certified periodized sinc power sums";

  py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_RuntimeError);
  py::register_exception<dominance::HypothesisError>(m, "HypothesisError", PyExc_ValueError);

  py::class_<CertifiedValue>(m, "CertifiedValue")
      .def_readonly("value", &CertifiedValue::value)
      .def_readonly("error_bound", &CertifiedValue::error_bound)
      .def_readonly("half_width", &CertifiedValue::half_width)
      .def_property_readonly("lower", &CertifiedValue::lower)
      .def_property_readonly("upper", &CertifiedValue::upper)
      .def("contains", &CertifiedValue::contains)
      .def("__float__", [](const CertifiedValue& v) { return v.value; })
      .def("__repr__", [](const CertifiedValue& v) {
        return "CertifiedValue(" + py::repr(py::float_(v.value)).cast<std::string>() + " +/- " +
               py::repr(py::float_(v.error_bound)).cast<std::string>() + ")";
      });

  m.attr("DEFAULT_MAX_TERMS") = kDefaultMaxTerms;

  m.def("h", &h, py::arg("x"));
  m.def("s_m", &s_m, py::arg("m"), py::arg("x"));
  m.def("y_half", &y_half, py::arg("m"));
  m.def("tail_bound", &tail_bound, py::arg("N"), py::arg("r"), py::arg("x"));
  m.def(
      "f_r",
      [](double x, double r, double tol, std::int64_t max_terms) {
        return f_r_certified(x, EvalParams{r, tol, max_terms});
      },
      py::arg("x"), py::arg("r"), py::arg("tol") = 1e-10, py::arg("max_terms") = kDefaultMaxTerms,
      py::call_guard<py::gil_scoped_release>());
  m.def("f_r_partial", &f_r_partial, py::arg("x"), py::arg("r"), py::arg("N"));
  m.def("f_half_closed", &f_half_closed, py::arg("r"), py::arg("tol") = 1e-12);
  m.def("phi", [](double u, double D) { return phi(PhiPoint{u, D}); }, py::arg("u"), py::arg("D"));
  m.def("phi_log_deriv", [](double u, double D) { return phi_log_deriv(PhiPoint{u, D}); },
        py::arg("u"), py::arg("D"));
  m.def("log_deriv_upper_bound", &log_deriv_upper_bound, py::arg("u"));
  m.def("find_min", &verify::find_min, py::arg("r"), py::arg("tol") = 1e-6,
        py::call_guard<py::gil_scoped_release>());

  auto dom = m.def_submodule("dominance", "One-crossing pairs and mass transfers");
  py::class_<dominance::TransferStep>(dom, "TransferStep")
      .def_readonly("source", &dominance::TransferStep::from)
      .def_readonly("target", &dominance::TransferStep::to)
      .def_readonly("delta", &dominance::TransferStep::delta)
      .def("__eq__", [](const dominance::TransferStep& a, const dominance::TransferStep& b) { return a == b; })
      .def("__repr__", [](const dominance::TransferStep& s) {
        return "TransferStep(" + std::to_string(s.from) + " -> " + std::to_string(s.to) + ", " +
               py::repr(py::float_(s.delta)).cast<std::string>() + ")";
      });
  py::class_<dominance::DominanceResult>(dom, "DominanceResult")
      .def_readonly("passed", &dominance::DominanceResult::passed)
      .def_readonly("margin", &dominance::DominanceResult::margin)
      .def_readonly("sum_g_x", &dominance::DominanceResult::sum_g_x)
      .def_readonly("sum_g_y", &dominance::DominanceResult::sum_g_y)
      .def_readonly("trace", &dominance::DominanceResult::trace)
      .def_readonly("monotone", &dominance::DominanceResult::monotone)
      .def_readonly("steps", &dominance::DominanceResult::steps);

  dom.def(
      "check_one_crossing",
      [](const std::vector<double>& x, const std::vector<double>& y, double t) {
        const auto c = dominance::check_one_crossing(x, y, t);
        return py::make_tuple(c.ok, c.ok ? std::string() : c.describe());
      },
      py::arg("x"), py::arg("y"), py::arg("t"));
  dom.def(
      "transfer_sequence",
      [](std::vector<double> x, std::vector<double> y, double t) {
        return dominance::transfer_sequence({std::move(x), std::move(y), t});
      },
      py::arg("x"), py::arg("y"), py::arg("t"));
  dom.def(
      "dominance_verify",
      [](std::vector<double> x, std::vector<double> y, double t, double r) {
        return dominance::dominance_verify({std::move(x), std::move(y), t}, r);
      },
      py::arg("x"), py::arg("y"), py::arg("t"), py::arg("r"));
  dom.def(
      "random_instance",
      [](std::size_t n, std::uint64_t seed) {
        const auto inst = dominance::random_instance(n, seed);
        return py::make_tuple(inst.x, inst.y, inst.t);
      },
      py::arg("n"), py::arg("seed"));

  auto ver = m.def_submodule("verify", "Grid verification suites");
  py::class_<verify::VerificationReport>(ver, "VerificationReport")
      .def_readonly("name", &verify::VerificationReport::name)
      .def_readonly("passed", &verify::VerificationReport::passed)
      .def_readonly("worst_margin", &verify::VerificationReport::worst_margin)
      .def_readonly("witness", &verify::VerificationReport::witness)
      .def_readonly("points_checked", &verify::VerificationReport::points_checked)
      .def_readonly("tolerance", &verify::VerificationReport::tolerance)
      .def_readonly("detail", &verify::VerificationReport::detail)
      .def("to_json", &verify::to_json_line)
      .def("__repr__", &verify::to_text_line);
  ver.def(
      "parseval", [](std::size_t n, double tol) { return verify::verify_parseval(verify::GridSpec{n}, tol); },
      py::arg("n_points") = 1001, py::arg("tol") = 1e-10, py::call_guard<py::gil_scoped_release>());
  ver.def(
      "proposition",
      [](double r, std::size_t n, double tol) { return verify::verify_proposition(r, verify::GridSpec{n}, tol); },
      py::arg("r"), py::arg("n_points") = 1001, py::arg("tol") = 1e-8,
      py::call_guard<py::gil_scoped_release>());
  ver.def("closed_form", [](const std::vector<double>& rs) { return verify::verify_closed_form(rs); },
          py::arg("rs"));
  ver.def(
      "truncated_pair",
      [](double x, std::int64_t N) {
        const auto p = verify::build_truncated_pair(x, N);
        return py::make_tuple(p.xs, p.ys, p.t);
      },
      py::arg("x"), py::arg("N"));
  ver.def("truncation_start", &verify::truncation_start);

  m.def(
      "figure_csv",
      [](double base, std::size_t n_points) {
        figure::FigureSpec spec;
        spec.base = base;
        spec.n_points = n_points;
        spec.validate();
        return figure::to_csv(figure::compute_figure(spec));
      },
      py::arg("base") = 1.02, py::arg("n_points") = 1001);
}
