#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "buser/bounds.hpp"
#include "buser/heat.hpp"
#include "buser/isoperimetry.hpp"
#include "buser/model_space.hpp"
#include "buser/special_functions.hpp"
#include "buser/spectral.hpp"
#include "buser/verify_driver.hpp"

namespace py = pybind11;
using namespace buser;

namespace {

SpaceSpec make_spec(const std::string& preset, int n, double radius,
                    std::optional<double> length, std::optional<double> a,
                    std::optional<double> b) {
  SpaceSpec spec;
  spec.preset = preset_from_name(preset);
  spec.n = n;
  spec.radius = radius;
  spec.length = length;
  spec.a = a;
  spec.b = b;
  return spec;
}

}  // namespace

PYBIND11_MODULE(pybuser, m) {
  m.doc() = "Cheeger-Buser spectral bound toolkit: bound calculus, 1-D weighted "
            "model spaces, eigensolver, isoperimetry and heat-flow verification";

  // special functions
  m.def("j_k", &j_k, py::arg("curvature"), py::arg("t"));
  m.def("J_k_closed", &J_k_closed, py::arg("curvature"), py::arg("t"));
  m.def("J_k_quadrature", &J_k_quadrature, py::arg("curvature"), py::arg("t"),
        py::arg("tol") = 1e-12);
  m.def("lambert_w_m1", &lambert_w_m1, py::arg("x"));
  m.def("inverse_normal_cdf", &inverse_normal_cdf, py::arg("p"));
  m.def("gaussian_isoperimetric", &gaussian_isoperimetric, py::arg("x"));
  m.def("f1", &f1, py::arg("x"), py::arg("T"));
  m.def("f2", &f2, py::arg("x"), py::arg("T"));
  m.def("g1", &g1, py::arg("y"));
  m.def("g2", &g2, py::arg("y"));

  // bounds
  py::enum_<MeasureRegime>(m, "MeasureRegime")
      .value("finite", MeasureRegime::finite_normalized)
      .value("infinite", MeasureRegime::infinite);
  py::enum_<BoundInput>(m, "BoundInput")
      .value("from_h", BoundInput::from_h)
      .value("from_lambda", BoundInput::from_lambda);

  py::class_<BuserSup>(m, "BuserSup")
      .def_readonly("value", &BuserSup::value)
      .def_readonly("argmax_t", &BuserSup::argmax_t);
  m.def("buser_functional", &buser_functional, py::arg("lam"), py::arg("curvature"));
  m.def("implicit_h_lower_bound", &implicit_h_lower_bound, py::arg("lam"),
        py::arg("curvature"), py::arg("regime") = MeasureRegime::finite_normalized);
  m.def("lambda_upper_from_h", &lambda_upper_from_h, py::arg("h"), py::arg("curvature"),
        py::arg("regime") = MeasureRegime::finite_normalized);

  py::class_<ExplicitBound>(m, "ExplicitBound")
      .def_readonly("value", &ExplicitBound::value)
      .def_property_readonly("regime",
                             [](const ExplicitBound& b) { return to_string(b.regime); })
      .def_readonly("loose_value", &ExplicitBound::loose_value)
      .def_readonly("c_used", &ExplicitBound::c_used);
  m.def("explicit_upper", &explicit_upper, py::arg("h"), py::arg("curvature"),
        py::arg("regime") = MeasureRegime::finite_normalized,
        py::arg("c") = std::nullopt);
  m.def("explicit_upper_neg_c", &explicit_upper_neg_c, py::arg("h"), py::arg("c"),
        py::arg("regime") = MeasureRegime::finite_normalized);

  py::class_<ConstantM>(m, "ConstantM")
      .def_readonly("value", &ConstantM::value)
      .def_readonly("t_star", &ConstantM::t_star);
  m.def("constant_m", &constant_m);
  m.def("cheeger_lower_bound", &cheeger_lower_bound, py::arg("h"));

  py::class_<BoundReport>(m, "BoundReport")
      .def_property_readonly("regime",
                             [](const BoundReport& r) { return to_string(r.regime); })
      .def_readonly("curvature", &BoundReport::curvature)
      .def_readonly("input_value", &BoundReport::input_value)
      .def_readonly("cheeger_lower", &BoundReport::cheeger_lower)
      .def_readonly("implicit_value", &BoundReport::implicit_value)
      .def_readonly("implicit_argmax_t", &BoundReport::implicit_argmax_t)
      .def_readonly("explicit_value", &BoundReport::explicit_value)
      .def_property_readonly(
          "explicit_regime",
          [](const BoundReport& r) { return to_string(r.explicit_regime); })
      .def_readonly("c_used", &BoundReport::c_used)
      .def_readonly("loose_value", &BoundReport::loose_value);
  m.def("sandwich", &sandwich, py::arg("kind"), py::arg("value"), py::arg("curvature"),
        py::arg("regime") = MeasureRegime::finite_normalized, py::arg("c") = std::nullopt);

  // model spaces
  py::class_<WeightedLine>(m, "WeightedLine")
      .def_readonly("nodes", &WeightedLine::nodes)
      .def_readonly("weight", &WeightedLine::weight)
      .def_readonly("potential", &WeightedLine::potential)
      .def_readonly("dx", &WeightedLine::dx)
      .def_readonly("normalized", &WeightedLine::normalized)
      .def_readonly("normalizable", &WeightedLine::normalizable)
      .def_readonly("curvature", &WeightedLine::curvature)
      .def_readonly("preset_name", &WeightedLine::preset_name)
      .def("total_mass", &WeightedLine::total_mass)
      .def("__len__", &WeightedLine::size);
  m.def(
      "build_space",
      [](const std::string& preset, int n, double radius, std::optional<double> length,
         std::optional<double> a, std::optional<double> b) {
        return build_space(make_spec(preset, n, radius, length, a, b));
      },
      py::arg("preset"), py::arg("n") = 2001, py::arg("radius") = 8.0,
      py::arg("L") = std::nullopt, py::arg("a") = std::nullopt,
      py::arg("b") = std::nullopt);
  m.def("measure_of_sublevel", &measure_of_sublevel, py::arg("space"), py::arg("s"));
  m.def("density_at", &density_at, py::arg("space"), py::arg("s"));
  m.def("slope", &slope, py::arg("space"), py::arg("f"));

  // spectrum
  py::class_<EigenResult>(m, "EigenResult")
      .def_readonly("eigenvalue", &EigenResult::eigenvalue)
      .def_readonly("eigenfunction", &EigenResult::eigenfunction)
      .def_readonly("residual_norm", &EigenResult::residual_norm);
  m.def("lambda1", &lambda1, py::arg("space"));
  m.def("lambda0", &lambda0, py::arg("space"));
  m.def("rayleigh", &rayleigh, py::arg("space"), py::arg("f"), py::arg("mean_zero") = true);

  // isoperimetry
  py::enum_<CutKind>(m, "CutKind")
      .value("single_cut", CutKind::single_cut)
      .value("interval", CutKind::interval)
      .value("multi_interval", CutKind::multi_interval);
  py::class_<CutFamily>(m, "CutFamily")
      .def(py::init([](CutKind kind, std::vector<double> pts) {
             return CutFamily{kind, std::move(pts)};
           }),
           py::arg("kind"), py::arg("cut_points"))
      .def_readonly("kind", &CutFamily::kind)
      .def_readonly("cut_points", &CutFamily::cut_points);
  m.def("perimeter", &perimeter, py::arg("space"), py::arg("cuts"));
  m.def("cut_measure", &cut_measure, py::arg("space"), py::arg("cuts"));
  py::class_<CheegerResult>(m, "CheegerResult")
      .def_readonly("h", &CheegerResult::h)
      .def_readonly("optimal_cuts", &CheegerResult::optimal_cuts);
  m.def("cheeger_constant", &cheeger_constant, py::arg("space"));
  py::class_<CoareaResult>(m, "CoareaResult")
      .def_readonly("lhs", &CoareaResult::lhs)
      .def_readonly("rhs", &CoareaResult::rhs)
      .def_readonly("pass_", &CoareaResult::pass);
  m.def("coarea_check", &coarea_check, py::arg("space"), py::arg("u"));

  // heat flow
  py::class_<FlowResult>(m, "FlowResult")
      .def_readonly("final", &FlowResult::final)
      .def_readonly("t", &FlowResult::t)
      .def_readonly("steps", &FlowResult::steps)
      .def_readonly("mass_drift", &FlowResult::mass_drift)
      .def_readonly("min_overshoot", &FlowResult::min_overshoot)
      .def_readonly("max_overshoot", &FlowResult::max_overshoot);
  m.def("evolve", &evolve, py::arg("space"), py::arg("f"), py::arg("t"), py::arg("steps"));

  py::class_<VerificationRecord>(m, "VerificationRecord")
      .def_readonly("inequality_id", &VerificationRecord::inequality_id)
      .def_readonly("worst_slack", &VerificationRecord::worst_slack)
      .def_readonly("tolerance", &VerificationRecord::tolerance)
      .def_readonly("pass_", &VerificationRecord::pass)
      .def_readonly("n", &VerificationRecord::n)
      .def_readonly("dx", &VerificationRecord::dx)
      .def_readonly("dt", &VerificationRecord::dt)
      .def_readonly("notes", &VerificationRecord::notes);
  m.def("verify_l2_decay", &verify_l2_decay, py::arg("space"), py::arg("f"),
        py::arg("t_grid"));
  m.def("verify_bgl", &verify_bgl, py::arg("space"), py::arg("f"), py::arg("t_grid"));
  m.def("verify_linf_gradient", &verify_linf_gradient, py::arg("space"), py::arg("f"),
        py::arg("t_grid"));
  m.def("verify_l1_smoothing", &verify_l1_smoothing, py::arg("space"), py::arg("f"),
        py::arg("t_grid"));
  m.def("verify_perimeter_chain", &verify_perimeter_chain, py::arg("space"),
        py::arg("cut"), py::arg("t_grid"));
  m.def("verify_savare", &verify_savare, py::arg("space"), py::arg("f"),
        py::arg("t_grid"));
  m.def("log_grid", &log_grid, py::arg("lo"), py::arg("hi"), py::arg("points"));

  // suite driver
  py::class_<SuiteResult>(m, "SuiteResult")
      .def_readonly("records", &SuiteResult::records)
      .def_readonly("lambda_", &SuiteResult::lambda)
      .def_readonly("h", &SuiteResult::h)
      .def_readonly("curvature", &SuiteResult::curvature)
      .def_readonly("all_pass", &SuiteResult::all_pass);
  m.def(
      "run_verify_suite",
      [](const std::string& preset, int n, double radius, std::optional<double> length,
         std::optional<double> a, std::optional<double> b, double t_min, double t_max,
         int t_points, unsigned seed, int coarea_samples, bool refinement) {
        SuiteConfig config;
        config.spec = make_spec(preset, n, radius, length, a, b);
        config.t_grid = log_grid(t_min, t_max, t_points);
        config.rng_seed = seed;
        config.coarea_samples = coarea_samples;
        config.refinement = refinement;
        return run_verify_suite(config);
      },
      py::arg("preset"), py::arg("n") = 2001, py::arg("radius") = 8.0,
      py::arg("L") = std::nullopt, py::arg("a") = std::nullopt,
      py::arg("b") = std::nullopt, py::arg("t_min") = 1e-2, py::arg("t_max") = 10.0,
      py::arg("t_points") = 24, py::arg("seed") = 12345,
      py::arg("coarea_samples") = 50, py::arg("refinement") = true);

  py::class_<SharpnessReport>(m, "SharpnessReport")
      .def_readonly("lambda1", &SharpnessReport::lambda1)
      .def_readonly("h", &SharpnessReport::h)
      .def_readonly("implicit_value", &SharpnessReport::implicit_value)
      .def_readonly("explicit_value", &SharpnessReport::explicit_value)
      .def_readonly("gap_h", &SharpnessReport::gap_h)
      .def_readonly("gap_implicit", &SharpnessReport::gap_implicit)
      .def_readonly("gap_explicit", &SharpnessReport::gap_explicit);
  m.def("sharpness_report", &sharpness_report, py::arg("n") = 4001,
        py::arg("radius") = 8.0, py::arg("c") = std::nullopt);
}
