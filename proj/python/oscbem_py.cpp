#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "oscbem/harness.hpp"
#include "oscbem/oracle.hpp"
#include "oscbem/solver.hpp"

namespace py = pybind11;
using namespace oscbem;

PYBIND11_MODULE(_oscbem, m) {
    m.doc() = "oversampled least-squares collocation for 2D boundary integral equations";

    py::register_exception<Error>(m, "OscbemError");

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>())
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y);

    py::class_<BoundaryCurve>(m, "BoundaryCurve")
        .def_static("circle", &BoundaryCurve::circle, py::arg("radius"))
        .def_static("kite", &BoundaryCurve::kite)
        .def_static("regular_polygon", &BoundaryCurve::regular_polygon, py::arg("sides"),
                    py::arg("circumradius"))
        .def("point", [](const BoundaryCurve& c, double t) {
            Vec2 p = c.point(t);
            return std::make_pair(p.x, p.y);
        })
        .def("speed", &BoundaryCurve::speed)
        .def("perimeter", &BoundaryCurve::perimeter);

    py::class_<FourierVector>(m, "FourierVector")
        .def(py::init<int>(), py::arg("bandwidth"))
        .def_static("mode", &FourierVector::mode, py::arg("m"), py::arg("amplitude"),
                    py::arg("bandwidth"))
        .def("bandwidth", &FourierVector::bandwidth)
        .def("coeff", &FourierVector::coeff)
        .def("set_coeff", &FourierVector::set_coeff)
        .def("eval", &FourierVector::eval);

    m.def("fourier_coefficients", &fourier_coefficients, py::arg("f"), py::arg("bandwidth"),
          py::arg("oversample") = 4);
    m.def("sobolev_norm", &sobolev_norm);
    m.def("duality_pairing", &duality_pairing);

    py::class_<SplineSpace>(m, "SplineSpace")
        .def_static("uniform", &SplineSpace::uniform, py::arg("degree"), py::arg("n"))
        .def("size", &SplineSpace::size)
        .def("degree", &SplineSpace::degree)
        .def("eval", &SplineSpace::eval)
        .def("to_fourier", &SplineSpace::to_fourier);

    m.def("hs_projection",
          [](const FourierVector& target, const SplineSpace& space, double s) {
              return hs_projection(target, space, s);
          });

    py::class_<CollocationGrid>(m, "CollocationGrid")
        .def_readonly("points", &CollocationGrid::points)
        .def_readonly("weights", &CollocationGrid::weights)
        .def("size", &CollocationGrid::size);
    m.def("make_equispaced", &make_equispaced, py::arg("m"), py::arg("shift") = 0.0);
    m.def("make_refined", &make_refined);
    m.def("make_offset", &make_offset);
    m.def("make_random", &make_random, py::arg("m"), py::arg("seed"), py::arg("min_points") = 2);
    m.def("max_spacing", &max_spacing);

    py::enum_<ProblemSide>(m, "ProblemSide")
        .value("Exterior", ProblemSide::Exterior)
        .value("Interior", ProblemSide::Interior);
    py::class_<OperatorSpec>(m, "OperatorSpec")
        .def_static("single_layer", &OperatorSpec::single_layer)
        .def_static("double_layer", &OperatorSpec::double_layer, py::arg("k"),
                    py::arg("side") = ProblemSide::Exterior)
        .def_static("pseudo_differential", &OperatorSpec::pseudo_differential);
    m.def("apply_pseudodiff", &apply_pseudodiff);
    m.def("circle_symbol", &circle_symbol);
    m.def("boundary_apply",
          [](const OperatorSpec& op, const BoundaryCurve& curve, const SplineSpace& space,
             const std::vector<Complex>& coeffs, double s) {
              return boundary_apply(op, curve, space, coeffs, s);
          });
    m.def("field_eval",
          [](const OperatorSpec& op, const BoundaryCurve& curve, const SplineSpace& space,
             const std::vector<Complex>& coeffs, double x, double y) {
              return field_eval(op, curve, space, coeffs, Vec2{x, y});
          });

    m.def("omega", [](double xi, double y, int degree, double two_alpha) {
        return omega(xi, y, degree, two_alpha);
    });
    m.def("stability_D", &stability_D);
    m.def("error_E", &error_E);
    m.def("aliasing_error", &aliasing_error);
    m.def("smooth_model_coeff", &smooth_model_coeff);
    m.def("plane_wave_circle_trace", &plane_wave_circle_trace);
    m.def("circle_reference",
          [](const OperatorSpec& op, double radius, const FourierVector& data) {
              return circle_reference(op, radius, data);
          });

    py::class_<ExactErrorCoeffs>(m, "ExactErrorCoeffs")
        .def_readonly("mu", &ExactErrorCoeffs::mu)
        .def_readonly("error", &ExactErrorCoeffs::error)
        .def_readonly("z_n", &ExactErrorCoeffs::z_n)
        .def_readonly("d_values", &ExactErrorCoeffs::d_values)
        .def_readonly("e_values", &ExactErrorCoeffs::e_values);
    m.def("exact_error_coeffs",
          [](int degree, double two_alpha, int n, int j) {
              ModelProblem p;
              p.degree = degree;
              p.two_alpha = two_alpha;
              p.n = n;
              p.j = j;
              p.u_hat = smooth_model_coeff;
              return exact_error_coeffs(p);
          },
          py::arg("degree"), py::arg("two_alpha"), py::arg("n"), py::arg("j"));

    py::class_<ConvergenceRecord>(m, "ConvergenceRecord")
        .def_readonly("method", &ConvergenceRecord::method)
        .def_readonly("n", &ConvergenceRecord::n)
        .def_readonly("m", &ConvergenceRecord::m)
        .def_readonly("metric", &ConvergenceRecord::metric)
        .def_readonly("s_or_point", &ConvergenceRecord::s_or_point)
        .def_readonly("error", &ConvergenceRecord::error)
        .def_readonly("cond", &ConvergenceRecord::cond)
        .def_readonly("seed", &ConvergenceRecord::seed);

    m.def("run_study_file", [](const std::string& path) {
        return run_study(parse_config_file(path));
    });
    m.def("run_study_text", [](const std::string& text) {
        std::istringstream in(text);
        return run_study(parse_config(in));
    });
    m.def("fit_slope", [](const std::vector<double>& x, const std::vector<double>& y) {
        auto f = fit_slope(x, y);
        return std::make_tuple(f.slope, f.intercept, f.r2);
    });
    m.def("study_csv", [](const std::string& text) {
        std::istringstream in(text);
        auto cfg = parse_config(in);
        std::ostringstream out;
        emit_csv(run_study(cfg), out, cfg.timing);
        return out.str();
    });

    m.attr("__version__") = "0.1.0";
}
