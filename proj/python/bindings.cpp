#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mixparseval/catalog.hpp"
#include "mixparseval/engine.hpp"
#include "mixparseval/expr.hpp"
#include "mixparseval/fourier.hpp"
#include "mixparseval/functions.hpp"
#include "mixparseval/quadrature.hpp"

namespace py = pybind11;
using namespace mixparseval;

namespace {

FourierPath to_path(const std::string& s) {
    if (s == "auto") return FourierPath::automatic;
    if (s == "analytic") return FourierPath::analytic;
    if (s == "numeric") return FourierPath::numeric;
    throw py::value_error("path must be 'auto', 'analytic' or 'numeric'");
}

std::string source_name(FourierSource s) { return s == FourierSource::analytic ? "analytic" : "numeric"; }

}  // namespace

PYBIND11_MODULE(_mixparseval, m) {
    m.doc() = "Integrals of a decaying function against a periodic one via Fourier series";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_RuntimeError);
    py::register_exception<FourierError>(m, "FourierError", PyExc_RuntimeError);
    py::register_exception<QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);

    py::class_<Expr>(m, "Expr")
        .def("__call__", &Expr::eval, py::arg("x"))
        .def("eval", &Expr::eval, py::arg("x"))
        .def("to_prefix", &Expr::to_prefix)
        .def_property_readonly("source", &Expr::source)
        .def("__repr__", [](const Expr& e) { return "Expr(" + e.source() + ")"; });
    m.def("parse", &parse, py::arg("source"));

    py::class_<Envelope> env(m, "Envelope");
    py::enum_<Envelope::Shape>(env, "Shape")
        .value("exponential", Envelope::Shape::exponential)
        .value("gaussian", Envelope::Shape::gaussian);
    env.def(py::init([](Envelope::Shape shape, double scale, double rate, double x0) {
                return Envelope{shape, scale, rate, x0};
            }),
            py::arg("shape"), py::arg("scale"), py::arg("rate"), py::arg("x0") = 0.0)
        .def_readonly("shape", &Envelope::shape)
        .def_readonly("scale", &Envelope::scale)
        .def_readonly("rate", &Envelope::rate)
        .def_readonly("x0", &Envelope::x0)
        .def("bound", &Envelope::bound);

    py::class_<DecayingFunction>(m, "DecayingFunction")
        .def_static("sech", &DecayingFunction::sech, py::arg("b"))
        .def_static("gaussian", &DecayingFunction::gaussian, py::arg("b"))
        .def_static("logistic_tail", &DecayingFunction::logistic_tail)
        .def_static("from_expr", &DecayingFunction::from_expr, py::arg("expr"), py::arg("envelope") = std::nullopt)
        .def("__call__", &DecayingFunction::operator(), py::arg("x"))
        .def_property_readonly("envelope", &DecayingFunction::envelope)
        .def_property_readonly("is_builtin", &DecayingFunction::is_builtin)
        .def("__repr__", &DecayingFunction::describe);

    py::class_<PeriodicFunction>(m, "PeriodicFunction")
        .def_static("cosh_plus_cos", &PeriodicFunction::cosh_plus_cos, py::arg("a"))
        .def_static("cosh_minus_cos", &PeriodicFunction::cosh_minus_cos, py::arg("a"))
        .def_static("log_cos_squared", &PeriodicFunction::log_cos_squared)
        .def_static("from_expr", &PeriodicFunction::from_expr, py::arg("expr"), py::arg("period"),
                    py::arg("singular_points") = std::vector<double>{})
        .def("__call__", &PeriodicFunction::operator(), py::arg("x"))
        .def("with_period", &PeriodicFunction::with_period, py::arg("period"))
        .def_property_readonly("period", &PeriodicFunction::period)
        .def_property_readonly("singular_points", &PeriodicFunction::singular_points)
        .def_property_readonly("period_verified", &PeriodicFunction::period_verified)
        .def_property_readonly("is_builtin", &PeriodicFunction::is_builtin)
        .def("__repr__", &PeriodicFunction::describe);

    m.def("make_decaying", &make_decaying, py::arg("family"), py::arg("params") = FamilyParams{});
    m.def("make_periodic", &make_periodic, py::arg("family"), py::arg("params") = FamilyParams{});

    py::class_<QuadratureResult>(m, "QuadratureResult")
        .def_readonly("value", &QuadratureResult::value)
        .def_readonly("error_estimate", &QuadratureResult::error_estimate)
        .def_readonly("evaluations", &QuadratureResult::evaluations)
        .def_readonly("converged", &QuadratureResult::converged)
        .def_readonly("subdivisions", &QuadratureResult::subdivisions)
        .def_readonly("cutoff", &QuadratureResult::cutoff);

    m.def(
        "integrate_finite",
        [](const RealFunction& fn, double lo, double hi, double tol, std::vector<double> splits) {
            return integrate_finite(fn, lo, hi, tol, splits);
        },
        py::arg("fn"), py::arg("lo"), py::arg("hi"), py::arg("tol"), py::arg("split_points") = std::vector<double>{});
    m.def(
        "integrate_line",
        [](const RealFunction& fn, double tol, std::optional<Envelope> envelope) {
            LineOptions opts;
            opts.envelope = envelope;
            return integrate_line(fn, tol, opts);
        },
        py::arg("fn"), py::arg("tol"), py::arg("envelope") = std::nullopt);

    m.def(
        "transform",
        [](const DecayingFunction& f, double omega, double tol, const std::string& path) {
            return transform(f, omega, tol, to_path(path));
        },
        py::arg("f"), py::arg("omega"), py::arg("tol") = 1e-12, py::arg("path") = "auto");
    m.def(
        "coefficient",
        [](const PeriodicFunction& g, int n, double tol, const std::string& path) {
            return coefficient(g, n, tol, to_path(path));
        },
        py::arg("g"), py::arg("n"), py::arg("tol") = 1e-12, py::arg("path") = "auto");

    py::class_<CoefficientTable>(m, "CoefficientTable")
        .def_readonly("n_max", &CoefficientTable::n_max)
        .def_readonly("grid_size", &CoefficientTable::grid_size)
        .def_readonly("converged", &CoefficientTable::converged)
        .def_property_readonly("source", [](const CoefficientTable& t) { return source_name(t.source); })
        .def("__getitem__", &CoefficientTable::at)
        .def("as_dict", [](const CoefficientTable& t) {
            py::dict d;
            for (int n = -t.n_max; n <= t.n_max; ++n) d[py::int_(n)] = t.at(n);
            return d;
        });
    m.def(
        "coefficient_table",
        [](const PeriodicFunction& g, int n_max, double tol, const std::string& path) {
            return coefficient_table(g, n_max, tol, to_path(path));
        },
        py::arg("g"), py::arg("n_max"), py::arg("tol") = 1e-12, py::arg("path") = "auto");

    py::class_<HypothesisReport>(m, "HypothesisReport")
        .def_readonly("period", &HypothesisReport::period)
        .def_readonly("K", &HypothesisReport::K)
        .def_readonly("block_norms", &HypothesisReport::block_norms)
        .def_readonly("partial_M", &HypothesisReport::partial_M)
        .def_readonly("decay_ratio", &HypothesisReport::decay_ratio)
        .def_readonly("ratio_negative", &HypothesisReport::ratio_negative)
        .def_readonly("ratio_positive", &HypothesisReport::ratio_positive)
        .def_readonly("tail_bound", &HypothesisReport::tail_bound)
        .def_property_readonly("verdict", [](const HypothesisReport& h) { return std::string(to_string(h.verdict)); });
    m.def("check_hypothesis", &check_hypothesis, py::arg("f"), py::arg("period"), py::arg("K"),
          py::arg("tol") = 1e-12);

    py::class_<MixedResult>(m, "MixedResult")
        .def_readonly("value", &MixedResult::value)
        .def_readonly("n_used", &MixedResult::n_used)
        .def_readonly("tail_bound", &MixedResult::tail_bound)
        .def_readonly("converged", &MixedResult::converged)
        .def_readonly("term_error", &MixedResult::term_error)
        .def_readonly("oracle", &MixedResult::oracle)
        .def_readonly("oracle_gap", &MixedResult::oracle_gap)
        .def_readonly("warnings", &MixedResult::warnings)
        .def_property_readonly("tail_rule", [](const MixedResult& r) { return std::string(to_string(r.tail_rule)); });

    static py::exception<NonConvergenceError> non_convergence(m, "NonConvergenceError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NonConvergenceError& e) {
            py::object inst = py::handle(non_convergence)(e.what());
            inst.attr("partial") = py::cast(e.partial());
            PyErr_SetObject(non_convergence.ptr(), inst.ptr());
        }
    });

    m.def(
        "evaluate_mixed",
        [](const DecayingFunction& f, const PeriodicFunction& g, double tol, bool with_oracle, int start_n, int max_n,
           const std::string& transform_path, const std::string& coefficient_path) {
            EvaluateOptions opts;
            opts.start_n = start_n;
            opts.max_n = max_n;
            opts.transform_path = to_path(transform_path);
            opts.coefficient_path = to_path(coefficient_path);
            return evaluate_mixed(f, g, tol, with_oracle, opts);
        },
        py::arg("f"), py::arg("g"), py::arg("tol") = 1e-10, py::arg("with_oracle") = false, py::arg("start_n") = 16,
        py::arg("max_n") = 4096, py::arg("transform_path") = "auto", py::arg("coefficient_path") = "auto");

    m.def("periodize_sample", &periodize_sample, py::arg("f"), py::arg("period"), py::arg("x"), py::arg("K"));
    m.def(
        "classical_parseval_sides",
        [](const DecayingFunction& f, const PeriodicFunction& g, int K, int N, double tol) {
            ParsevalSides s = classical_parseval_sides(f, g, K, N, tol);
            return py::make_tuple(s.lhs, s.rhs);
        },
        py::arg("f"), py::arg("g"), py::arg("K"), py::arg("N"), py::arg("tol") = 1e-12);

    auto cat = m.def_submodule("catalog", "closed-form reference values");
    py::class_<catalog::SeriesValue>(cat, "SeriesValue")
        .def_readonly("value", &catalog::SeriesValue::value)
        .def_readonly("terms_used", &catalog::SeriesValue::terms_used)
        .def_readonly("tail_bound", &catalog::SeriesValue::tail_bound);
    cat.def("example1_series", &catalog::example1_series, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-15);
    cat.def("example2_reference", &catalog::example2_reference);
    cat.def("example2_double_sum_J", &catalog::example2_double_sum_J, py::arg("q_max"));
    cat.def("theta2", &catalog::theta2, py::arg("q"), py::arg("tol") = 1e-17);
    cat.def("example3_theta", &catalog::example3_theta, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-15);
    cat.def("example3_theta_closed_form", &catalog::example3_theta_closed_form, py::arg("a"));
}
