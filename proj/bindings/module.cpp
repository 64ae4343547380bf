#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expbern/convergence.hpp"
#include "expbern/fundamental.hpp"

namespace py = pybind11;
using namespace expbern;

namespace {

FamilySpec family_from(const std::string& kind, py::kwargs kw) {
    double a = kw["a"].cast<double>(), b = kw["b"].cast<double>();
    if (kind == "equidistant")
        return FamilySpec::equidistant(kw["lambda0"].cast<double>(),
                                       kw["omega_total"].cast<double>(), a, b);
    if (kind == "morigi_neamtu")
        return FamilySpec::morigi_neamtu(kw["mu0"].cast<cplx>(),
                                         kw["mu1"].cast<cplx>(), a, b);
    if (kind == "classical")
        return FamilySpec::classical_family(kw["lambda0"].cast<double>(), a, b);
    throw std::invalid_argument("family kind must be equidistant, "
                                "morigi_neamtu or classical");
}

py::dict entry_dict(const ConvergenceEntry& e) {
    py::dict d;
    d["n"] = e.n;
    d["sup_error"] = e.sup_error;
    d["mesh"] = e.mesh;
    d["a_vals"] = e.a_vals;
    d["b_vals"] = e.b_vals;
    d["log_ratio_dev"] = e.log_ratio_dev;
    d["ratio_dev"] = e.ratio_dev;
    d["hypothesis_ok"] = e.hypothesis_ok;
    d["note"] = e.note;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bernstein bases and operators for exponential-polynomial spaces";

    py::register_exception<Error>(m, "ComputationError", PyExc_RuntimeError);

    py::class_<EigenvalueMultiset>(m, "EigenvalueMultiset")
        .def(py::init([](const std::vector<cplx>& values, double eps) {
                 return EigenvalueMultiset::canonicalize(values, eps);
             }),
             py::arg("values"), py::arg("eps") = tol::merge_eps)
        .def_property_readonly("entries",
                               [](const EigenvalueMultiset& s) {
                                   std::vector<std::pair<cplx, int>> out;
                                   for (const auto& e : s.entries())
                                       out.emplace_back(e.value, e.multiplicity);
                                   return out;
                               })
        .def_property_readonly("chain_warning", &EigenvalueMultiset::chain_warning)
        .def("dimension", &EigenvalueMultiset::dimension)
        .def("degree", &EigenvalueMultiset::degree)
        .def("max_imag", &EigenvalueMultiset::max_imag)
        .def("is_conjugate_closed",
             py::overload_cast<double>(&EigenvalueMultiset::is_conjugate_closed,
                                       py::const_),
             py::arg("eps") = tol::merge_eps)
        .def("equivalent", &EigenvalueMultiset::equivalent, py::arg("other"),
             py::arg("eps") = tol::merge_eps)
        .def("without", &EigenvalueMultiset::without)
        .def("shifted", &EigenvalueMultiset::shifted)
        .def("scaled", &EigenvalueMultiset::scaled)
        .def("expanded", &EigenvalueMultiset::expanded)
        .def("__repr__", &EigenvalueMultiset::to_string);

    py::class_<ExpPoly>(m, "ExpPoly")
        .def(py::init<>())
        .def_static("exponential", &ExpPoly::exponential)
        .def_static("constant", &ExpPoly::constant)
        .def_static("monomial", &ExpPoly::monomial)
        .def_static("term", &ExpPoly::term)
        .def_static("parse", &ExpPoly::parse)
        .def("eval", &ExpPoly::eval)
        .def("derivative", &ExpPoly::derivative, py::arg("order") = 1)
        .def("apply_first_order", &ExpPoly::apply_first_order)
        .def("modulate", &ExpPoly::modulate)
        .def("reparametrize", &ExpPoly::reparametrize)
        .def("taylor_derivatives", &ExpPoly::taylor_derivatives)
        .def("zero_order_at",
             [](const ExpPoly& f, double x0, int max_order, double tol) {
                 auto z = f.zero_order_at(x0, max_order, tol);
                 return std::make_pair(z.order, z.leading);
             },
             py::arg("x0"), py::arg("max_order"), py::arg("tol") = 1e-9)
        .def("is_real_valued", &ExpPoly::is_real_valued, py::arg("tol") = 1e-9)
        .def("in_space", &ExpPoly::in_space)
        .def("is_zero", &ExpPoly::is_zero)
        .def("__add__", [](const ExpPoly& f, const ExpPoly& g) { return f + g; })
        .def("__sub__", [](const ExpPoly& f, const ExpPoly& g) { return f - g; })
        .def("__rmul__", [](const ExpPoly& f, cplx c) { return c * f; })
        .def("__str__", &ExpPoly::to_string)
        .def("__repr__", &ExpPoly::to_string);

    py::class_<ChebyshevDiagnosis>(m, "ChebyshevDiagnosis")
        .def_readonly("a", &ChebyshevDiagnosis::a)
        .def_readonly("b", &ChebyshevDiagnosis::b)
        .def_readonly("n", &ChebyshevDiagnosis::n)
        .def_readonly("hankel_values", &ChebyshevDiagnosis::hankel_values)
        .def_readonly("pair_ok", &ChebyshevDiagnosis::pair_ok)
        .def_readonly("interval_ok", &ChebyshevDiagnosis::interval_ok)
        .def_readonly("window_bound", &ChebyshevDiagnosis::window_bound)
        .def_readonly("conjugate_closed", &ChebyshevDiagnosis::conjugate_closed)
        .def_property_readonly("near_zero_flags",
                               [](const ChebyshevDiagnosis& d) {
                                   std::vector<std::pair<int, double>> out;
                                   for (const auto& f : d.near_zero_flags)
                                       out.emplace_back(f.k, f.x);
                                   return out;
                               })
        .def("window_certificate", &ChebyshevDiagnosis::window_certificate);

    m.def("fundamental_function",
          [](const EigenvalueMultiset& lam) { return fundamental_function(lam); });
    m.def("hankel_value", &hankel_value);
    m.def("chebyshev_pair_test", &chebyshev_pair_test);
    m.def("chebyshev_interval_test", &chebyshev_interval_test, py::arg("lambda_"),
          py::arg("a"), py::arg("b"), py::arg("samples") = 512);

    py::class_<BernsteinBasis>(m, "BernsteinBasis")
        .def_readonly("a", &BernsteinBasis::a)
        .def_readonly("b", &BernsteinBasis::b)
        .def_readonly("lambda_", &BernsteinBasis::lambda)
        .def_readonly("alpha", &BernsteinBasis::alpha)
        .def_readonly("beta", &BernsteinBasis::beta)
        .def("degree", &BernsteinBasis::degree)
        .def("at", &BernsteinBasis::at, py::return_value_policy::copy)
        .def("__len__",
             [](const BernsteinBasis& b) { return b.functions.size(); });

    m.def("build_basis", &build_basis);
    m.def("equidistant_basis", &equidistant_basis);
    m.def("limit_ratio", &limit_ratio);
    m.def("d_coefficients", &d_coefficients);
    m.def("exp_in_basis", &exp_in_basis);
    m.def("connection_constant", &connection_constant);

    py::class_<BernsteinOperator>(m, "BernsteinOperator")
        .def_readonly("basis", &BernsteinOperator::basis)
        .def_readonly("fixed0", &BernsteinOperator::fixed0)
        .def_readonly("fixed1", &BernsteinOperator::fixed1)
        .def_readonly("confluent", &BernsteinOperator::confluent)
        .def_readonly("nodes", &BernsteinOperator::nodes)
        .def_readonly("weights", &BernsteinOperator::weights)
        .def_readonly("step_ratios", &BernsteinOperator::step_ratios)
        .def_readonly("nodes_ordered", &BernsteinOperator::nodes_ordered)
        .def_readonly("weights_positive", &BernsteinOperator::weights_positive)
        .def("degree", &BernsteinOperator::degree)
        .def("apply",
             [](const BernsteinOperator& op,
                const std::function<double(double)>& f, double x) {
                 return op.apply(f, x);
             })
        .def("apply_table",
             [](const BernsteinOperator& op,
                const std::vector<std::pair<double, double>>& table, double x) {
                 return op.apply(table, x);
             });

    m.def("build_operator",
          [](const EigenvalueMultiset& lam, double a, double b, cplx f0, cplx f1) {
              return build_operator(lam, a, b, {f0, f1});
          });
    m.def("build_operator_confluent", &build_operator_confluent, py::arg("lambda_"),
          py::arg("a"), py::arg("b"), py::arg("fix_double"),
          py::arg("eps_schedule") = std::vector<double>{1e-2, 1e-3, 1e-4});
    m.def("equidistant_operator", &equidistant_operator);
    m.def("fixed_point_residuals", &fixed_point_residuals, py::arg("op"),
          py::arg("grid") = 257);
    m.def("muntz_to_exponential", [](const std::vector<double>& exponents,
                                     double a, double b) {
        MuntzSystem sys = muntz_to_exponential(exponents, a, b);
        return std::make_tuple(sys.lambda, sys.a, sys.b);
    });

    m.def("morigi_neamtu_family", &morigi_neamtu_family);
    m.def("hypothesis_report",
          [](const std::string& kind, int n, py::kwargs kw) {
              return entry_dict(hypothesis_report(family_from(kind, kw), n));
          });
    m.def("convergence_study",
          [](const std::string& kind, const std::function<double(double)>& f,
             const std::vector<int>& n_list, int grid, py::kwargs kw) {
              ConvergenceReport rep =
                  convergence_study(family_from(kind, kw), f, n_list, grid);
              py::list out;
              for (const auto& e : rep.entries) out.append(entry_dict(e));
              return out;
          },
          py::arg("kind"), py::arg("f"), py::arg("n_list"), py::arg("grid") = 257);
    m.def("test_function", &test_function);
}
