#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <sstream>

#include "qrk/cli.hpp"
#include "qrk/error.hpp"
#include "qrk/qcalc.hpp"
#include "qrk/quad.hpp"
#include "qrk/rkhs.hpp"
#include "qrk/specfun.hpp"
#include "qrk/verify.hpp"

namespace py = pybind11;
using namespace qrk;

namespace {

const QuadRule& rule(int order) {
    static std::map<int, QuadRule> cache;
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, gauss_legendre(order)).first;
    return it->second;
}

std::string kind_name(SystemKind k) {
    switch (k) {
        case SystemKind::classical: return "classical";
        case SystemKind::q: return "q";
        default: return "recurrence";
    }
}

}  // namespace

PYBIND11_MODULE(_qrk, m) {
    m.doc() = "Reproducing kernels of Fourier and q-Fourier systems";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<UsageError>(m, "UsageError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<BracketError>(m, "BracketError", base.ptr());
    py::register_exception<NonFiniteError>(m, "NonFiniteError", base.ptr());

    m.def("bessel_j", &bessel_j, py::arg("nu"), py::arg("x"));
    m.def("gegenbauer", &gegenbauer, py::arg("n"), py::arg("nu"), py::arg("x"));
    m.def("lommel", &lommel, py::arg("n"), py::arg("nu"), py::arg("x"));
    m.def("bessel_zero", &bessel_zero, py::arg("nu"), py::arg("k"));

    m.def("qpochhammer", [](double a, double q, int n) { return qpochhammer(a, QBase(q), n); }, py::arg("a"),
          py::arg("q"), py::arg("n"));
    m.def("qpochhammer_inf", [](double a, double q) { return qpochhammer_inf(a, QBase(q)); }, py::arg("a"),
          py::arg("q"));
    m.def("q_bessel2", [](double nu, double x, double q) { return q_bessel2(nu, x, QBase(q)); }, py::arg("nu"),
          py::arg("x"), py::arg("q"));
    m.def("q_lommel", [](int n, double nu, double x, double q) { return q_lommel(n, nu, x, QBase(q)); },
          py::arg("n"), py::arg("nu"), py::arg("x"), py::arg("q"));
    m.def("q_ultraspherical",
          [](int n, double nu, double x, double q) { return q_ultraspherical(n, nu, x, QBase(q)); }, py::arg("n"),
          py::arg("nu"), py::arg("x"), py::arg("q"));
    m.def("q_exponential_curly", [](double x, cplx t, double q) { return q_exponential_curly(x, t, QBase(q)); },
          py::arg("x"), py::arg("t"), py::arg("q"));
    m.def("q_bessel_zero", [](double nu, int k, double q) { return q_bessel_zero(nu, k, QBase(q)); }, py::arg("nu"),
          py::arg("k"), py::arg("q"));

    py::class_<SystemSpec>(m, "System")
        .def_static("classical", &make_classical_system, py::arg("nu"), py::arg("truncation") = 40,
                    py::arg("node_count") = 30)
        .def_static(
            "q_system",
            [](double nu, double q, int truncation, int node_count) {
                return make_q_system(nu, QBase(q), truncation, node_count);
            },
            py::arg("nu"), py::arg("q"), py::arg("truncation") = 40, py::arg("node_count") = 20)
        .def_property_readonly("kind", [](const SystemSpec& s) { return kind_name(s.kind); })
        .def_readonly("nu", &SystemSpec::nu)
        .def_readonly("q", &SystemSpec::q)
        .def_readonly("truncation", &SystemSpec::truncation)
        .def_readonly("nodes", &SystemSpec::nodes)
        .def_readonly("lambdas", &SystemSpec::lambdas)
        .def_readonly("origin_scale", &SystemSpec::origin_scale)
        .def("p", &SystemSpec::p, py::arg("k"), py::arg("x"))
        .def("J", &SystemSpec::J, py::arg("k"), py::arg("t"))
        .def("u", &SystemSpec::u, py::arg("k"))
        .def("sampling_nodes", [](const SystemSpec& s, int count) { return sampling_nodes(s, count); },
             py::arg("count"));

    py::class_<KernelEvaluator>(m, "Kernel")
        .def(py::init<SystemSpec>(), py::arg("system"))
        .def(py::init<SystemSpec, int>(), py::arg("system"), py::arg("truncation"))
        .def_property_readonly("system", &KernelEvaluator::spec)
        .def_property_readonly("truncation", &KernelEvaluator::truncation)
        .def("__call__", [](const KernelEvaluator& k, double x, double t) { return k(x, t).value; }, py::arg("x"),
             py::arg("t"))
        .def("tail_estimate", [](const KernelEvaluator& k, double x, double t) { return k(x, t).tail_estimate; },
             py::arg("x"), py::arg("t"))
        .def("coefficients", &KernelEvaluator::coefficients, py::arg("t"));

    py::class_<Transform>(m, "Transform")
        .def("__call__", &Transform::operator(), py::arg("t"))
        .def_property_readonly("moments", &Transform::moments)
        .def("origin_value", &Transform::origin_value);

    m.def(
        "transform",
        [](const Function& u, const KernelEvaluator& k, int quad_order) { return transform(u, k, rule(quad_order)); },
        py::arg("u"), py::arg("kernel"), py::arg("quad_order") = 200);
    m.def("image_inner", &image_inner, py::arg("f"), py::arg("g"));

    m.def(
        "reproducing_kernel",
        [](const KernelEvaluator& k, double t, double s, int quad_order) {
            return reproducing_kernel(k, t, s, rule(quad_order));
        },
        py::arg("kernel"), py::arg("t"), py::arg("s"), py::arg("quad_order") = 200);
    m.def("reproducing_kernel_series", &reproducing_kernel_series, py::arg("kernel"), py::arg("t"), py::arg("s"));
    m.def("reproducing_kernel_closed", &reproducing_kernel_closed, py::arg("system"), py::arg("t"), py::arg("s"));
    m.def("reproducing_kernel_sinc", &reproducing_kernel_sinc, py::arg("t"), py::arg("s"));
    m.def("reproducing_kernel_q_closed",
          [](double t, double s, double q) { return reproducing_kernel_q_closed(t, s, QBase(q)); }, py::arg("t"),
          py::arg("s"), py::arg("q"));
    m.def("sinc_display_constant", &sinc_display_constant);
    m.def("classical_display_constant", &classical_display_constant, py::arg("nu"));
    m.def(
        "ismail_stanton",
        [](cplx a, cplx b, cplx c, double q, int quad_order) {
            const IsmailStanton r = ismail_stanton(a, b, c, QBase(q), rule(quad_order));
            return py::make_tuple(r.lhs, r.rhs);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("q"), py::arg("quad_order") = 200);

    m.def(
        "neumann_coefficients",
        [](const Function& u, const SystemSpec& s, int count, int quad_order) {
            return neumann_coefficients(u, s, rule(quad_order), count).coefficients;
        },
        py::arg("u"), py::arg("system"), py::arg("count"), py::arg("quad_order") = 200);

    py::class_<SampleSet>(m, "SampleSet")
        .def(py::init([](std::vector<double> nodes, std::vector<cplx> values) {
                 if (nodes.size() != values.size()) throw DomainError("nodes and values differ in length");
                 return SampleSet{std::move(nodes), std::move(values)};
             }),
             py::arg("nodes"), py::arg("values"))
        .def_readonly("nodes", &SampleSet::nodes)
        .def_readonly("values", &SampleSet::values);
    m.def("sample", &sample, py::arg("f"), py::arg("count"));
    m.def("sampling_reconstruct", &sampling_reconstruct, py::arg("samples"), py::arg("kernel"), py::arg("t"));

    m.def("suite_names", &suite_names);
    m.def(
        "run_suite",
        [](const std::string& name, int quad_order, int truncation) {
            const SuiteReport rep = run_suite(name, VerifyOptions{quad_order, truncation});
            py::list checks;
            for (const auto& c : rep.checks) {
                py::dict d;
                d["name"] = c.name;
                d["residual"] = c.residual;
                d["tolerance"] = c.tolerance;
                d["pass"] = c.pass;
                d["note"] = c.note;
                checks.append(d);
            }
            py::dict out;
            out["suite"] = rep.suite;
            out["ok"] = rep.ok();
            out["checks"] = checks;
            out["notes"] = rep.notes;
            return out;
        },
        py::arg("name"), py::arg("quad_order") = 200, py::arg("truncation") = 40);

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
