#include "qrk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "qrk/error.hpp"
#include "qrk/genrec.hpp"
#include "qrk/rkhs.hpp"
#include "qrk/specfun.hpp"

namespace qrk {

namespace {

constexpr double kPi = std::numbers::pi;

class Max {
public:
    void operator()(double r) { v_ = std::isfinite(r) ? std::max(v_, r) : INFINITY; }
    double value() const { return v_; }

private:
    double v_ = 0;
};

void add(SuiteReport& rep, std::string name, double residual, double tol, std::string note = {}) {
    rep.checks.push_back({std::move(name), residual, tol, residual < tol, std::move(note)});
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
    return v;
}

double scaled(double r, std::initializer_list<double> terms) {
    double m = 1;
    for (double t : terms) m = std::max(m, std::fabs(t));
    return r / m;
}

void suite_geg(SuiteReport& rep, const VerifyOptions&) {
    for (double nu : {0.5, 0.75, 1.25}) {
        Max worst;
        for (double x : linspace(-0.9, 0.9, 5))
            for (double t : linspace(0.5, 8, 5)) {
                cplx s = 0, ik = 1;
                for (int k = 0; k < 40; ++k) {
                    s += ik * (nu + k) * bessel_j(nu + k, t) * gegenbauer(k, nu, x);
                    ik *= cplx(0, 1);
                }
                s *= gamma_real(nu) * std::pow(t / 2, -nu);
                worst(std::abs(std::polar(1.0, x * t) - s));
            }
        add(rep, "plane-wave Gegenbauer expansion nu=" + fmt(nu), worst.value(), 1e-9);
    }
}

cplx q_geg_rhs(double x, double t, double nu, QBase q, int K) {
    const double qv = q.value();
    cplx s = 0, ik = 1;
    for (int k = 0; k < K; ++k) {
        s += ik * std::pow(qv, k * k / 4.0) * (1 - std::pow(qv, k + nu)) / (1 - std::pow(qv, nu)) *
             q_bessel2(nu + k, 2 * t, q) * q_ultraspherical(k, nu, x, q);
        ik *= cplx(0, 1);
    }
    return std::pow(t, -nu) * qpochhammer_inf(qv, q) /
           (qpochhammer_inf(-qv * t * t, QBase(qv * qv)) * qpochhammer_inf(std::pow(qv, nu + 1), q)) * s;
}

void suite_qgeg(SuiteReport& rep, const VerifyOptions&) {
    const QBase q(0.5);
    add(rep, "q-Gegenbauer at (x,t)=(0.3,0.8)",
        std::abs(q_exponential_curly(0.3, cplx(0, 0.8), q) - q_geg_rhs(0.3, 0.8, 0.5, q, 30)), 1e-9);
    Max worst;
    for (double x : linspace(-0.9, 0.9, 5))
        for (double t : linspace(0.3, 1.5, 5))
            worst(std::abs(q_exponential_curly(x, cplx(0, t), q) - q_geg_rhs(x, t, 0.5, q, 30)));
    add(rep, "q-Gegenbauer 5x5 grid nu=0.5 q=0.5 K=30", worst.value(), 1e-8);
}

void suite_besslom(SuiteReport& rep, const VerifyOptions&) {
    Max worst;
    for (int k = 0; k <= 10; ++k)
        for (double nu : {0.6, 1.0, 1.7})
            for (double x : {1.5, 3.2, 7.9}) {
                double a = bessel_j(nu + k, x);
                double b = lommel(k, nu, 1 / x) * bessel_j(nu, x);
                double c = lommel(k - 1, nu + 1, 1 / x) * bessel_j(nu - 1, x);
                worst(scaled(std::fabs(a - b + c), {b, c}));
            }
    add(rep, "Lommel identity k<=10", worst.value(), 1e-11);
}

void suite_int(SuiteReport& rep, const VerifyOptions&) {
    Max worst;
    for (double nu : {0.6, 1.0, 1.7})
        for (double j : BesselZeroTable::compute(nu, 6).zeros)
            for (int k = 0; k <= 8; ++k) {
                double h = lommel(k - 1, nu + 1, 1 / j);
                worst(scaled(std::fabs(h + bessel_j(nu + k, j) / bessel_j(nu - 1, j)), {h}));
            }
    add(rep, "interpolation at Bessel zeros k<=8 n<=6", worst.value(), 1e-10);
    const auto s = make_classical_system(0.75, 40, 6);
    Max sys;
    for (std::size_t n = 0; n < s.nodes.size(); ++n)
        for (int k = 1; k <= 8; ++k) {
            double lhs = s.J(k, s.nodes[n]);
            sys(scaled(std::fabs(lhs - s.lambdas[n] * s.r(k, 1 / s.nodes[n])), {lhs}));
        }
    add(rep, "J_k(x_n) = lambda_n r_k(1/x_n), classical", sys.value(), 1e-9);
}

void suite_qbesslom(SuiteReport& rep, const VerifyOptions&) {
    Max worst;
    for (double qv : {0.3, 0.5, 0.7}) {
        const QBase q(qv);
        for (int n = 0; n <= 8; ++n)
            for (double x : {0.9, 2.3, 5.0}) {
                double a = std::pow(qv, n * 0.75 + n * (n - 1) / 2.0) * q_bessel2(0.75 + n, x, q);
                double b = q_lommel(n, 0.75, 1 / x, q) * q_bessel2(0.75, x, q);
                double c = q_lommel(n - 1, 1.75, 1 / x, q) * q_bessel2(-0.25, x, q);
                worst(scaled(std::fabs(a - b + c), {b, c}));
            }
    }
    add(rep, "q-Lommel identity n<=8 nu=0.75", worst.value(), 1e-10);
}

void suite_qint(SuiteReport& rep, const VerifyOptions&) {
    const double nu = 0.75, qv = 0.5;
    const QBase q(qv);
    Max worst;
    for (double j : QBesselZeroTable::compute(nu, q, 3).zeros)
        for (int k = 0; k <= 5; ++k) {
            double h = q_lommel(k - 1, nu + 1, 1 / j, q);
            double r = std::pow(qv, k * nu + k * (k - 1) / 2.0) * q_bessel2(nu + k, j, q) / q_bessel2(nu - 1, j, q);
            worst(scaled(std::fabs(h + r), {h}));
        }
    add(rep, "q-interpolation at 3 zeros k<=5", worst.value(), 1e-8);
    const auto s = make_q_system(nu, q, 40, 3);
    Max sys;
    for (std::size_t n = 0; n < s.nodes.size(); ++n)
        for (int k = 1; k <= 5; ++k) {
            double lhs = s.J(k, s.nodes[n]);
            sys(scaled(std::fabs(lhs - s.lambdas[n] * s.r(k, 1 / s.nodes[n])), {lhs}));
        }
    add(rep, "J_k(t_n) = lambda_n r_k(1/t_n), q-system", sys.value(), 1e-8);
}

void suite_sinc(SuiteReport& rep, const VerifyOptions& opt) {
    const QuadRule rule = gauss_legendre(opt.quad_order);
    const KernelEvaluator K(make_classical_system(0.5, opt.truncation, 1));
    const double c = sinc_display_constant();
    Max worst;
    for (double t : linspace(0.5, 10, 5))
        for (double s : linspace(0.5, 10, 5))
            worst(std::fabs(reproducing_kernel_sinc(t, s) - c * reproducing_kernel(K, t, s, rule).real()));
    add(rep, "sinc kernel vs quadrature 5x5 on [0.5,10]^2", worst.value(), 1e-8);
    const std::vector<double> ts{0.7, 2.0, 5.5};
    const double fit = fit_display_constant(K, ts, rule);
    add(rep, "fitted sinc display constant vs pi^2/4", std::fabs(fit - c) / c, 1e-10);
    rep.notes.push_back("sinc display constant " + fmt(c) + " (fitted " + fmt(fit) + ")");
    const double cnu = classical_display_constant(0.5);
    rep.notes.push_back("c_nu at nu=1/2: " + fmt(cnu));
    const double x = 0.3, t = 2.0;
    add(rep, "sqrt(pi/(2t)) c_nu K(x,t) = e^{ixt} at (0.3,2.0)",
        std::abs(std::sqrt(kPi / (2 * t)) * cnu * K(x, t).value - std::polar(1.0, x * t)), 1e-9);
}

void suite_qrp(SuiteReport& rep, const VerifyOptions& opt) {
    const QuadRule rule = gauss_legendre(opt.quad_order);
    const double qv = 0.5;
    const QBase q(qv);
    const KernelEvaluator K(make_q_system(0.5, q, opt.truncation, 1));
    Max worst;
    for (double t : {0.2, 0.6, 1.0})
        for (double s : {0.2, 0.6, 1.0}) {
            double ref = reproducing_kernel(K, t, s, rule).real();
            worst(std::fabs(reproducing_kernel_q_closed(t, s, q) - ref) / std::fabs(ref));
        }
    add(rep, "closed q kernel vs quadrature 3x3 on [0.2,1]^2", worst.value(), 1e-6);
    Max qexp;
    for (double x : linspace(-0.9, 0.9, 5))
        for (double t : {0.2, 0.7, 1.3}) {
            cplx pre = qpochhammer_inf(-qv * t * t, QBase(qv * qv)) * qpochhammer_inf(std::pow(qv, 1.5), q) /
                       qpochhammer_inf(qv, q) * std::sqrt(t);
            cplx ref = pre * q_exponential_curly(x, cplx(0, t), q);
            qexp(std::abs(K(x, t).value - ref) / std::max(1.0, std::abs(ref)));
        }
    add(rep, "q kernel vs curly exponential at nu=1/2", qexp.value(), 1e-8);
}

void suite_isf(SuiteReport& rep, const VerifyOptions& opt) {
    const QuadRule rule = gauss_legendre(opt.quad_order);
    struct Case {
        cplx a, b;
        double g, q;
    };
    for (const Case& c : {Case{{0, 0.3}, {0, -0.2}, std::sqrt(0.5), 0.5}, Case{{0.4, 0.1}, {-0.2, 0.3}, 0.45, 0.3},
                          Case{{0, 0.6}, {0, 0.5}, 0.7, 0.7}}) {
        const auto r = ismail_stanton(c.a, c.b, c.g, QBase(c.q), rule);
        add(rep, "Ismail-Stanton q=" + fmt(c.q), std::abs(r.lhs - r.rhs) / std::abs(r.rhs), 1e-6);
    }
}

SystemSpec gram_system(int which, int truncation, int nodes) {
    return which == 0 ? make_classical_system(0.75, truncation, nodes) : make_q_system(0.5, QBase(0.5), truncation, nodes);
}

const char* sys_name(int which) { return which == 0 ? "classical" : "q"; }

void suite_gram(SuiteReport& rep, const VerifyOptions& opt) {
    const QuadRule rule = gauss_legendre(opt.quad_order);
    for (int which = 0; which < 2; ++which) {
        const auto s = gram_system(which, opt.truncation, which == 0 ? 6 : 4);
        const KernelEvaluator K(s);
        const int N = static_cast<int>(s.nodes.size());
        std::vector<Function> sec;
        for (double x : s.nodes) sec.push_back(K.section(x));
        std::vector<std::vector<cplx>> G(N, std::vector<cplx>(N));
        for (int n = 0; n < N; ++n)
            for (int m = 0; m < N; ++m) G[n][m] = system_inner(sec[n], sec[m], s, rule);
        Max off;
        std::string diag;
        for (int n = 0; n < N; ++n) {
            diag += (n ? " " : "") + fmt(G[n][n].real());
            for (int m = 0; m < N; ++m)
                if (n != m) off(std::abs(G[n][m]) / std::sqrt(std::abs(G[n][n] * G[m][m])));
        }
        add(rep, std::string("Gram of K(.,x_n) off-diagonal, ") + sys_name(which), off.value(), 1e-8);
        rep.notes.push_back(std::string(sys_name(which)) + " Gram diagonal: " + diag);
        Max pg;
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k)
                pg(std::abs(system_inner([&](double x) { return cplx(s.p(j, x)); },
                                         [&](double x) { return cplx(s.p(k, x)); }, s, rule) -
                            double(j == k)));
        add(rep, std::string("p_k Gram = identity, ") + sys_name(which), pg.value(), 1e-10);
    }
}

cplx poly_u(double x) { return cplx(1 - 0.5 * x + 0.25 * x * x * x, 0.3 * x * x); }
cplx poly_v(double x) { return cplx(0.2 + x * x, -0.7 * x + 0.1 * x * x * x * x); }

void suite_parseval(SuiteReport& rep, const VerifyOptions& opt) {
    const QuadRule rule = gauss_legendre(opt.quad_order);
    for (int which = 0; which < 2; ++which) {
        const auto s = gram_system(which, opt.truncation, 1);
        const KernelEvaluator K(s);
        const auto fu = transform(poly_u, K, rule), fv = transform(poly_v, K, rule);
        const std::string tag = std::string(", ") + sys_name(which);
        add(rep, "Parseval" + tag, std::fabs(image_inner(fu, fu).real() - system_inner(poly_u, poly_u, s, rule).real()), 1e-8);
        add(rep, "isometry <Fu,Fv> = <u,v>" + tag, std::abs(image_inner(fu, fv) - system_inner(poly_u, poly_v, s, rule)), 1e-8);
        Max repro;
        const auto f = transform(sampling_fixture, K, rule);
        for (double t : {-1.3, 0.4, 1.0, 2.2, 5.0}) {
            const auto sec = K.section(t);
            const auto g = transform([&](double x) { return std::conj(sec(x)); }, K, rule);
            repro(std::abs(image_inner(f, g) - f(t)) / std::max(1.0, std::abs(f(t))));
        }
        add(rep, "reproducing property <f,k(.,t)> = f(t)" + tag, repro.value(), 1e-7);
        Max basis;
        for (int n : {0, 1, 4, 7}) {
            const auto fp = transform([&](double x) { return cplx(s.p(n, x)); }, K, rule);
            for (double t : {-2.0, 0.3, 1.1, 4.5})
                basis(std::abs(fp(t) - s.u(n) * s.J(n, t)) / std::max(1.0, std::fabs(s.J(n, t))));
        }
        add(rep, "F p_n = u_n J_n" + tag, basis.value(), 1e-9);
    }
}

void suite_sampling(SuiteReport& rep, const VerifyOptions& opt) {
    const QuadRule rule = gauss_legendre(opt.quad_order);
    const auto s = make_classical_system(0.5, opt.truncation, 120);
    const KernelEvaluator K(s);
    const auto f = transform(sampling_fixture, K, rule);
    const auto set = sample(f, 30);
    Max node;
    for (std::size_t n = 0; n < set.nodes.size(); ++n)
        if (set.nodes[n] != 0) node(std::abs(sampling_reconstruct(set, K, set.nodes[n]) - set.values[n]));
    add(rep, "node reproduction, 30 nodes", node.value(), 1e-10);

    std::vector<double> err;
    std::string table = "nodes/max error:";
    for (int count : {30, 60, 120}) {
        const auto sc = sample(f, count);
        Max worst;
        for (int i = 0; i <= 200; ++i) {
            const double t = -40 + 0.4 * i;
            worst(std::abs(sampling_reconstruct(sc, K, t) - f(t)));
        }
        err.push_back(worst.value());
        table += " " + std::to_string(count) + "/" + fmt(worst.value());
    }
    rep.notes.push_back(table);
    add(rep, "max error on t in [-40,40], 30 nodes", err[0], 1e-4);
    const bool decreasing = err[1] < err[0] && err[2] < err[1];
    rep.checks.push_back({"error decreases 30 -> 60 -> 120", decreasing ? 0.0 : 1.0, 0.5, decreasing,
                          "ratios " + fmt(err[0] / err[1]) + ", " + fmt(err[1] / err[2])});

    // nu = 1/2 nodes are n pi; the 2 pi n subset misses the odd sections
    SampleSet even{{0}, {set.values[0]}};
    for (std::size_t n = 1; n < set.nodes.size(); ++n)
        if (std::lround(std::fabs(set.nodes[n]) / kPi) % 2 == 0) {
            even.nodes.push_back(set.nodes[n]);
            even.values.push_back(set.values[n]);
        }
    Max nodes_pi;
    for (int n = 0; n < 30; ++n) nodes_pi(std::fabs(s.nodes[n] - (n + 1) * kPi) / ((n + 1) * kPi));
    add(rep, "j_{1/2,n} = n pi", nodes_pi.value(), 1e-14);
    rep.notes.push_back("2 pi n nodes only: error at t=pi " + fmt(std::abs(sampling_reconstruct(even, K, kPi) - f(kPi))));
}

void suite_neumann(SuiteReport& rep, const VerifyOptions& opt) {
    const QuadRule rule = gauss_legendre(opt.quad_order);
    for (int which = 0; which < 2; ++which) {
        const auto s = gram_system(which, opt.truncation, 1);
        const KernelEvaluator K(s);
        const auto e = neumann_coefficients(sampling_fixture, s, rule, 20);
        const auto f = transform(sampling_fixture, K, rule);
        Max worst, tail;
        for (int i = 0; i < 10; ++i) {
            const double t = -3 + 0.77 * i;
            worst(std::abs(e.evaluate(t) - f(t)));
        }
        for (int n = 7; n < 20; ++n) tail(std::abs(e.coefficients[n]));
        const std::string tag = std::string(", ") + sys_name(which);
        add(rep, "Neumann series vs transform at 10 points" + tag, worst.value(), 1e-7);
        add(rep, "|a_n| beyond degree 6" + tag, tail.value(), 1e-10);
    }
}

void suite_hayman(SuiteReport& rep, const VerifyOptions&) {
    for (double nu : {0.5, 1.0})
        for (double qv : {0.4, 0.6}) {
            const double j = q_bessel_zero(nu, 8, QBase(qv));
            const double ratio = j * j * std::pow(qv, 2 * 8 + nu - 1) / 4;
            add(rep, "Hayman ratio k=8 nu=" + fmt(nu) + " q=" + fmt(qv), std::fabs(ratio - 1), 0.05, "ratio " + fmt(ratio));
        }
}

void suite_genrec(SuiteReport& rep, const VerifyOptions&) {
    Max lom;
    for (double nu : {0.25, 0.75, 1.7}) {
        const auto spec = lommel_spec(nu);
        for (int n = 0; n <= 12; ++n)
            for (int i = 0; i < 10; ++i) {
                const double x = -0.9 + 0.2 * i;
                const double ref = lommel(n, nu, x);
                lom(std::fabs(recurrence_poly(spec, n, x) - ref) / std::max(1.0, std::fabs(ref)));
            }
    }
    add(rep, "Lommel coefficients reproduce lommel", lom.value(), 1e-13);

    const double nu = 0.75;
    const auto zc = BesselZeroTable::compute(nu, 6).zeros;
    Max c;
    for (const auto& row : interpolation_residual(lommel_spec(nu), [](double x, double o) { return bessel_j(o, x); }, zc, 8))
        for (double r : row) c(r);
    add(rep, "interpolation residual, Lommel/Bessel", c.value(), 1e-9);

    const QBase q(0.5);
    const auto zq = QBesselZeroTable::compute(nu, q, 3).zeros;
    Max qr;
    for (const auto& row : interpolation_residual(q_lommel_spec(nu, q), [q](double x, double o) { return q_bessel2(o, x, q); }, zq, 5))
        for (double r : row) qr(r);
    add(rep, "interpolation residual, q-Lommel/q-Bessel", qr.value(), 1e-8);
}

void suite_sections(SuiteReport& rep, const VerifyOptions& opt) {
    const QuadRule rule = gauss_legendre(opt.quad_order);
    for (int which = 0; which < 2; ++which) {
        const auto s = which == 0 ? make_classical_system(0.5, opt.truncation, 5) : make_q_system(0.5, QBase(0.5), opt.truncation, 4);
        const KernelEvaluator K(s);
        std::vector<double> t;
        for (double x : s.nodes) t.insert(t.end(), {x, -x});
        std::vector<Transform> g;
        for (double x : t) {
            const auto sec = K.section(x);
            const double d = reproducing_kernel_closed(s, x, x);
            g.push_back(transform([&](double y) { return std::conj(sec(y)) / d; }, K, rule));
        }
        Max off;
        for (std::size_t n = 0; n < t.size(); ++n)
            for (std::size_t m = 0; m < t.size(); ++m)
                if (n != m) off(std::abs(image_inner(g[n], g[m])));
        add(rep, std::string("normalized sections off-diagonal, ") + (which == 0 ? "classical nu=1/2" : "q nu=1/2 q=0.5"),
            off.value(), 1e-7);
    }
}

using SuiteFn = void (*)(SuiteReport&, const VerifyOptions&);

const std::map<std::string, SuiteFn>& registry() {
    static const std::map<std::string, SuiteFn> r{
        {"geg", suite_geg},         {"qgeg", suite_qgeg},         {"besslom", suite_besslom},
        {"int", suite_int},         {"qbesslom", suite_qbesslom}, {"qint", suite_qint},
        {"sinc", suite_sinc},       {"qrp", suite_qrp},           {"isf", suite_isf},
        {"gram", suite_gram},       {"parseval", suite_parseval}, {"sampling", suite_sampling},
        {"neumann", suite_neumann}, {"hayman", suite_hayman},     {"genrec", suite_genrec},
        {"sections", suite_sections}};
    return r;
}

}  // namespace

bool SuiteReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"geg",  "qgeg", "besslom", "int",      "qbesslom", "qint",
                                                "sinc", "qrp",  "isf",     "gram",     "parseval", "sampling",
                                                "neumann", "hayman", "genrec", "sections"};
    return names;
}

bool is_suite(const std::string& name) { return registry().count(name) > 0; }

SuiteReport run_suite(const std::string& name, const VerifyOptions& opt) {
    auto it = registry().find(name);
    if (it == registry().end()) throw DomainError("unknown verify suite: " + name);
    SuiteReport rep;
    rep.suite = name;
    try {
        it->second(rep, opt);
    } catch (const Error& e) {
        rep.checks.push_back({"suite aborted", INFINITY, 0, false, e.what()});
    }
    return rep;
}

cplx sampling_fixture(double x) {
    return (1 - x * x) * cplx(0.3 + 0.5 * x - 0.2 * x * x + 0.7 * x * x * x, 0.1 - 0.4 * x * x * x * x);
}

}  // namespace qrk
