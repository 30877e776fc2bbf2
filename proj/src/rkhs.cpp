#include "qrk/rkhs.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qrk/error.hpp"
#include "qrk/specfun.hpp"
#include "qrk/summation.hpp"

namespace qrk {

namespace {

constexpr double kPi = std::numbers::pi;

double parity(int k, double t) { return (t < 0 && (k & 1)) ? -1.0 : 1.0; }

std::function<void(double, std::span<double>)> J_filler(const SystemSpec& s) {
    return [fam = s.family, w = s.weight, nu = s.nu](double t, std::span<double> out) {
        double a = std::fabs(t);
        for (std::size_t k = 0; k < out.size(); ++k) {
            int kk = static_cast<int>(k);
            out[k] = parity(kk, t) * w(kk) * fam(a, nu + kk);
        }
    };
}

double q_weight_k(double nu, double q, int k) {
    double qk = std::pow(q, k + nu), q0 = std::pow(q, nu);
    return std::sqrt((1 - qk) / (1 - q0)) * std::pow(q, k * nu / 2 + k * (k - 1) / 4.0);
}

long double ld(const Scaled& v) { return std::ldexp(static_cast<long double>(v.m), static_cast<int>(v.e)); }

// A_mu(t) with the parity extension of J_{nu+k}, k = mu - nu.
long double signed_value(long double v, int k, double t) { return (t < 0 && (k & 1)) ? -v : v; }

struct Pair {
    long double lower, upper;  // A_{nu-1}, A_nu
};

Pair classical_pair(double nu, double t) {
    double a = std::fabs(t);
    return {signed_value(bessel_j(nu - 1, a), -1, t), bessel_j(nu, a)};
}

Pair q_pair(double nu, double q, double X) {
    double a = std::fabs(X);
    QBase b(q);
    return {signed_value(ld(q_bessel2_scaled(nu - 1, a, b)), -1, X), ld(q_bessel2_scaled(nu, a, b))};
}

long double classical_diagonal(double nu, double t) {
    long double a = std::fabs(t);
    long double jm = bessel_j(nu - 1, a), j = bessel_j(nu, a);
    return a * a * (jm * jm + j * j) - (2 * nu - 1) * a * j * jm;
}

long double q_diagonal(double nu, double q, double X) {
    double a = std::fabs(X);
    QBase b(q);
    long double jm = ld(q_bessel2_scaled(nu - 1, a, b)), j = ld(q_bessel2_scaled(nu, a, b));
    long double djm = ld(q_bessel2_derivative_scaled(nu - 1, a, b)), dj = ld(q_bessel2_derivative_scaled(nu, a, b));
    return (long double)a * a * (jm * dj - j * djm) / (2 * (1 - std::pow((long double)q, (long double)nu)));
}

bool near(double t, double s) { return std::fabs(t - s) <= 1e-9 * std::max(1.0, std::fabs(t)); }

long double closed_ld(const SystemSpec& spec, double t, double s) {
    if (t == 0 || s == 0) return 0;
    switch (spec.kind) {
    case SystemKind::classical: {
        if (near(t, s)) return classical_diagonal(spec.nu, t);
        Pair a = classical_pair(spec.nu, t), b = classical_pair(spec.nu, s);
        return (long double)t * s * (a.lower * b.upper - a.upper * b.lower) / ((long double)s - t);
    }
    case SystemKind::q: {
        double X = 2 * t, Y = 2 * s;
        if (near(t, s)) return q_diagonal(spec.nu, spec.q, X);
        Pair a = q_pair(spec.nu, spec.q, X), b = q_pair(spec.nu, spec.q, Y);
        long double d = 2 * (1 - std::pow((long double)spec.q, (long double)spec.nu));
        return (long double)X * Y * (a.lower * b.upper - a.upper * b.lower) / (d * ((long double)Y - X));
    }
    default:
        throw DomainError("closed-form kernel needs a classical or q system");
    }
}

}  // namespace

cplx SystemSpec::u(int k) const {
    static const cplx phase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return phase[k & 3];
}

double SystemSpec::p(int k, double x) const {
    std::vector<double> v(k + 1);
    p_all(x, v);
    return v[k];
}

double SystemSpec::J(int k, double t) const { return parity(k, t) * weight(k) * family(std::fabs(t), nu + k); }

SystemSpec make_classical_system(double nu, int truncation, int node_count) {
    if (!(nu > 0)) throw DomainError("classical system needs nu > 0");
    if (truncation < 1) throw DomainError("truncation must be >= 1");
    SystemSpec s;
    s.kind = SystemKind::classical;
    s.nu = nu;
    s.truncation = truncation;
    s.p_all = [nu](double x, std::span<double> out) { orthonormal_gegenbauer_all(nu, x, out); };
    s.family = [](double t, double order) { return bessel_j(order, t); };
    s.weight = [nu](int k) { return std::sqrt(2 * (nu + k)); };
    s.J_all = J_filler(s);
    s.r = [nu](int k, double y) { return k == 0 ? 0.0 : std::sqrt(2 * (nu + k)) * lommel(k - 1, nu + 1, y); };
    s.measure = [nu](const QuadRule& rule) { return classical_measure(nu, rule.order); };
    s.nodes = BesselZeroTable::compute(nu, node_count).zeros;
    for (double x : s.nodes) s.lambdas.push_back(-bessel_j(nu - 1, x));
    s.origin_scale = std::sqrt(2 * nu) / (std::pow(2.0, nu) * gamma_real(nu + 1));
    return s;
}

SystemSpec make_q_system(double nu, QBase q, int truncation, int node_count) {
    if (!(nu > 0)) throw DomainError("q system needs nu > 0");
    if (truncation < 1) throw DomainError("truncation must be >= 1");
    double qv = q.value();
    SystemSpec s;
    s.kind = SystemKind::q;
    s.nu = nu;
    s.q = qv;
    s.truncation = truncation;
    s.p_all = [nu, q](double x, std::span<double> out) { q_orthonormal_all(nu, x, q, out); };
    s.family = [q](double t, double order) { return q_bessel2(order, 2 * t, q); };
    s.weight = [nu, qv](int k) { return q_weight_k(nu, qv, k); };
    s.J_all = J_filler(s);
    s.r = [nu, q, qv](int k, double y) {
        if (k == 0) return 0.0;
        double c = std::sqrt((1 - std::pow(qv, k + nu)) / (1 - std::pow(qv, nu)));
        return c * std::pow(qv, -k * nu / 2 - k * (k - 1) / 4.0) * q_lommel(k - 1, nu + 1, y / 2, q);
    };
    s.measure = [nu, q](const QuadRule& rule) { return q_measure(nu, q, rule); };
    for (double j : QBesselZeroTable::compute(nu, q, node_count).zeros) {
        s.nodes.push_back(j / 2);
        s.lambdas.push_back(-q_bessel2(nu - 1, j, q));
    }
    s.origin_scale = qpochhammer_inf(qv, q) / qpochhammer_inf(std::pow(qv, nu + 1), q);
    return s;
}

SystemSpec make_recurrence_system(const RecurrenceSpec& spec, const OrderFamily& J,
                                  std::function<void(double, std::span<double>)> p_all,
                                  std::function<MeasureRule(const QuadRule&)> measure,
                                  std::vector<double> nodes, double origin_scale, int truncation) {
    if (truncation < 1) throw DomainError("truncation must be >= 1");
    SystemSpec s;
    s.kind = SystemKind::recurrence;
    s.nu = spec.nu;
    s.truncation = truncation;
    s.p_all = std::move(p_all);
    s.family = J;
    s.weight = [spec](int k) { return interpolator_weight(spec, k); };
    s.J_all = J_filler(s);
    s.r = [spec](int k, double y) {
        if (k == 0) return 0.0;
        double c = 1;
        for (int j = 0; j < k; ++j) c *= spec.C(spec.nu + j);
        return interpolator_weight(spec, k) / c * recurrence_poly(spec.shifted(1), k - 1, y);
    };
    s.measure = std::move(measure);
    s.nodes = std::move(nodes);
    for (double x : s.nodes) s.lambdas.push_back(-J(x, spec.nu - 1));
    s.origin_scale = origin_scale * interpolator_weight(spec, 0);
    return s;
}

KernelEvaluator::KernelEvaluator(SystemSpec spec) : KernelEvaluator(spec, spec.truncation) {}

KernelEvaluator::KernelEvaluator(SystemSpec spec, int truncation) : spec_(std::move(spec)), truncation_(truncation) {
    if (truncation_ < 1) throw DomainError("truncation must be >= 1");
}

std::vector<cplx> KernelEvaluator::coefficients(double t) const {
    std::vector<double> J(truncation_);
    spec_.J_all(t, J);
    std::vector<cplx> c(truncation_);
    for (int k = 0; k < truncation_; ++k) c[k] = spec_.u(k) * J[k];
    return c;
}

cplx KernelEvaluator::synthesize(std::span<const cplx> c, double x) const {
    std::vector<double> p(c.size());
    spec_.p_all(x, p);
    KahanSum<cplx> acc;
    for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * p[k];
    return acc.value();
}

KernelValue KernelEvaluator::operator()(double x, double t) const {
    auto c = coefficients(t);
    std::vector<double> p(truncation_);
    spec_.p_all(x, p);
    KahanSum<cplx> acc;
    for (int k = 0; k < truncation_; ++k) acc += c[k] * p[k];
    KernelValue v;
    v.value = acc.value();
    v.tail_estimate = std::abs(c.back() * p.back());
    v.tail_warning = v.tail_estimate > 1e-10 * std::abs(v.value);
    return v;
}

Function KernelEvaluator::section(double t) const {
    return [p_all = spec_.p_all, c = coefficients(t)](double x) {
        std::vector<double> p(c.size());
        p_all(x, p);
        KahanSum<cplx> acc;
        for (std::size_t k = 0; k < c.size(); ++k) acc += c[k] * p[k];
        return acc.value();
    };
}

KernelValue kernel_eval(const KernelEvaluator& kernel, double x, double t) { return kernel(x, t); }

Transform::Transform(const KernelEvaluator& kernel, std::vector<cplx> moments)
    : kernel_(kernel), moments_(std::move(moments)) {}

cplx Transform::operator()(double t) const {
    auto c = kernel_.coefficients(t);
    KahanSum<cplx> acc;
    for (std::size_t k = 0; k < moments_.size(); ++k) acc += c[k] * moments_[k];
    return acc.value();
}

cplx Transform::origin_value() const { return kernel_.spec().u(0) * kernel_.spec().origin_scale * moments_[0]; }

Transform transform(const Function& u, const KernelEvaluator& kernel, const QuadRule& rule) {
    const SystemSpec& spec = kernel.spec();
    MeasureRule m = spec.measure_rule(rule);
    int K = kernel.truncation();
    std::vector<KahanSum<cplx>> acc(K);
    std::vector<double> p(K);
    for (std::size_t i = 0; i < m.nodes.size(); ++i) {
        double x = m.nodes[i];
        cplx v = u(x);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NonFiniteError("transform integrand", x);
        spec.p_all(x, p);
        for (int k = 0; k < K; ++k) acc[k] += m.weights[i] * v * p[k];
    }
    std::vector<cplx> moments(K);
    for (int k = 0; k < K; ++k) moments[k] = acc[k].value();
    return Transform(kernel, std::move(moments));
}

cplx image_inner(const Transform& f, const Transform& g) {
    const auto& a = f.moments();
    const auto& b = g.moments();
    KahanSum<cplx> acc;
    for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) acc += a[k] * std::conj(b[k]);
    return acc.value();
}

cplx system_inner(const Function& u, const Function& v, const SystemSpec& spec, const QuadRule& rule) {
    return inner_product(u, v, spec.measure_rule(rule));
}

cplx reproducing_kernel(const KernelEvaluator& kernel, double t, double s, const QuadRule& rule) {
    MeasureRule m = kernel.spec().measure_rule(rule);
    auto ct = kernel.coefficients(t), cs = kernel.coefficients(s);
    KahanSum<cplx> acc;
    for (std::size_t i = 0; i < m.nodes.size(); ++i)
        acc += m.weights[i] * kernel.synthesize(ct, m.nodes[i]) * std::conj(kernel.synthesize(cs, m.nodes[i]));
    return acc.value();
}

double reproducing_kernel_series(const KernelEvaluator& kernel, double t, double s) {
    int K = kernel.truncation();
    std::vector<double> a(K), b(K);
    kernel.spec().J_all(t, a);
    kernel.spec().J_all(s, b);
    KahanSum<double> acc;
    for (int k = 0; k < K; ++k) acc += a[k] * b[k];
    return acc.value();
}

double reproducing_kernel_closed(const SystemSpec& spec, double t, double s) {
    return static_cast<double>(closed_ld(spec, t, s));
}

double sampling_basis(const SystemSpec& spec, double s, double t) {
    if (t == s) return 1;
    long double d = closed_ld(spec, s, s);
    if (d == 0) throw DomainError("sampling basis at a node with vanishing kernel diagonal");
    return static_cast<double>(closed_ld(spec, t, s) / d);
}

double reproducing_kernel_sinc(double t, double s) {
    if (!(t > 0 && s > 0)) throw DomainError("sinc kernel needs t, s > 0");
    double d = t - s;
    double sinc = d == 0 ? 1.0 : std::sin(d) / d;
    return kPi * std::sqrt(t * s) / 2 * sinc;
}

double sinc_display_constant() { return kPi * kPi / 4; }

double classical_display_constant(double nu) {
    return std::sqrt(2 * std::sqrt(kPi) * gamma_real(nu + 0.5) / gamma_real(nu));
}

double fit_display_constant(const KernelEvaluator& kernel, std::span<const double> ts, const QuadRule& rule) {
    KahanSum<double> num, den;
    for (double t : ts)
        for (double s : ts) {
            double k = reproducing_kernel(kernel, t, s, rule).real();
            num += reproducing_kernel_sinc(t, s) * k;
            den += k * k;
        }
    return num.value() / den.value();
}

double reproducing_kernel_q_closed(double t, double s, QBase q) {
    if (!(t > 0 && s > 0)) throw DomainError("closed q kernel needs t, s > 0");
    double qv = q.value(), h = std::sqrt(qv);
    double ts = t * s;
    double pre = qpochhammer_inf(qv * h, q) / qpochhammer_inf(qv, q);
    cplx upper[2] = {h * t / s, h * s / t};
    cplx lower[2] = {qv * h, -ts * h};
    cplx phi = basic_hypergeometric(upper, lower, q, -ts * qv);
    return pre * pre * qpochhammer_inf(-ts * h, q) * std::sqrt(ts) * phi.real();
}

IsmailStanton ismail_stanton(cplx alpha, cplx beta, cplx gamma, QBase q, const QuadRule& rule) {
    if (alpha == 0.0 || beta == 0.0) throw DomainError("ismail_stanton needs alpha, beta != 0");
    double qv = q.value(), h = std::sqrt(qv);
    KahanSum<cplx> acc;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        double th = kPi * (1 + rule.nodes[i]) / 2;
        double x = std::cos(th);
        cplx e2 = std::polar(1.0, 2 * th);
        cplx w = qpochhammer_inf(e2, q) * qpochhammer_inf(std::conj(e2), q) /
                 (qpochhammer_inf(gamma * e2, q) * qpochhammer_inf(gamma * std::conj(e2), q));
        cplx f = q_exponential_curly(x, alpha, q) * q_exponential_curly(x, beta, q) * w;
        if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) throw NonFiniteError("ismail_stanton integrand", th);
        acc += rule.weights[i] * kPi / 2 * f;
    }
    double q2 = qv * qv;
    cplx ab = alpha * beta;
    cplx num = 2 * kPi * qpochhammer_inf(gamma, q) * qpochhammer_inf(qv * gamma, q) * qpochhammer_inf(-ab * h, q);
    cplx den = qpochhammer_inf(cplx(qv), q) * qpochhammer_inf(gamma * gamma, q) *
               detail::pochhammer_inf(qv * alpha * alpha, q2) * detail::pochhammer_inf(qv * beta * beta, q2);
    cplx upper[2] = {-h * alpha / beta, -h * beta / alpha};
    cplx lower[2] = {qv * gamma, -ab * h};
    cplx phi = basic_hypergeometric(upper, lower, q, -ab * gamma * h);
    return {acc.value(), num / den * phi};
}

cplx Expansion::evaluate(double t) const {
    KahanSum<cplx> acc;
    for (std::size_t n = 0; n < coefficients.size(); ++n)
        if (coefficients[n] != 0.0) acc += coefficients[n] * element(static_cast<int>(n), t);
    return acc.value();
}

double Expansion::energy() const {
    KahanSum<double> acc;
    for (const auto& a : coefficients) acc += std::norm(a);
    return acc.value();
}

Expansion neumann_coefficients(const Function& u, const SystemSpec& system, const QuadRule& rule, int count) {
    if (count < 1) throw DomainError("neumann_coefficients needs count >= 1");
    KernelEvaluator kernel(system, count);
    Transform f = transform(u, kernel, rule);
    Expansion e;
    e.nu = system.nu;
    e.q = system.q;
    e.basis = system.kind == SystemKind::classical ? BasisKind::bessel
              : system.kind == SystemKind::q       ? BasisKind::q_bessel
                                                   : BasisKind::recurrence;
    e.coefficients.resize(count);
    for (int n = 0; n < count; ++n) e.coefficients[n] = system.u(n) * system.weight(n) * f.moments()[n];
    e.element = [fam = system.family, nu = system.nu](int n, double t) {
        return parity(n, t) * fam(std::fabs(t), nu + n);
    };
    return e;
}

std::vector<double> sampling_nodes(const SystemSpec& spec, int count) {
    if (count < 1) throw DomainError("sampling needs at least one node");
    std::vector<double> pos;
    if (count <= static_cast<int>(spec.nodes.size())) {
        pos.assign(spec.nodes.begin(), spec.nodes.begin() + count);
    } else if (spec.kind == SystemKind::classical) {
        pos = BesselZeroTable::compute(spec.nu, count).zeros;
    } else if (spec.kind == SystemKind::q) {
        for (double j : QBesselZeroTable::compute(spec.nu, QBase(spec.q), count).zeros) pos.push_back(j / 2);
    } else {
        throw DomainError("system has only " + std::to_string(spec.nodes.size()) + " nodes");
    }
    std::vector<double> out{0.0};
    for (double x : pos) {
        out.push_back(x);
        out.push_back(-x);
    }
    return out;
}

SampleSet sample(const Transform& f, int count) {
    SampleSet s;
    s.nodes = sampling_nodes(f.kernel().spec(), count);
    for (double t : s.nodes) s.values.push_back(t == 0 ? f.origin_value() : f(t));
    return s;
}

cplx sampling_reconstruct(const SampleSet& samples, const KernelEvaluator& kernel, double t) {
    if (samples.nodes.empty()) throw DomainError("empty sample set");
    if (samples.nodes.size() != samples.values.size()) throw DomainError("sample nodes and values differ in length");
    const SystemSpec& spec = kernel.spec();
    KahanSum<cplx> acc;
    for (std::size_t n = 0; n < samples.nodes.size(); ++n) {
        double s = samples.nodes[n];
        if (samples.values[n] == 0.0) continue;
        double b = s == 0 ? (t == 0 ? 0.0 : spec.J(0, t) / spec.origin_scale) : sampling_basis(spec, s, t);
        acc += samples.values[n] * b;
    }
    return acc.value();
}

}  // namespace qrk
