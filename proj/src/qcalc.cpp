#include "qrk/qcalc.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <numbers>
#include <string>

#include "qrk/error.hpp"
#include "qrk/summation.hpp"

namespace qrk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kProductCap = 200000;

void check_base(double base) {
    if (!(base > 0 && base < 1)) throw DomainError("q-series: base must lie in (0,1)");
}

}  // namespace

QBase::QBase(double q) : q_(q) {
    if (!(q > 0 && q <= 0.99)) throw DomainError("QBase: q must lie in (0, 0.99], got " + std::to_string(q));
}

namespace detail {

cplx pochhammer_inf(cplx a, double base) {
    check_base(base);
    cplx prod = 1.0;
    cplx f = a;
    for (int m = 0; m < kProductCap; ++m) {
        prod *= 1.0 - f;
        if (std::abs(f) < kSeriesTol) return prod;
        f *= base;
    }
    throw ConvergenceError("q-Pochhammer: infinite product did not settle");
}

cplx pochhammer(cplx a, double base, int n) {
    if (n < 0) throw DomainError("q-Pochhammer: negative length");
    cplx prod = 1.0;
    cplx f = a;
    for (int m = 0; m < n; ++m) {
        prod *= 1.0 - f;
        f *= base;
    }
    return prod;
}

cplx hypergeometric(std::span<const cplx> upper, std::span<const cplx> lower, double base, cplx z) {
    check_base(base);
    const int r = static_cast<int>(upper.size());
    const int s = static_cast<int>(lower.size());
    const int extra = 1 + s - r;
    KahanSum<cplx> sum;
    cplx term = 1.0;
    double qn = 1.0;  // base^n
    int growth = 0;
    for (int n = 0; n < kSeriesCap; ++n) {
        sum.add(term);
        cplx num = z;
        bool terminated = false;
        for (const cplx& a : upper) {
            const cplx f = 1.0 - a * qn;
            if (std::abs(f) < 1e-14) terminated = true;
            num *= f;
        }
        if (terminated) return sum.value();
        cplx den = 1.0 - base * qn;
        for (const cplx& b : lower) {
            const cplx f = 1.0 - b * qn;
            if (std::abs(f) < 1e-14)
                throw DomainError("basic_hypergeometric: lower parameter hits q^-m at n = " + std::to_string(n));
            den *= f;
        }
        if (extra != 0) num *= std::pow(-qn, extra);
        const cplx next = term * num / den;
        growth = std::abs(next) > std::abs(term) ? growth + 1 : 0;
        if (growth >= 50) throw ConvergenceError("basic_hypergeometric: terms grow, series diverges");
        term = next;
        qn *= base;
        if (std::abs(term) < kSeriesTol * std::abs(sum.value()) && growth == 0) {
            sum.add(term);
            return sum.value();
        }
        if (term == 0.0) return sum.value();
    }
    throw ConvergenceError("basic_hypergeometric: term cap reached before convergence");
}

}  // namespace detail

cplx qpochhammer(cplx a, QBase q, int n) { return detail::pochhammer(a, q, n); }
cplx qpochhammer_inf(cplx a, QBase q) { return detail::pochhammer_inf(a, q); }
double qpochhammer(double a, QBase q, int n) { return detail::pochhammer(a, q, n).real(); }
double qpochhammer_inf(double a, QBase q) { return detail::pochhammer_inf(a, q).real(); }

cplx basic_hypergeometric(std::span<const cplx> upper, std::span<const cplx> lower, QBase q, cplx z) {
    return detail::hypergeometric(upper, lower, q, z);
}

namespace {

// E_q through Heine's transformation of the 2phi1; converges for every t.
cplx curly_heine(cplx a, cplx b, cplx c, double h, cplx z, double q, cplx t) {
    // A_n = (c/b;h)_n (z;h)_n b^n / (h;h)_n, P_n = (a z h^n; h)_inf
    std::vector<cplx> A;
    A.reserve(256);
    cplx term = 1.0;
    double hn = 1.0;
    double peak = 0.0;
    const double cap = 200000;
    for (int n = 0; n < cap; ++n) {
        A.push_back(term);
        peak = std::max(peak, std::abs(term));
        term *= (1.0 - c / b * hn) * (1.0 - z * hn) * b / (1.0 - h * hn);
        hn *= h;
        if (std::abs(term) < kSeriesTol * peak && std::abs(z) * hn < 1e-3) break;
    }
    if (A.size() >= cap) throw ConvergenceError("q_exponential_curly: transformed series did not converge");
    const int N = static_cast<int>(A.size());
    std::vector<cplx> P(N);
    P[N - 1] = detail::pochhammer_inf(a * z * std::pow(h, N - 1), h);
    for (int n = N - 2; n >= 0; --n) P[n] = (1.0 - a * z * std::pow(h, n)) * P[n + 1];
    KahanSum<cplx> sum;
    for (int n = 0; n < N; ++n) sum.add(A[n] * P[n]);
    const cplx pre = detail::pochhammer_inf(b, h) / (detail::pochhammer_inf(c, h) * detail::pochhammer_inf(q * t * t, q * q));
    return pre * sum.value();
}

}  // namespace

cplx q_exponential_curly(double x, cplx t, QBase q) {
    if (!(std::fabs(x) <= 1)) throw DomainError("q_exponential_curly: need |x| <= 1");
    if (t == 0.0) return 1.0;
    const double theta = std::acos(x);
    const double h = std::sqrt(q.value());
    const double r = std::pow(q.value(), 0.25);
    const cplx a = std::polar(r, theta);
    const cplx b = std::polar(r, -theta);
    const cplx c = -h;
    const cplx z = -t;
    if (std::abs(t) < 0.5) {
        const cplx up[] = {a, b};
        const cplx lo[] = {c};
        const cplx pre = detail::pochhammer_inf(-t, h) / detail::pochhammer_inf(q.value() * t * t, q.value() * q.value());
        return pre * detail::hypergeometric(up, lo, h, z);
    }
    return curly_heine(a, b, c, h, z, q.value(), t);
}

double Scaled::value() const { return std::ldexp(m, static_cast<int>(std::clamp(e, -100000L, 100000L))); }

double Scaled::log() const { return std::log(std::fabs(m)) + e * std::numbers::ln2; }

namespace {

// Series terms (-1)^n (x/2)^(nu+2n) q^(n(nu+n)) / ((q;q)_n (q^(nu+1);q)_n) as mantissa * 2^exponent.
struct SeriesTerms {
    std::vector<long double> m;
    std::vector<long> e;
    long peak = 0;
};

SeriesTerms q_bessel_terms(double nu, double x, double q) {
    SeriesTerms s;
    int k2;
    const double f = std::frexp(0.5 * x, &k2);  // x/2 = f 2^k2
    const double kn = k2 * nu;
    const double whole = std::floor(kn);
    int ex;
    long double mant = std::frexp(std::pow(static_cast<long double>(f), static_cast<long double>(nu)) *
                                      std::exp2(static_cast<long double>(kn) - whole),
                                  &ex);
    long E = static_cast<long>(whole) + ex;
    const long double h = 0.25L * x * x;
    s.peak = LONG_MIN;
    long double qk = 1.0L;
    const long double qnu = std::pow(static_cast<long double>(q), static_cast<long double>(nu));
    for (int n = 0; n < kSeriesCap; ++n) {
        s.m.push_back(mant);
        s.e.push_back(E);
        s.peak = std::max(s.peak, E);
        qk *= q;  // q^k
        // ratio -(x/2)^2 q^(nu+2k-1) / ((1-q^k)(1-q^(nu+k)))
        const long double ratio = -h * qnu * qk * qk / q / ((1 - qk) * (1 - qnu * qk));
        int er;
        mant = std::frexp(mant * ratio, &er);
        E += er;
        if (std::fabs(ratio) < 1 && E < s.peak - 64) return s;
        if (mant == 0) return s;
    }
    throw ConvergenceError("q_bessel2: series did not converge within the term cap");
}

Scaled sum_scaled(const SeriesTerms& s, double nu, double x, bool derivative, double q) {
    KahanSum<long double> sum;
    for (std::size_t n = 0; n < s.m.size(); ++n) {
        long double v = std::ldexp(s.m[n], static_cast<int>(s.e[n] - s.peak));
        if (derivative) v *= (nu + 2.0L * n) / x;
        sum.add(v);
    }
    const double pre = qpochhammer_inf(std::pow(q, nu + 1), QBase(q)) / qpochhammer_inf(q, QBase(q));
    int ex;
    const double m = std::frexp(static_cast<double>(sum.value() * pre), &ex);
    if (m == 0) return {0.0, 0};
    return {m, s.peak + ex};
}

void check_q_bessel(double nu, double x) {
    if (!(nu > -1)) throw DomainError("q_bessel2: nu must exceed -1");
    if (!(x >= 0)) throw DomainError("q_bessel2: x must be nonnegative");
}

}  // namespace

Scaled q_bessel2_scaled(double nu, double x, QBase q) {
    check_q_bessel(nu, x);
    if (x == 0) {
        if (nu > 0) return {0.0, 0};
        if (nu < 0) return {1.0, 100000};
        return {0.5, 1};
    }
    return sum_scaled(q_bessel_terms(nu, x, q), nu, x, false, q);
}

Scaled q_bessel2_derivative_scaled(double nu, double x, QBase q) {
    check_q_bessel(nu, x);
    if (x == 0) throw DomainError("q_bessel2_derivative: x must be positive");
    return sum_scaled(q_bessel_terms(nu, x, q), nu, x, true, q);
}

double q_bessel2(double nu, double x, QBase q) { return q_bessel2_scaled(nu, x, q).value(); }

double q_bessel2_derivative(double nu, double x, QBase q) { return q_bessel2_derivative_scaled(nu, x, q).value(); }

double q_bessel2_log_scale(double nu, double x, QBase q) {
    check_q_bessel(nu, x);
    if (x == 0) return 0.0;
    return q_bessel_terms(nu, x, q).peak * std::numbers::ln2;
}

double q_lommel(int n, double nu, double x, QBase q) {
    if (n < -1) throw DomainError("q_lommel: degree must be >= -1");
    if (n == -1) return 0.0;
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = 2 * (1 - std::pow(q.value(), nu + k)) * x * cur - std::pow(q.value(), nu + k - 1) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double q_lommel_mass(double nu, double j, QBase q) {
    const Scaled a = q_bessel2_scaled(nu + 1, j, q);
    const Scaled d = q_bessel2_derivative_scaled(nu, j, q);
    if (d.m == 0) throw DomainError("q_lommel_mass: derivative vanishes");
    return std::ldexp(-a.m / d.m, static_cast<int>(a.e - d.e));
}

double q_ultraspherical(int n, double nu, double x, QBase q) {
    if (!(nu > 0)) throw DomainError("q_ultraspherical: nu must be positive");
    if (n < 0) throw DomainError("q_ultraspherical: negative degree");
    const double b = std::pow(q.value(), nu);
    double prev = 0.0, cur = 1.0;
    double qk = 1.0;  // q^k
    for (int k = 0; k < n; ++k) {
        // 2x(1 - b q^k) C_k = (1 - q^(k+1)) C_{k+1} + (1 - b^2 q^(k-1)) C_{k-1}
        const double next = (2 * x * (1 - b * qk) * cur - (1 - b * b * qk / q.value()) * prev) / (1 - qk * q.value());
        prev = cur;
        cur = next;
        qk *= q.value();
    }
    return cur;
}

double q_ultraspherical_norm(int n, double nu, QBase q) {
    if (!(nu > 0)) throw DomainError("q_ultraspherical_norm: nu must be positive");
    const double qv = q.value();
    return (1 - std::pow(qv, nu)) * qpochhammer(std::pow(qv, 2 * nu), q, n) /
           ((1 - std::pow(qv, n + nu)) * qpochhammer(qv, q, n));
}

void q_orthonormal_all(double nu, double x, QBase q, std::span<double> out) {
    if (!(nu > 0)) throw DomainError("q_ultraspherical: nu must be positive");
    const double qv = q.value();
    const double b = std::pow(qv, nu);
    double prev = 0.0, cur = 1.0, qk = 1.0;
    double b2 = 1.0, qq = 1.0;  // (q^(2nu);q)_k, (q;q)_k
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double norm = (1 - b) * b2 / ((1 - b * qk) * qq);
        out[k] = cur / std::sqrt(norm);
        const double next = (2 * x * (1 - b * qk) * cur - (1 - b * b * qk / qv) * prev) / (1 - qk * qv);
        prev = cur;
        cur = next;
        b2 *= 1 - b * b * qk;
        qq *= 1 - qk * qv;
        qk *= qv;
    }
}

double q_weight_theta(double theta, double nu, QBase q) {
    if (!(nu > 0)) throw DomainError("q_weight: nu must be positive");
    const double qv = q.value();
    const double b = std::pow(qv, nu);
    const cplx e2 = std::polar(1.0, 2 * theta);
    const cplx ratio = detail::pochhammer_inf(e2, qv) * detail::pochhammer_inf(std::conj(e2), qv) /
                       (detail::pochhammer_inf(b * e2, qv) * detail::pochhammer_inf(b * std::conj(e2), qv));
    if (std::fabs(ratio.imag()) >= 1e-13 * std::max(1.0, std::fabs(ratio.real())))
        throw NonFiniteError("q_weight: conjugate pairing lost realness", std::cos(theta));
    const double c = qpochhammer_inf(qv, q) * qpochhammer_inf(b * b, q) /
                     (2 * kPi * qpochhammer_inf(b, q) * qpochhammer_inf(b * qv, q));
    return c * ratio.real();
}

double q_weight(double x, double nu, QBase q) {
    if (!(std::fabs(x) < 1)) throw DomainError("q_weight: endpoint |x| = 1 rejected");
    const double theta = std::acos(x);
    return q_weight_theta(theta, nu, q) / std::sin(theta);
}

double hayman_guess(double nu, int k, QBase q) { return 2 * std::pow(q.value(), (1.0 - 2 * k - nu) / 2); }

namespace {

double refine_q_zero(double nu, double lo, double hi, QBase q) {
    int slo = q_bessel2_scaled(nu, lo, q).sign();
    while (hi - lo > 1e-15 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const int sm = q_bessel2_scaled(nu, mid, q).sign();
        if (sm == 0) return mid;
        if (sm == slo)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

QBesselZeroTable QBesselZeroTable::compute(double nu, QBase q, int count) {
    if (!(nu > -1)) throw DomainError("q_bessel_zero: nu must exceed -1");
    QBesselZeroTable table;
    table.nu = nu;
    table.q = q.value();
    const double ratio = 1 + (1 - q.value()) / 4;
    double x = 1e-3;
    int s = q_bessel2_scaled(nu, x, q).sign();
    while (static_cast<int>(table.zeros.size()) < count) {
        const int k = static_cast<int>(table.zeros.size()) + 1;
        const double xn = x * ratio;
        if (xn > 16 * hayman_guess(nu, k, q) + 100)
            throw BracketError("q_bessel_zero: no sign change for zero " + std::to_string(k) +
                                   " (Hayman guess " + std::to_string(hayman_guess(nu, k, q)) + ")",
                               x, xn);
        const int sn = q_bessel2_scaled(nu, xn, q).sign();
        if (sn != s && sn != 0) table.zeros.push_back(refine_q_zero(nu, x, xn, q));
        if (sn != 0) s = sn;
        x = xn;
    }
    return table;
}

double q_bessel_zero(double nu, int k, QBase q) {
    if (k < 1) throw DomainError("q_bessel_zero: k must be positive");
    return QBesselZeroTable::compute(nu, q, k).zeros.back();
}

}  // namespace qrk
