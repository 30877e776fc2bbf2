#include "qrk/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qrk/error.hpp"
#include "qrk/summation.hpp"

namespace qrk {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_nonpositive_integer(double x) { return x <= 0 && x == std::floor(x); }

}  // namespace

double gamma_real(double x) {
    if (is_nonpositive_integer(x))
        throw DomainError("gamma_real: pole at x = " + std::to_string(x));
    if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_real(1.0 - x));

    // g = 7, n = 9 (Godfrey's coefficients)
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    x -= 1.0;
    double a = c[0];
    const double t = x + 7.5;
    for (int i = 1; i < 9; ++i) a += c[i] / (x + i);
    return std::sqrt(2 * kPi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

double bessel_j_series(double nu, double x) {
    if (!(nu > -1)) throw DomainError("bessel_j: nu must exceed -1");
    if (x < 0) throw DomainError("bessel_j: x must be nonnegative");
    if (x == 0) return nu == 0 ? 1.0 : 0.0;

    const long double h = 0.25L * x * x;
    long double term = std::pow(0.5L * x, static_cast<long double>(nu)) / gamma_real(nu + 1);
    KahanSum<long double> sum;
    sum.add(term);
    for (int n = 1; n < kSeriesCap; ++n) {
        term *= -h / (n * (static_cast<long double>(nu) + n));
        sum.add(term);
        if (n > h && std::fabs(term) < kSeriesTol * std::fabs(sum.value())) return static_cast<double>(sum.value());
        if (term == 0) return static_cast<double>(sum.value());
    }
    throw ConvergenceError("bessel_j: series did not converge within the term cap");
}

double bessel_j(double nu, double x) {
    if (!(nu > -1)) throw DomainError("bessel_j: nu must exceed -1");
    if (x < 0) throw DomainError("bessel_j: x must be nonnegative");
    if (x <= 12 || 0.25 * x * x <= 10 * (nu + 1)) return bessel_j_series(nu, x);
    if (nu >= 0) return std::cyl_bessel_j(nu, x);
    return 2 * (nu + 1) / x * std::cyl_bessel_j(nu + 1, x) - std::cyl_bessel_j(nu + 2, x);
}

double bessel_j_derivative(double nu, double x) {
    if (x == 0) {
        if (nu == 1) return 0.5;
        if (nu == 0 || nu > 1) return 0.0;
        throw DomainError("bessel_j_derivative: unbounded at x = 0");
    }
    return nu / x * bessel_j(nu, x) - bessel_j(nu + 1, x);
}

namespace {

void check_gegenbauer_order(double nu) {
    if (!(nu > -0.5) || nu == 0) throw DomainError("gegenbauer: need nu > -1/2, nu != 0");
}

}  // namespace

double gegenbauer(int n, double nu, double x) {
    check_gegenbauer_order(nu);
    if (n < 0) throw DomainError("gegenbauer: negative degree");
    if (n == 0) return 1.0;
    double prev = 1.0, cur = 2 * nu * x;
    for (int k = 1; k < n; ++k) {
        const double next = (2 * x * (k + nu) * cur - (k + 2 * nu - 1) * prev) / (k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

double gegenbauer_norm(int n, double nu) {
    check_gegenbauer_order(nu);
    if (n < 0) throw DomainError("gegenbauer_norm: negative degree");
    double ratio = 1.0;  // (2nu)_n / n!
    for (int j = 0; j < n; ++j) ratio *= (2 * nu + j) / (j + 1);
    return ratio * std::sqrt(kPi) * gamma_real(nu + 0.5) / ((nu + n) * gamma_real(nu));
}

void orthonormal_gegenbauer_all(double nu, double x, std::span<double> out) {
    check_gegenbauer_order(nu);
    if (out.empty()) return;
    const double norm = std::sqrt(kPi) * gamma_real(nu + 0.5) / gamma_real(nu);
    double ratio = 1.0;
    double prev = 0.0, cur = 1.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = cur / std::sqrt(ratio * norm / (nu + k));
        const double next = (2 * x * (k + nu) * cur - (k + 2 * nu - 1) * prev) / (k + 1);
        prev = cur;
        cur = next;
        ratio *= (2 * nu + k) / (k + 1);
    }
}

double orthonormal_gegenbauer(int n, double nu, double x) {
    return gegenbauer(n, nu, x) / std::sqrt(gegenbauer_norm(n, nu));
}

double lommel(int n, double nu, double x) {
    if (n < -1) throw DomainError("lommel: degree must be >= -1");
    if (n == -1) return 0.0;
    double prev = 0.0, cur = 1.0;
    for (int k = 0; k < n; ++k) {
        const double next = 2 * (k + nu) * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double mcmahon_guess(double nu, int k) {
    const double beta = (k + nu / 2 - 0.25) * kPi;
    const double mu = 4 * nu * nu;
    return beta - (mu - 1) / (8 * beta) - 4 * (mu - 1) * (7 * mu - 31) / (3 * std::pow(8 * beta, 3));
}

namespace {

double refine_zero(double nu, double lo, double hi) {
    double flo = bessel_j(nu, lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-3) {
            // Newton from the midpoint, kept inside the bracket
            double x = mid;
            for (int nit = 0; nit < 50; ++nit) {
                const double f = bessel_j(nu, x);
                const double step = f / bessel_j_derivative(nu, x);
                double xn = x - step;
                if (!(xn > lo && xn < hi)) break;
                if (std::fabs(xn - x) <= 4e-16 * xn) return xn;
                x = xn;
            }
        }
        const double fm = bessel_j(nu, mid);
        if (fm == 0) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 4e-16 * hi) return 0.5 * (lo + hi);
    }
    return 0.5 * (lo + hi);
}

}  // namespace

BesselZeroTable BesselZeroTable::compute(double nu, int count) {
    if (!(nu > -1)) throw DomainError("bessel_zero: nu must exceed -1");
    if (count < 0) throw DomainError("bessel_zero: negative count");
    BesselZeroTable table;
    table.nu = nu;
    table.zeros.reserve(count);
    double x = 1e-3;
    double f = bessel_j(nu, x);
    const double limit = mcmahon_guess(nu, count) + 10;
    while (static_cast<int>(table.zeros.size()) < count) {
        const double step = x < 2 ? 0.05 : 0.25;
        const double xn = x + step;
        if (xn > limit + 10) {
            const int k = static_cast<int>(table.zeros.size()) + 1;
            throw BracketError("bessel_zero: no sign change for zero " + std::to_string(k) + " near McMahon guess " +
                                   std::to_string(mcmahon_guess(nu, k)),
                               x, xn);
        }
        const double fn = bessel_j(nu, xn);
        if (fn == 0) {
            table.zeros.push_back(xn);
            x = xn + 1e-9;
            f = bessel_j(nu, x);
            continue;
        }
        if ((fn > 0) != (f > 0)) table.zeros.push_back(refine_zero(nu, x, xn));
        x = xn;
        f = fn;
    }
    return table;
}

double bessel_zero(double nu, int k) {
    if (k < 1) throw DomainError("bessel_zero: k must be positive");
    return BesselZeroTable::compute(nu, k).zeros.back();
}

}  // namespace qrk
