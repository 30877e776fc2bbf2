#include "qrk/genrec.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qrk/error.hpp"
#include "qrk/summation.hpp"

namespace qrk {

RecurrenceSpec lommel_spec(double nu) {
    return {[](double mu) { return 2 * mu; }, [](double) { return 1.0; }, nu};
}

RecurrenceSpec q_lommel_spec(double nu, QBase q) {
    const double qv = q.value();
    return {[qv](double mu) { return 2 * (1 - std::pow(qv, mu)); }, [qv](double mu) { return std::pow(qv, mu); }, nu};
}

namespace {

void require_positive(const RecurrenceSpec& spec, int upto) {
    for (int n = 0; n < upto; ++n) {
        const double v = spec.B(n + spec.nu) * spec.B(n + spec.nu + 1) * spec.C(n + spec.nu);
        if (!(v > 0)) throw DomainError("recurrence_poly: positivity violated at index " + std::to_string(n));
    }
}

}  // namespace

void recurrence_poly_all(const RecurrenceSpec& spec, double x, std::span<double> out) {
    if (out.empty()) return;
    require_positive(spec, static_cast<int>(out.size()) - 1);
    double prev = 0.0, cur = 1.0;
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = cur;
        const double next = x * spec.B(n + spec.nu) * cur - (n == 0 ? 0.0 : spec.C(n + spec.nu - 1)) * prev;
        prev = cur;
        cur = next;
    }
}

double recurrence_poly(const RecurrenceSpec& spec, int n, double x) {
    if (n < -1) throw DomainError("recurrence_poly: degree must be >= -1");
    if (n == -1) return 0.0;
    std::vector<double> v(n + 1);
    recurrence_poly_all(spec, x, v);
    return v.back();
}

namespace {

// Levin u-transform of partial sums S[lo..lo+k] with terms a.
double levin_u(const std::vector<double>& S, const std::vector<double>& a, int lo, int k) {
    KahanSum<double> num, den;
    const double beta = 1.0;
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
        const int n = lo + j;
        const double omega = (beta + n) * a[n];
        if (omega == 0) return S[n];
        const double c = (j % 2 ? -binom : binom) * std::pow((beta + n) / (beta + lo + k), k - 1);
        num.add(c * S[n] / omega);
        den.add(c / omega);
        binom = binom * (k - j) / (j + 1);
    }
    return num.value() / den.value();
}

}  // namespace

PositivityReport check_positivity(const RecurrenceSpec& spec, int n_max) {
    if (n_max < 1) throw DomainError("check_positivity: n_max must be positive");
    PositivityReport r;
    r.n_max = n_max;
    std::vector<double> terms(n_max + 1), partial(n_max + 1);
    KahanSum<double> sum;
    for (int n = 0; n <= n_max; ++n) {
        const double b0 = spec.B(n + spec.nu), b1 = spec.B(n + spec.nu + 1), c = spec.C(n + spec.nu);
        if (!(b0 * b1 * c > 0)) r.violations.push_back(n);
        terms[n] = c / (b0 * b1);
        sum.add(terms[n]);
        partial[n] = sum.value();
    }
    r.partial_sum = sum.value();
    // Levin u is applied to the leading partial sums: at large n its k-th differences cancel catastrophically.
    const double r1 = n_max >= 2 ? terms[n_max] / terms[n_max - 1] : 1.0;
    const double r0 = n_max >= 2 ? terms[n_max - 1] / terms[n_max - 2] : 1.0;
    if (std::fabs(r1) < 0.95 && std::fabs(r1 - r0) < 1e-2) {
        // geometric tail
        const double tail = terms[n_max] * r1 / (1 - r1);
        r.limit = r.partial_sum + tail;
        r.cauchy = std::fabs(tail);
        return r;
    }
    // Levin u on the leading partial sums; larger orders lose digits to rounding.
    const int k = std::min(8, n_max - 1);
    if (k >= 4) {
        r.limit = levin_u(partial, terms, 0, k);
        r.cauchy = std::fabs(r.limit - levin_u(partial, terms, 0, k - 2));
    } else {
        r.limit = r.partial_sum;
        r.cauchy = std::fabs(terms[n_max]);
    }
    return r;
}

std::vector<std::vector<double>> interpolation_residual(const RecurrenceSpec& spec, const OrderFamily& J,
                                                        std::span<const double> nodes, int k_max) {
    const RecurrenceSpec up = spec.shifted(1);
    std::vector<std::vector<double>> out;
    out.reserve(nodes.size());
    std::vector<double> f(std::max(k_max, 1));
    for (double x : nodes) {
        recurrence_poly_all(up, 1 / x, f);
        const double jm1 = J(x, spec.nu - 1);
        std::vector<double> row(k_max);
        double cprod = 1.0;
        for (int k = 1; k <= k_max; ++k) {
            cprod *= spec.C(spec.nu + k - 1);
            const double rhs = -jm1 / cprod * f[k - 1];
            const double lhs = J(x, spec.nu + k);
            row[k - 1] = std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
        }
        out.push_back(std::move(row));
    }
    return out;
}

double interpolator_weight(const RecurrenceSpec& spec, int k) {
    double v = spec.C(spec.nu) * spec.B(spec.nu + k) / spec.B(spec.nu + 1);
    for (int j = 0; j < k; ++j) v *= spec.C(spec.nu + j);
    if (!(v > 0)) throw DomainError("interpolator_weight: non-positive weight at k = " + std::to_string(k));
    return std::sqrt(v);
}

}  // namespace qrk
