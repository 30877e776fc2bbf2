#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qrk/error.hpp"
#include "qrk/quad.hpp"
#include "qrk/specfun.hpp"

using namespace qrk;
using std::numbers::pi;

TEST_CASE("gamma_real: exact values and reflection") {
    CHECK(gamma_real(1) == doctest::Approx(1).epsilon(1e-14));
    CHECK(gamma_real(0.5) == doctest::Approx(1.77245385090552).epsilon(1e-13));
    CHECK(gamma_real(5) == doctest::Approx(24).epsilon(1e-14));
    // mpmath
    CHECK(gamma_real(0.1) == doctest::Approx(9.5135076986687312858).epsilon(1e-13));
    CHECK(gamma_real(2.5) == doctest::Approx(1.3293403881791370205).epsilon(1e-13));
    CHECK(gamma_real(-1.5) == doctest::Approx(2.3632718012073547031).epsilon(1e-13));
    CHECK(gamma_real(7.3) == doctest::Approx(1271.4236336639088399).epsilon(1e-13));
    CHECK_THROWS_AS(gamma_real(0), DomainError);
    CHECK_THROWS_AS(gamma_real(-3), DomainError);
    for (double x = -4.55; x < 20; x += 0.37) CHECK(gamma_real(x) == doctest::Approx(std::tgamma(x)).epsilon(1e-12));
}

TEST_CASE("bessel_j: trivial values") {
    CHECK(bessel_j(0, 0) == 1.0);
    CHECK(std::fabs(bessel_j(0.5, pi)) < 1e-15);
    CHECK(bessel_j(1, 1) == doctest::Approx(0.440050585744933).epsilon(1e-14));
    for (double x : {0.3, 2.0, 9.0, 17.0, 30.0})
        CHECK(bessel_j(0.5, x) == doctest::Approx(std::sqrt(2 / (pi * x)) * std::sin(x)).epsilon(1e-12));
}

TEST_CASE("bessel_j: mpmath reference values") {
    struct Row { double nu, x, v; };
    const Row rows[] = {
        {0.75, 3.2, 0.1272763541753336956},    {0.3, 11.9, -0.081220674389241633645},
        {0.3, 12.1, -0.036262204172314094621}, {2.5, 25.0, 0.0020381361533260554375},
        {-0.4, 18.0, 0.10015475346650101564},  {-0.4, 7.0, 0.25645057604648819276},
        {1.7, 40.0, 0.054774425803191870782},  {0.6, 100.0, -0.050634123803078145427},
        {10.0, 30.0, -0.12987689399858876819},
    };
    for (const auto& r : rows) CHECK(std::fabs(bessel_j(r.nu, r.x) - r.v) < 5e-15);
}

TEST_CASE("bessel_j: series and large-argument paths agree") {
    for (double nu : {-0.6, 0.0, 0.5, 1.3, 2.7})
        for (double x = 12.5; x < 20; x += 0.7)
            CHECK(std::fabs(bessel_j_series(nu, x) - bessel_j(nu, x)) < 1e-12);
}

TEST_CASE("bessel_j: independent tgamma series on small arguments") {
    for (double nu : {-0.3, 0.25, 1.0, 3.5})
        for (double x = 0.1; x < 8; x += 0.7) CHECK(std::fabs(bessel_j(nu, x) - oracle::bessel_series(nu, x)) < 2e-13);
}

TEST_CASE("bessel_j: domain errors") {
    CHECK_THROWS_AS(bessel_j(-1.5, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_j(0.5, -1.0), DomainError);
}

TEST_CASE("bessel_j_derivative matches central differences") {
    for (double nu : {-0.4, 0.5, 2.0})
        for (double x : {0.7, 5.0, 23.0}) {
            const double h = 1e-5;
            const double fd = (bessel_j(nu, x + h) - bessel_j(nu, x - h)) / (2 * h);
            CHECK(bessel_j_derivative(nu, x) == doctest::Approx(fd).epsilon(1e-8));
        }
}

TEST_CASE("gegenbauer: base cases and explicit sum") {
    CHECK(gegenbauer(0, 0.3, 0.7) == 1.0);
    CHECK(gegenbauer(1, 0.75, 0.4) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(std::fabs(gegenbauer(2, 1, 0.5)) < 1e-15);
    for (double nu : {-0.25, 0.5, 1.5, 2.2})
        for (int n = 0; n <= 12; ++n)
            for (double x : {-0.9, -0.2, 0.35, 0.8})
                CHECK(gegenbauer(n, nu, x) == doctest::Approx(oracle::gegenbauer_explicit(n, nu, x)).epsilon(1e-11));
    CHECK_THROWS_AS(gegenbauer(2, 0.0, 0.1), DomainError);
    CHECK_THROWS_AS(gegenbauer(2, -0.6, 0.1), DomainError);
}

TEST_CASE("gegenbauer_norm: values and tanh-sinh quadrature") {
    CHECK(gegenbauer_norm(0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(gegenbauer_norm(0, 1) == doctest::Approx(pi / 2).epsilon(1e-14));
    for (double nu : {-0.3, 0.2, 0.75, 1.0, 2.6})
        for (int n : {0, 1, 3, 7, 12}) {
            const double ref = oracle::tanh_sinh(
                [&](double th) {
                    const double c = gegenbauer(n, nu, std::cos(th));
                    return c * c * std::pow(std::sin(th), 2 * nu);
                },
                0, pi / 2);
            CHECK(gegenbauer_norm(n, nu) == doctest::Approx(2 * ref).epsilon(1e-10));
        }
}

TEST_CASE("orthonormal Gegenbauer batch matches single evaluation") {
    double out[15];
    orthonormal_gegenbauer_all(0.8, 0.3, out);
    for (int k = 0; k < 15; ++k) CHECK(out[k] == doctest::Approx(orthonormal_gegenbauer(k, 0.8, 0.3)).epsilon(1e-13));
}

TEST_CASE("Gegenbauer Gram matrix is diagonal for random orders") {
    std::mt19937 rng(20260101);
    std::uniform_real_distribution<double> dist(0.01, 3.0);
    for (int trial = 0; trial < 4; ++trial) {
        const double nu = dist(rng);
        const auto rule = classical_measure(nu, 200);
        for (int n = 0; n <= 12; ++n)
            for (int m = 0; m <= n; ++m) {
                const double g = inner_product(
                    [&](double x) { return cplx(gegenbauer(n, nu, x)); },
                    [&](double x) { return cplx(gegenbauer(m, nu, x)); }, rule).real();
                if (n == m)
                    CHECK(g == doctest::Approx(gegenbauer_norm(n, nu)).epsilon(1e-10));
                else
                    CHECK(std::fabs(g) < 1e-10);
            }
    }
}

TEST_CASE("lommel: base cases, explicit sum") {
    CHECK(lommel(0, 0.7, 0.2) == 1.0);
    CHECK(lommel(-1, 0.7, 0.2) == 0.0);
    CHECK(lommel(1, 0.75, 0.2) == doctest::Approx(0.3).epsilon(1e-15));
    for (double nu : {0.6, 1.0, 1.7})
        for (int n = 0; n <= 10; ++n)
            for (double x : {0.1, 0.3, 0.66})
                CHECK(lommel(n, nu, x) == doctest::Approx(oracle::lommel_explicit(n, nu, x)).epsilon(1e-12));
}

namespace {
// |J_{nu+k} - h_{k,nu}(1/x) J_nu + h_{k-1,nu+1}(1/x) J_{nu-1}| relative to the largest term.
double besslom_residual(int k, double nu, double x) {
    const double a = bessel_j(nu + k, x);
    const double b = lommel(k, nu, 1 / x) * bessel_j(nu, x);
    const double c = lommel(k - 1, nu + 1, 1 / x) * bessel_j(nu - 1, x);
    return std::fabs(a - b + c) / std::max({1.0, std::fabs(b), std::fabs(c)});
}
}  // namespace

TEST_CASE("Lommel identity with shifted order nu+1") {
    CHECK(besslom_residual(5, 0.75, 3.2) < 1e-12);
    for (int k = 0; k <= 10; ++k)
        for (double nu : {0.6, 1.0, 1.7})
            for (double x : {1.5, 3.2, 7.9}) CHECK(besslom_residual(k, nu, x) < 1e-11);
}

TEST_CASE("Lommel identity as printed with nu-1 fails") {
    const double x = 3.2, nu = 0.75;
    const double printed = bessel_j(nu + 5, x) - lommel(5, nu, 1 / x) * bessel_j(nu, x) +
                           lommel(4, nu - 1, 1 / x) * bessel_j(nu - 1, x);
    CHECK(std::fabs(printed) > 1e-3);
}

TEST_CASE("interpolation at Bessel zeros") {
    for (double nu : {0.6, 1.0, 1.7}) {
        const auto zt = BesselZeroTable::compute(nu, 6);
        for (double j : zt.zeros)
            for (int k = 0; k <= 8; ++k) {
                const double h = lommel(k - 1, nu + 1, 1 / j);
                const double r = bessel_j(nu + k, j) / bessel_j(nu - 1, j);
                CHECK(std::fabs(h + r) / std::max(1.0, std::fabs(h)) < 1e-10);
            }
    }
}

TEST_CASE("bessel_zero: reference values") {
    CHECK(bessel_zero(0.5, 1) == doctest::Approx(pi).epsilon(1e-14));
    for (int k = 1; k <= 20; ++k) CHECK(std::fabs(bessel_zero(0.5, k) - k * pi) < 1e-12);
    CHECK(std::fabs(bessel_zero(0, 1) - 2.40482555769577) < 1e-12);
    const auto t0 = BesselZeroTable::compute(0, 50);
    CHECK(std::fabs(t0.zeros[1] - 5.5200781102863106496) < 1e-12);
    CHECK(std::fabs(t0.zeros[9] - 30.634606468431975118) < 1e-12);
    CHECK(std::fabs(t0.zeros[49] - 156.29503426853352382) < 1e-12);
    const auto t1 = BesselZeroTable::compute(1.3, 50);
    CHECK(std::fabs(t1.zeros[0] - 4.231448685189517344) < 1e-12);
    CHECK(std::fabs(t1.zeros[49] - 158.33172239516425609) < 1e-12);
    const auto tn = BesselZeroTable::compute(-0.4, 2);
    CHECK(std::fabs(tn.zeros[0] - 1.7509753662088031343) < 1e-12);
    CHECK(std::fabs(tn.zeros[1] - 4.8785160495377742145) < 1e-12);
}

TEST_CASE("zero table invariants: increasing, small residual, interlacing") {
    for (double nu : {0.0, 0.75, 2.2}) {
        const auto a = BesselZeroTable::compute(nu, 40);
        const auto b = BesselZeroTable::compute(nu + 1, 40);
        for (std::size_t k = 0; k < a.zeros.size(); ++k) {
            CHECK(std::fabs(bessel_j(nu, a.zeros[k])) < 1e-12);
            if (k + 1 < a.zeros.size()) {
                CHECK(a.zeros[k] < a.zeros[k + 1]);
                CHECK(a.zeros[k] < b.zeros[k]);
                CHECK(b.zeros[k] < a.zeros[k + 1]);
            }
        }
    }
}

TEST_CASE("McMahon guess is close for large k") {
    CHECK(std::fabs(mcmahon_guess(0.75, 50) - 157.47133953609953281) < 1e-6);
}

TEST_CASE("Lommel discrete orthogonality over Bessel zeros") {
    // Over +-j the odd-parity pairs cancel; the positive-zero sum of an even pair is delta/(4(nu+n+1)).
    // Zeros 1..200 are computed; zeros beyond come from McMahon, and the remainder past the last is integrated.
    const double nu = 0.75;
    const int N = 200, far = 2000000;
    const auto zt = BesselZeroTable::compute(nu, N);
    double M[6][6] = {};
    auto accumulate = [&](double j) {
        double h[6];
        for (int n = 0; n < 6; ++n) h[n] = lommel(n, nu + 1, 1 / j);
        for (int n = 0; n < 6; ++n)
            for (int m = 0; m < 6; ++m) M[n][m] += h[n] * h[m] / (j * j);
    };
    for (double j : zt.zeros) accumulate(j);
    for (int k = N + 1; k <= far; ++k) accumulate(mcmahon_guess(nu, k));
    const double rest = 1 / (pi * pi * (far + 0.5));
    for (int n = 0; n < 6; ++n)
        for (int m = 0; m < 6; ++m) {
            if ((n + m) % 2 == 1) continue;
            const double h0 = lommel(n, nu + 1, 0) * lommel(m, nu + 1, 0);
            const double expect = n == m ? 1 / (4 * (nu + n + 1)) : 0.0;
            CHECK(std::fabs(M[n][m] + h0 * rest - expect) < 1e-6);
        }
}
