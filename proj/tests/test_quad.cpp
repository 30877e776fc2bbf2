#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qrk/error.hpp"
#include "qrk/qcalc.hpp"
#include "qrk/quad.hpp"
#include "qrk/specfun.hpp"

using namespace qrk;
using std::numbers::pi;

TEST_CASE("gauss_legendre: small orders") {
    const auto r1 = gauss_legendre(1);
    CHECK(r1.nodes.size() == 1);
    CHECK(r1.nodes[0] == 0.0);
    CHECK(r1.weights[0] == doctest::Approx(2.0));
    const auto r2 = gauss_legendre(2);
    CHECK(r2.nodes[0] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.nodes[1] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-15));
    CHECK(r2.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r2.weights[1] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(gauss_legendre(0), DomainError);
}

TEST_CASE("gauss_legendre: invariants and exactness") {
    for (int n : {2, 5, 40, 200, 401}) {
        const auto r = gauss_legendre(n);
        double sw = 0, sx2 = 0;
        for (int i = 0; i < n; ++i) {
            sw += r.weights[i];
            sx2 += r.weights[i] * r.nodes[i] * r.nodes[i];
            CHECK(r.weights[i] > 0);
            if (i) CHECK(r.nodes[i - 1] < r.nodes[i]);
            // node accuracy: Newton step |P_n / P_n'| at the returned node
            const double x = r.nodes[i];
            const double dp = n * (x * std::legendre(n, x) - std::legendre(n - 1, x)) / (x * x - 1);
            CHECK(std::fabs(std::legendre(n, x) / dp) < 1e-14);
        }
        CHECK(std::fabs(sw - 2) < 1e-13);
        CHECK(sx2 == doctest::Approx(2.0 / 3).epsilon(1e-14));
    }
    const auto r = gauss_legendre(20);
    double s = 0;
    for (int i = 0; i < 20; ++i) s += r.weights[i] * std::pow(r.nodes[i], 38);
    CHECK(s == doctest::Approx(2.0 / 39).epsilon(1e-13));
}

TEST_CASE("classical measure rule: moments against Gamma functions") {
    for (double nu : {0.05, 0.3, 0.5, 1.0, 2.7}) {
        const auto m = classical_measure(nu, 200);
        for (int k : {0, 2, 10, 30}) {
            double s = 0;
            for (std::size_t i = 0; i < m.nodes.size(); ++i) s += m.weights[i] * std::pow(m.nodes[i], k);
            // int x^k (1-x^2)^(nu-1/2) = Gamma((k+1)/2) Gamma(nu+1/2) / Gamma(nu+1+k/2)
            const double ref = std::tgamma((k + 1) / 2.0) * std::tgamma(nu + 0.5) / std::tgamma(nu + 1 + k / 2.0);
            CHECK(s == doctest::Approx(ref).epsilon(1e-12));
        }
    }
}

TEST_CASE("inner_product_classical") {
    const auto rule = gauss_legendre(200);
    const Function one = [](double) { return cplx(1); };
    const Function x = [](double t) { return cplx(t); };
    for (double nu : {0.2, 0.75, 1.5}) {
        CHECK(std::abs(inner_product_classical(one, x, nu, rule)) < 1e-15);
        const Function c1 = [nu](double t) { return cplx(gegenbauer(1, nu, t)); };
        CHECK(inner_product_classical(c1, c1, nu, rule).real() == doctest::Approx(gegenbauer_norm(1, nu)).epsilon(1e-10));
        const Function p0 = [nu](double t) { return cplx(orthonormal_gegenbauer(0, nu, t)); };
        CHECK(inner_product_classical(p0, p0, nu, rule).real() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("inner_product_q: mass, orthogonality, Hermitian symmetry") {
    const auto rule = gauss_legendre(200);
    const QBase q(0.5);
    const Function one = [](double) { return cplx(1); };
    const Function c1 = [&](double t) { return cplx(q_ultraspherical(1, 0.5, t, q)); };
    CHECK(inner_product_q(one, one, 0.5, q, rule).real() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::abs(inner_product_q(one, c1, 0.5, q, rule)) < 1e-8);
    const Function f = [](double t) { return cplx(std::cos(3 * t), t * t); };
    const Function g = [](double t) { return std::exp(cplx(0, 2 * t)); };
    const cplx a = inner_product_q(f, g, 0.8, q, rule), b = inner_product_q(g, f, 0.8, q, rule);
    CHECK(std::abs(a - std::conj(b)) < 1e-15);
    CHECK(inner_product_q(f, f, 0.8, q, rule).real() > 0);
    CHECK_THROWS_AS(inner_product_q(one, one, 0.0, q, rule), DomainError);
}

TEST_CASE("q weight at the origin against independent products") {
    // w(0) = density at th = pi/2: direct products with e^{2i th} = -1
    const double nu = 0.5, q = 0.5, b = std::pow(q, nu);
    const double ref = (oracle::poch_inf(q, q) * oracle::poch_inf(b * b, q) * oracle::poch_inf(-1.0, q) *
                        oracle::poch_inf(-1.0, q) /
                        (2 * pi * oracle::poch_inf(b, q) * oracle::poch_inf(b * q, q) * oracle::poch_inf(-b, q) *
                         oracle::poch_inf(-b, q)))
                           .real();
    CHECK(q_weight(0.0, nu, QBase(q)) == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("doubling the quadrature order leaves test-family inner products unchanged") {
    const QBase q(0.5);
    for (double nu : {0.1, 0.75, 2.0}) {
        const auto r1 = classical_measure(nu, 100), r2 = classical_measure(nu, 200);
        const auto s1 = q_measure(nu, q, gauss_legendre(100)), s2 = q_measure(nu, q, gauss_legendre(200));
        for (int n : {0, 5, 16})
            for (int m : {3, 16}) {
                const Function f = [&](double x) { return cplx(gegenbauer(n, nu, x)); };
                const Function g = [&](double x) { return cplx(gegenbauer(m, nu, x)); };
                CHECK(std::abs(inner_product(f, g, r1) - inner_product(f, g, r2)) < 1e-10);
                const Function fq = [&](double x) { return cplx(q_ultraspherical(n, nu, x, q)); };
                const Function gq = [&](double x) { return cplx(q_ultraspherical(m, nu, x, q)); };
                CHECK(std::abs(inner_product(fq, gq, s1) - inner_product(fq, gq, s2)) < 1e-10);
            }
    }
}

TEST_CASE("non-finite integrand reports the node") {
    const auto rule = classical_measure(0.5, 8);
    const Function bad = [](double x) { return cplx(x > 0.5 ? NAN : 1.0); };
    CHECK_THROWS_AS(inner_product(bad, bad, rule), NonFiniteError);
}
