#include "qrk/quad.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "qrk/error.hpp"
#include "qrk/specfun.hpp"
#include "qrk/summation.hpp"

namespace qrk {

namespace {
constexpr double kPi = std::numbers::pi;
}

QuadRule gauss_legendre(int order) {
    if (order < 1) throw DomainError("gauss_legendre: order must be positive");
    QuadRule rule;
    rule.order = order;
    const int n = order;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        long double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        long double dp = 0;
        for (int it = 0; it < 100; ++it) {
            long double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const long double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-19L) break;
        }
        // recompute derivative at the converged node
        long double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        const double w = static_cast<double>(2 / ((1 - x * x) * dp * dp));
        rule.nodes[i] = -static_cast<double>(x);
        rule.nodes[n - 1 - i] = static_cast<double>(x);
        rule.weights[i] = rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

MeasureRule classical_measure(double nu, int order) {
    if (!(nu > -0.5)) throw DomainError("classical_measure: nu must exceed -1/2");
    if (order < 1) throw DomainError("classical_measure: order must be positive");
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd sub(std::max(order - 1, 0));
    for (int k = 1; k < order; ++k) {
        const double beta = k == 1 ? 1.0 / (2 * (nu + 1)) : k * (k + 2 * nu - 1) / (4 * (k + nu) * (k + nu - 1));
        sub[k - 1] = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    const double mu0 = std::sqrt(kPi) * gamma_real(nu + 0.5) / gamma_real(nu + 1);
    MeasureRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        rule.nodes[i] = solver.eigenvalues()[i];
        const double v = solver.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v * v;
    }
    // symmetrize: the rule is exactly even
    for (int i = 0; i < order / 2; ++i) {
        const int j = order - 1 - i;
        const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = rule.weights[j] = w;
    }
    if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
    return rule;
}

MeasureRule q_measure(double nu, QBase q, const QuadRule& rule) {
    MeasureRule m;
    m.nodes.resize(rule.nodes.size());
    m.weights.resize(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = rule.nodes[i];
        m.nodes[i] = std::sin(kPi * s / 2);
        m.weights[i] = rule.weights[i] * (kPi / 2) * q_weight_theta(kPi * (1 - s) / 2, nu, q);
    }
    return m;
}

cplx inner_product(const Function& f, const Function& g, const MeasureRule& rule) {
    KahanSum<cplx> sum;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double x = rule.nodes[i];
        const cplx v = f(x) * std::conj(g(x));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NonFiniteError("inner_product: non-finite integrand", x);
        sum.add(rule.weights[i] * v);
    }
    return sum.value();
}

cplx inner_product_classical(const Function& f, const Function& g, double nu, const QuadRule& rule) {
    return inner_product(f, g, classical_measure(nu, rule.order));
}

cplx inner_product_q(const Function& f, const Function& g, double nu, QBase q, const QuadRule& rule) {
    if (!(nu > 0)) throw DomainError("inner_product_q: nu must be positive");
    return inner_product(f, g, q_measure(nu, q, rule));
}

}  // namespace qrk
