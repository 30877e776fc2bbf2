#pragma once

#include <complex>
#include <span>
#include <vector>

namespace qrk {

using cplx = std::complex<double>;

class QBase {
public:
    explicit QBase(double q);
    double value() const { return q_; }
    operator double() const { return q_; }

private:
    double q_;
};

// (a;q)_n for finite n, and (a;q)_inf.
cplx qpochhammer(cplx a, QBase q, int n);
cplx qpochhammer_inf(cplx a, QBase q);
double qpochhammer(double a, QBase q, int n);
double qpochhammer_inf(double a, QBase q);

// r phi s (upper; lower; q, z) in the Gasper-Rahman convention.
cplx basic_hypergeometric(std::span<const cplx> upper, std::span<const cplx> lower, QBase q, cplx z);

namespace detail {
// Same products/series for an arbitrary base in (0,1), e.g. q^(1/2).
cplx pochhammer_inf(cplx a, double base);
cplx pochhammer(cplx a, double base, int n);
cplx hypergeometric(std::span<const cplx> upper, std::span<const cplx> lower, double base, cplx z);
}  // namespace detail

// Curly q-exponential E_q(x; t).
cplx q_exponential_curly(double x, cplx t, QBase q);

// m * 2^e; keeps huge q-Bessel values representable.
struct Scaled {
    double m = 0;
    long e = 0;
    double value() const;
    double log() const;  // natural log of |value|
    int sign() const { return (m > 0) - (m < 0); }
};

// Second Jackson q-Bessel function J_nu^(2)(x; q).
double q_bessel2(double nu, double x, QBase q);
Scaled q_bessel2_scaled(double nu, double x, QBase q);
Scaled q_bessel2_derivative_scaled(double nu, double x, QBase q);
double q_bessel2_derivative(double nu, double x, QBase q);
// Largest series term, for residual scaling.
double q_bessel2_log_scale(double nu, double x, QBase q);

// q-Lommel polynomial h_{n,nu}(x; q).
double q_lommel(int n, double nu, double x, QBase q);

// Spectral mass -J_{nu+1}(j;q) / J'_nu(j;q) of the q-Lommel measure at a zero j of J_nu(.;q).
double q_lommel_mass(double nu, double j, QBase q);

// Continuous q-ultraspherical C_n(x; q^nu | q) and its squared norm under q_weight.
double q_ultraspherical(int n, double nu, double x, QBase q);
double q_ultraspherical_norm(int n, double nu, QBase q);
void q_orthonormal_all(double nu, double x, QBase q, std::span<double> out);

// w(x; q^nu | q), normalized to unit mass.
double q_weight(double x, double nu, QBase q);
// w(cos th) sin th, the density in th on (0, pi).
double q_weight_theta(double theta, double nu, QBase q);

// Leading Hayman term 2 q^((1-2k-nu)/2).
double hayman_guess(double nu, int k, QBase q);

struct QBesselZeroTable {
    double nu = 0;
    double q = 0.5;
    std::vector<double> zeros;

    static QBesselZeroTable compute(double nu, QBase q, int count);
};

double q_bessel_zero(double nu, int k, QBase q);

}  // namespace qrk
