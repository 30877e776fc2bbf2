#pragma once

#include <span>
#include <vector>

namespace qrk {

// Gamma function; Lanczos approximation with reflection below 1/2.
double gamma_real(double x);

// J_nu(x), nu > -1, x >= 0.
double bessel_j(double nu, double x);
// Power-series path only (no large-argument backend).
double bessel_j_series(double nu, double x);
// d/dx J_nu(x).
double bessel_j_derivative(double nu, double x);

// C_n^nu(x) by forward recurrence.
double gegenbauer(int n, double nu, double x);
// Squared norm of C_n^nu under (1-x^2)^(nu-1/2) dx.
double gegenbauer_norm(int n, double nu);
// p_n = C_n^nu / sqrt(gegenbauer_norm(n, nu)); fills out[0..size).
void orthonormal_gegenbauer_all(double nu, double x, std::span<double> out);
double orthonormal_gegenbauer(int n, double nu, double x);

// Lommel polynomial h_{n,nu}(x); h_{-1} = 0, h_0 = 1.
double lommel(int n, double nu, double x);

// McMahon's large-k estimate of j_{nu,k}.
double mcmahon_guess(double nu, int k);

struct BesselZeroTable {
    double nu = 0;
    std::vector<double> zeros;

    // First `count` positive zeros of J_nu.
    static BesselZeroTable compute(double nu, int count);
};

double bessel_zero(double nu, int k);

}  // namespace qrk
