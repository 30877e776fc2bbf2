#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qrk/qcalc.hpp"

namespace qrk {

// f_0 = 1, f_1 = x B(nu), f_{n+1} = x B(n+nu) f_n - C(n+nu-1) f_{n-1}.
// B and C take the shifted index mu = n + nu.
struct RecurrenceSpec {
    std::function<double(double)> B;
    std::function<double(double)> C;
    double nu = 0;

    RecurrenceSpec shifted(double by) const { return {B, C, nu + by}; }
};

RecurrenceSpec lommel_spec(double nu);
RecurrenceSpec q_lommel_spec(double nu, QBase q);

double recurrence_poly(const RecurrenceSpec& spec, int n, double x);
// f_0 .. f_{out.size()-1} at x.
void recurrence_poly_all(const RecurrenceSpec& spec, double x, std::span<double> out);

struct PositivityReport {
    std::vector<int> violations;  // n with B(n+nu) B(n+nu+1) C(n+nu) <= 0
    int n_max = 0;
    double partial_sum = 0;       // sum_{n<=n_max} C/(B B)
    double limit = 0;             // Levin-u extrapolation of the partial sums
    double cauchy = 0;            // change of the extrapolated limit between orders k-2 and k
    bool ok() const { return violations.empty(); }
};

PositivityReport check_positivity(const RecurrenceSpec& spec, int n_max);

// J(x; order) supplied by the caller.
using OrderFamily = std::function<double(double x, double order)>;

// |J(x_n; nu+k) + J(x_n; nu-1) f_{k-1,nu+1}(1/x_n) / (C(nu)...C(nu+k-1))| for k = 1..k_max,
// divided by max(1, |lhs|, |rhs|); rows follow `nodes`.
std::vector<std::vector<double>> interpolation_residual(const RecurrenceSpec& spec, const OrderFamily& J,
                                                        std::span<const double> nodes, int k_max);

// sqrt(C(nu) B(nu+k) / B(nu+1) * prod_{j<k} C(nu+j)): scaling that turns J(.; nu+k) into
// interpolators whose kernel sections at the nodes are orthogonal.
double interpolator_weight(const RecurrenceSpec& spec, int k);

}  // namespace qrk
