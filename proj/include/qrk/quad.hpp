#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qrk/qcalc.hpp"

namespace qrk {

using Function = std::function<cplx(double)>;

// Gauss-Legendre rule on (-1,1).
struct QuadRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;
};

QuadRule gauss_legendre(int order);

// Nodes on (-1,1) with the measure density folded into the weights:
// integral f dmu ~ sum_i weights[i] f(nodes[i]).
struct MeasureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Gegenbauer rule for (1-x^2)^(nu-1/2) dx.
MeasureRule classical_measure(double nu, int order);
// Rule for w(x; q^nu | q) dx via x = sin(pi s/2), Gauss-Legendre in s.
MeasureRule q_measure(double nu, QBase q, const QuadRule& rule);

cplx inner_product(const Function& f, const Function& g, const MeasureRule& rule);
cplx inner_product_classical(const Function& f, const Function& g, double nu, const QuadRule& rule);
cplx inner_product_q(const Function& f, const Function& g, double nu, QBase q, const QuadRule& rule);

}  // namespace qrk
