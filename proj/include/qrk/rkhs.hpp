#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "qrk/genrec.hpp"
#include "qrk/qcalc.hpp"
#include "qrk/quad.hpp"

namespace qrk {

enum class SystemKind { classical, q, recurrence };

// Families p_k (orthonormal on the measure), r_k (discrete polynomials), J_k (interpolators),
// phases u_k = i^k, positive nodes x_n and the masses lambda_n with J_k(x_n) = lambda_n r_k(1/x_n).
// J_k is extended to t < 0 by J_k(-t) = (-1)^k J_k(t).
struct SystemSpec {
    SystemKind kind = SystemKind::classical;
    double nu = 0;
    double q = 0;  // q-system only
    int truncation = 40;

    std::function<void(double x, std::span<double> out)> p_all;  // p_0 .. p_{size-1}
    std::function<void(double t, std::span<double> out)> J_all;  // J_0 .. J_{size-1}
    OrderFamily family;                   // J_k(t) = weight(k) family(t, nu+k), t >= 0
    std::function<double(int k)> weight;
    std::function<double(int k, double y)> r;
    std::function<MeasureRule(const QuadRule&)> measure;

    std::vector<double> nodes;
    std::vector<double> lambdas;
    double origin_scale = 1;  // lim_{t->0+} t^-nu J_0(t)

    cplx u(int k) const;
    double p(int k, double x) const;
    double J(int k, double t) const;
    MeasureRule measure_rule(const QuadRule& rule) const { return measure(rule); }
};

SystemSpec make_classical_system(double nu, int truncation = 40, int node_count = 30);
SystemSpec make_q_system(double nu, QBase q, int truncation = 40, int node_count = 20);

// Generic system from a recurrence: J_k(t) = interpolator_weight(spec, k) J(t; nu+k),
// r_k(y) = interpolator_weight / (C_nu...C_{nu+k-1}) f_{k-1,nu+1}(y), lambda_n = -J(x_n; nu-1).
// `origin_scale` is lim t^-nu J(t; nu).
SystemSpec make_recurrence_system(const RecurrenceSpec& spec, const OrderFamily& J,
                                  std::function<void(double, std::span<double>)> p_all,
                                  std::function<MeasureRule(const QuadRule&)> measure,
                                  std::vector<double> nodes, double origin_scale, int truncation = 40);

struct KernelValue {
    cplx value;
    double tail_estimate = 0;  // |last included term|
    bool tail_warning = false; // tail_estimate > 1e-10 |value|
};

// K(x,t) = sum_{k<K} u_k J_k(t) p_k(x).
class KernelEvaluator {
public:
    explicit KernelEvaluator(SystemSpec spec);
    KernelEvaluator(SystemSpec spec, int truncation);

    const SystemSpec& spec() const { return spec_; }
    int truncation() const { return truncation_; }

    KernelValue operator()(double x, double t) const;
    // u_k J_k(t), k < K.
    std::vector<cplx> coefficients(double t) const;
    // x -> K(x,t).
    Function section(double t) const;
    // sum_k c_k p_k(x).
    cplx synthesize(std::span<const cplx> c, double x) const;

private:
    SystemSpec spec_;
    int truncation_;
};

KernelValue kernel_eval(const KernelEvaluator& kernel, double x, double t);

// (Fu)(t) = int u(x) K(x,t) dmu(x), stored through the moments <u, p_k>.
class Transform {
public:
    Transform(const KernelEvaluator& kernel, std::vector<cplx> moments);

    cplx operator()(double t) const;
    const std::vector<cplx>& moments() const { return moments_; }
    const KernelEvaluator& kernel() const { return kernel_; }
    // lim_{t->0+} t^-nu (Fu)(t).
    cplx origin_value() const;

private:
    KernelEvaluator kernel_;
    std::vector<cplx> moments_;
};

Transform transform(const Function& u, const KernelEvaluator& kernel, const QuadRule& rule);

// <Fu, Fv> through the image coefficients; equals <u, v> on span{p_k, k<K}.
cplx image_inner(const Transform& f, const Transform& g);
// <u, v> in L2(mu) for the system measure.
cplx system_inner(const Function& u, const Function& v, const SystemSpec& spec, const QuadRule& rule);

// int K(x,t) conj(K(x,s)) dmu(x) by quadrature.
cplx reproducing_kernel(const KernelEvaluator& kernel, double t, double s, const QuadRule& rule);
// sum_{k<K} J_k(t) J_k(s).
double reproducing_kernel_series(const KernelEvaluator& kernel, double t, double s);
// Christoffel-Darboux closed form of the untruncated kernel (classical and q systems).
double reproducing_kernel_closed(const SystemSpec& spec, double t, double s);
// k(t, s) / k(s, s) from the closed form.
double sampling_basis(const SystemSpec& spec, double s, double t);

// (pi sqrt(ts)/2) sin(t-s)/(t-s).
double reproducing_kernel_sinc(double t, double s);
// Ratio sinc display / our kernel at nu = 1/2.
double sinc_display_constant();
// Ratio of the displayed K^nu to ours.
double classical_display_constant(double nu);
// Least-squares ratio reproducing_kernel_sinc / reproducing_kernel over a grid of (t, s).
double fit_display_constant(const KernelEvaluator& kernel, std::span<const double> ts, const QuadRule& rule);

// Kernel of the nu = 1/2 q-system in closed form (2phi2).
double reproducing_kernel_q_closed(double t, double s, QBase q);

struct IsmailStanton {
    cplx lhs, rhs;
};
IsmailStanton ismail_stanton(cplx alpha, cplx beta, cplx gamma, QBase q, const QuadRule& rule);

enum class BasisKind { bessel, q_bessel, recurrence };

// f(t) = sum a_n B_n(t): J_{nu+n}(t), J_{nu+n}(2t; q), or J(t; nu+n).
struct Expansion {
    BasisKind basis = BasisKind::bessel;
    double nu = 0;
    double q = 0;
    std::vector<cplx> coefficients;
    std::function<double(int n, double t)> element;

    cplx evaluate(double t) const;
    double energy() const;
};

Expansion neumann_coefficients(const Function& u, const SystemSpec& system, const QuadRule& rule, int count);

// Node 0 stands for the regularized origin sample lim t^-nu f(t).
struct SampleSet {
    std::vector<double> nodes;
    std::vector<cplx> values;
};

// 0, +-x_1 .. +-x_count.
std::vector<double> sampling_nodes(const SystemSpec& spec, int count);
SampleSet sample(const Transform& f, int count);

cplx sampling_reconstruct(const SampleSet& samples, const KernelEvaluator& kernel, double t);

}  // namespace qrk
