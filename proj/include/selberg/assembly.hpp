#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "selberg/logvalue.hpp"
#include "selberg/params.hpp"

namespace selberg {

struct SeriesEvaluation {
    double value = 0.0;
    double tail_bound = 0.0;
    int terms_used = 0;
    bool via_reflection = false;  // evaluated at 1-x with lambda1 <-> lambda2
};

struct EvaluatorOptions {
    double tol = 1e-13;  // relative truncation target per Frobenius solution
    // Largest x at which the expansion about 0 is used; > 1/2 so the two
    // expansions overlap.
    double x_max = 0.6;
    // Resonant (or nearly resonant) exponents and lambda1-removable poles
    // of the weights are handled by evaluating at lambda1 +- h eps, h = 1..3,
    // and extrapolating; the result is analytic in lambda1.
    double eps = 1e-3;
    double resonance_trigger = 1e-6;
    bool perturb_poles = true;
};

inline EvaluatorOptions no_pole_perturbation() {
    EvaluatorOptions o;
    o.perturb_poles = false;
    return o;
}

/// One expansion of all I_q about x = 0:
///   I_q(x) = sum_k W(k,q) x^{sigma_k} sum_l p_{l,k} x^l.
class ZeroExpansion {
public:
    ZeroExpansion(const Params& p, const EvaluatorOptions& opt);

    // value (or derivative) of I_q for every q, with tail bounds
    void evaluate(double x, bool derivative, std::vector<double>& out,
                  std::vector<double>& tail) const;

    bool perturbed() const { return branches_.size() > 1; }
    int terms() const { return terms_; }

private:
    struct Branch {
        double factor;
        std::vector<double> sigma;
        std::vector<std::vector<double>> series;  // p_{l,k}
        Eigen::MatrixXd W;                         // W(k, q)
    };
    static Branch build(const Params& p, const EvaluatorOptions& opt, double factor);

    int N_;
    int terms_ = 0;
    std::vector<Branch> branches_;
};

/// I_q(x) (or its x-derivative) for q = 0..N at one point.
struct IntegralSet {
    std::vector<double> value;
    std::vector<double> tail_bound;
    int terms_used = 0;
    bool via_reflection = false;

    SeriesEvaluation at(int q) const {
        return {value[q], tail_bound[q], terms_used, via_reflection};
    }
};

/// I_q^(alpha)(x) for all q, expanded about 0 for x <= 1/2 and about 1
/// (through the reflection t -> 1-t) above. Built once, evaluated anywhere.
class SplitIntegrals {
public:
    explicit SplitIntegrals(const Params& p, const EvaluatorOptions& opt = {});

    const Params& params() const { return p_; }
    IntegralSet all(double x, bool derivative = false) const;
    // Forces the expansion about 0 (requires x <= x_max).
    IntegralSet all_direct(double x, bool derivative = false) const;
    SeriesEvaluation value(int q, double x) const { return all(x).at(q); }
    SeriesEvaluation derivative(int q, double x) const { return all(x, true).at(q); }
    bool perturbed() const { return zero_.perturbed() || one_.perturbed(); }

private:
    Params p_;
    EvaluatorOptions opt_;
    ZeroExpansion zero_;
    ZeroExpansion one_;  // expansion of the reflected problem
};

SeriesEvaluation I_q(int q, double x, const Params& p, const EvaluatorOptions& opt = {});

/// Probability that exactly n of the N points lie in (0, x); alpha is forced to 1.
double gap_prob(int n, double x, const Params& p);

/// Density of the (n+1)-st smallest point, n = 0..N-1, on [0, 1]. Endpoint
/// values are the limits (possibly +inf).
double order_stat_density(int n, double x, const Params& p);
double order_stat_density(int n, double x, const SplitIntegrals& unit_alpha);

/// <prod |t_j - x|^{2 mu}> for 0 < x < 1 (alpha of p is ignored).
SeriesEvaluation moment_average(double x, double mu, const Params& p,
                                EvaluatorOptions opt = no_pole_perturbation());

struct MomentAsymptotic {
    double exponent = 0.0;
    bool log_factor = false;
    LogValue coefficient;
    int l = 0;

    // coefficient * x^exponent (* log(1/x))
    double at(double x) const;
};

/// Leading small-x behaviour for alpha = 2 mu + 1 strictly inside a window.
MomentAsymptotic moment_asymptotic(double mu, const Params& p);

/// Index l of the window containing alpha; throws WindowBoundary within 1e-9
/// of an endpoint.
int moment_window(double alpha, const Params& p);

/// Logarithmic case alpha = -2 l lambda - lambda1, l in 0..N-1 (alpha of p is
/// replaced by this value).
MomentAsymptotic moment_asymptotic_log(int l, const Params& p);

/// The weight h(l) multiplying x^{sigma_l} in the moment expansion, at the
/// alpha carried by p.
LogValue moment_weight(int l, const Params& p);

struct CharPolynomial {
    int nu = 1;
    std::vector<double> coeffs;  // highest degree first, coeffs[0] = 1
    Params params;
    double truncation_residual = 0.0;  // max |p_l| beyond the degree, relative

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double operator()(double x) const;
};

/// <prod_j (x - t_j)^nu> as a monic polynomial of degree nu N.
CharPolynomial char_polynomial(int nu, const Params& p);

/// All roots, found in MPFR arithmetic (see precise.hpp) with residual
/// |P(z)| / ||coeffs||_2 <= 1e-8 enforced.
std::vector<std::complex<double>> poly_zeros(const CharPolynomial& cp);

}  // namespace selberg
