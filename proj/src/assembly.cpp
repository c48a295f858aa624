#include "selberg/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "selberg/connection.hpp"
#include "selberg/errors.hpp"
#include "selberg/fuchsian.hpp"
#include "selberg/parallel.hpp"
#include "selberg/precise.hpp"
#include "selberg/roots.hpp"
#include "selberg/selberg_forms.hpp"

namespace selberg {
namespace {

void check_open_unit(double x, const char* what) {
    if (!(x > 0.0 && x < 1.0)) {
        throw PreconditionError(std::string(what) + ": need 0 < x < 1");
    }
}

double selberg_norm(const Params& p) {
    return selberg({p.N, p.lambda1, p.lambda2, p.lambda}).to_double();
}

}  // namespace

ZeroExpansion::Branch ZeroExpansion::build(const Params& p, const EvaluatorOptions& opt,
                                           double factor) {
    const int n = p.N + 1;
    Branch b;
    b.factor = factor;
    b.W = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        for (int q = 0; q <= k; ++q) b.W(k, q) = leading_coeff(k, q, p).to_double();
    }
    b.sigma.resize(n);
    b.series.resize(n);
    // perturbed branches cancel against each other, so resolve them further
    const double tol = factor == 1.0 ? opt.tol : opt.tol * 1e-3;
    for_each_index(n, [&](int k) {
        const auto s = frobenius_adaptive(k, p, opt.x_max, tol);
        b.sigma[k] = s.sigma_k;
        b.series[k].resize(s.L + 1);
        for (int l = 0; l <= s.L; ++l) b.series[k][l] = s.coeffs(0, l);
    });
    return b;
}

ZeroExpansion::ZeroExpansion(const Params& p, const EvaluatorOptions& opt) : N_(p.N) {
    bool perturb = !detect_resonance(p, kMaxTruncation, opt.resonance_trigger).empty();
    if (!perturb) {
        try {
            branches_.push_back(build(p, opt, 1.0));
        } catch (const SingularSolve&) {
            perturb = true;
        } catch (const PoleError&) {
            if (!opt.perturb_poles) throw;
            perturb = true;
        }
    }
    if (perturb) {
        branches_.clear();
        // Symmetric averages A(h) = f + c2 h^2 + c4 h^4 + ... at h = e, 2e, 3e,
        // combined as 1.5 A(e) - 0.6 A(2e) + 0.1 A(3e) to cancel c2 and c4.
        const double e = opt.eps;
        const double level_weight[3] = {1.5, -0.6, 0.1};
        for (int h = 1; h <= 3; ++h) {
            for (int sgn : {1, -1}) {
                branches_.push_back(build(p.with_lambda1(p.lambda1 + sgn * h * e), opt,
                                          0.5 * level_weight[h - 1]));
            }
        }
    }
    for (const auto& b : branches_) {
        for (const auto& s : b.series) terms_ = std::max(terms_, static_cast<int>(s.size()));
    }
}

void ZeroExpansion::evaluate(double x, bool derivative, std::vector<double>& out,
                             std::vector<double>& tail) const {
    const int n = N_ + 1;
    out.assign(n, 0.0);
    tail.assign(n, 0.0);
    std::vector<double> terms;
    const bool cancelling = branches_.size() > 1;
    for (const auto& b : branches_) {
        for (int k = 0; k < n; ++k) {
            const auto& c = b.series[k];
            const double sk = b.sigma[k];
            terms.resize(c.size());
            double sum = 0.0, abs_sum = 0.0, xl = 1.0;
            for (std::size_t l = 0; l < c.size(); ++l) {
                const double t = c[l] * xl * (derivative ? sk + l : 1.0);
                sum += t;
                terms[l] = std::abs(t);
                abs_sum += terms[l];
                xl *= x;
            }
            const double scale = derivative ? std::pow(x, sk - 1.0) : std::pow(x, sk);
            const double value = scale * sum;
            double err = scale * geometric_tail(terms);
            if (cancelling) err += 8 * std::numeric_limits<double>::epsilon() * scale * abs_sum;
            for (int q = 0; q <= k; ++q) {
                const double w = b.factor * b.W(k, q);
                if (w == 0.0) continue;
                out[q] += w * value;
                tail[q] += std::abs(w) * err;
            }
        }
    }
}

SplitIntegrals::SplitIntegrals(const Params& p, const EvaluatorOptions& opt)
    : p_(p), opt_(opt), zero_(p, opt), one_(p.swapped(), opt) {}

IntegralSet SplitIntegrals::all(double x, bool derivative) const {
    check_open_unit(x, "SplitIntegrals");
    if (x <= 0.5) return all_direct(x, derivative);
    IntegralSet r;
    std::vector<double> v, t;
    one_.evaluate(1.0 - x, derivative, v, t);
    const int n = p_.N + 1;
    r.value.resize(n);
    r.tail_bound.resize(n);
    for (int q = 0; q < n; ++q) {
        r.value[q] = derivative ? -v[n - 1 - q] : v[n - 1 - q];
        r.tail_bound[q] = t[n - 1 - q];
    }
    r.terms_used = one_.terms();
    r.via_reflection = true;
    return r;
}

IntegralSet SplitIntegrals::all_direct(double x, bool derivative) const {
    check_open_unit(x, "SplitIntegrals");
    if (x > opt_.x_max) {
        throw PreconditionError("expansion about 0 was built only up to x_max");
    }
    IntegralSet r;
    zero_.evaluate(x, derivative, r.value, r.tail_bound);
    r.terms_used = zero_.terms();
    return r;
}

SeriesEvaluation I_q(int q, double x, const Params& p, const EvaluatorOptions& opt) {
    if (q < 0 || q > p.N) throw PreconditionError("I_q: need 0 <= q <= N");
    check_open_unit(x, "I_q");
    return SplitIntegrals(p, opt).value(q, x);
}

double gap_prob(int n, double x, const Params& p) {
    if (n < 0 || n > p.N) throw PreconditionError("gap_prob: need 0 <= n <= N");
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    if (x == 1.0) return n == p.N ? 1.0 : 0.0;
    check_open_unit(x, "gap_prob");
    const Params pa = p.with_alpha(1.0);
    return SplitIntegrals(pa).value(n, x).value / selberg_norm(pa);
}

namespace {

// Limit of the order-statistic density at x -> 0: the sum of I_k for k > n
// starts with leading_coeff(n+1, n+1) x^{sigma_{n+1}}.
double density_at_zero(int n, const Params& pa) {
    const double s = sigma(n + 1, pa);
    const double e = s - 1.0;
    if (e > 1e-12) return 0.0;
    if (e < -1e-12) return std::numeric_limits<double>::infinity();
    return s * leading_coeff(n + 1, n + 1, pa).to_double() / selberg_norm(pa);
}

}  // namespace

double order_stat_density(int n, double x, const SplitIntegrals& si) {
    const Params& pa = si.params();
    if (n < 0 || n > pa.N - 1) throw PreconditionError("order_stat_density: need 0 <= n <= N-1");
    if (pa.alpha != 1.0) throw PreconditionError("order_stat_density: evaluator must have alpha = 1");
    if (!(x >= 0.0 && x <= 1.0)) throw PreconditionError("order_stat_density: need 0 <= x <= 1");
    if (x == 0.0) return density_at_zero(n, pa);
    if (x == 1.0) return density_at_zero(pa.N - 1 - n, pa.swapped());
    const auto d = si.all(x, true);
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) acc += d.value[k];
    return -acc / selberg_norm(pa);
}

double order_stat_density(int n, double x, const Params& p) {
    return order_stat_density(n, x, SplitIntegrals(p.with_alpha(1.0)));
}

SeriesEvaluation moment_average(double x, double mu, const Params& p, EvaluatorOptions opt) {
    check_open_unit(x, "moment_average");
    if (mu == 0.0) return {1.0, 0.0, 0, false};
    const Params pm = p.with_alpha(2.0 * mu + 1.0);
    const double norm = selberg_norm(p);
    bool on_boundary = false;
    for (int l = 0; l < p.N; ++l) {
        on_boundary |= std::abs(pm.alpha + 2.0 * l * p.lambda + p.lambda1) < 1e-9;
    }
    IntegralSet r;
    try {
        r = SplitIntegrals(pm, opt).all(x);
    } catch (const PoleError& e) {
        if (on_boundary || opt.perturb_poles) {
            throw PoleError(std::string(e.what()) +
                            "; at alpha = -2 l lambda - lambda1 use the logarithmic asymptotic form");
        }
        // away from the log boundaries the pole is removable in lambda1
        opt.perturb_poles = true;
        r = SplitIntegrals(pm, opt).all(x);
    }
    SeriesEvaluation out{0.0, 0.0, r.terms_used, r.via_reflection};
    for (std::size_t q = 0; q < r.value.size(); ++q) {
        out.value += r.value[q];
        out.tail_bound += r.tail_bound[q];
    }
    out.value /= norm;
    out.tail_bound /= std::abs(norm);
    return out;
}

double MomentAsymptotic::at(double x) const {
    double v = coefficient.to_double() * std::pow(x, exponent);
    if (log_factor) v *= std::log(1.0 / x);
    return v;
}

int moment_window(double alpha, const Params& p) {
    // boundaries b_l = -2 l lambda - lambda1 decrease with l
    for (int l = 0; l < p.N; ++l) {
        const double b = -2.0 * l * p.lambda - p.lambda1;
        if (std::abs(alpha - b) < 1e-9) {
            std::ostringstream os;
            os << "alpha = " << alpha << " sits on the boundary -2*" << l
               << "*lambda - lambda1 between windows; use the logarithmic form with l=" << l;
            throw WindowBoundary(os.str());
        }
        if (alpha > b) return l;
    }
    return p.N;
}

LogValue moment_weight(int l, const Params& p) {
    double csum = 0.0;
    for (int q = 0; q <= l; ++q) csum += c_entry(l, q, p);
    LogValue v = LogValue::from_log(1, log_binomial(p.N, l));
    v *= selberg({l, p.lambda1, p.alpha - 1.0, p.lambda});
    v *= selberg({p.N - l, p.lambda1 + p.alpha - 1.0 + 2.0 * l * p.lambda, p.lambda2, p.lambda});
    v /= selberg({p.N, p.lambda1, p.lambda2, p.lambda});
    return v * LogValue::from_double(csum);
}

MomentAsymptotic moment_asymptotic(double mu, const Params& p) {
    const Params pm = p.with_alpha(2.0 * mu + 1.0);
    const int l = moment_window(pm.alpha, pm);
    return {sigma(l, pm), false, moment_weight(l, pm), l};
}

MomentAsymptotic moment_asymptotic_log(int l, const Params& p) {
    if (l < 0 || l > p.N - 1) {
        throw PreconditionError("moment_asymptotic_log: need 0 <= l <= N-1");
    }
    const Params pm = p.with_alpha(-2.0 * l * p.lambda - p.lambda1);
    double csum = 0.0;
    for (int q = 0; q <= l; ++q) csum += c_entry(l, q, pm);
    LogValue v = LogValue::from_log(1, log_binomial(pm.N, l));
    v *= selberg({l, pm.lambda1, pm.alpha - 1.0, pm.lambda});
    // S_{N-l}(l1 + alpha - 1 + 2 l lambda, ...) / Gamma(l1 + alpha + 2 l lambda)
    v *= selberg_reduced(
        {pm.N - l, pm.lambda1 + pm.alpha - 1.0 + 2.0 * l * pm.lambda, pm.lambda2, pm.lambda});
    v /= selberg({pm.N, pm.lambda1, pm.lambda2, pm.lambda});
    v *= LogValue::from_double(csum);
    return {sigma(l, pm), true, v, l};
}

double CharPolynomial::operator()(double x) const {
    double acc = 0.0;
    for (double c : coeffs) acc = acc * x + c;
    return acc;
}

CharPolynomial char_polynomial(int nu, const Params& p) {
    if (nu < 1) throw PreconditionError("char_polynomial: nu must be >= 1");
    Params sub = p;
    sub.lambda2 = nu;
    sub.alpha = p.lambda2 + 1.0;
    const int degree = nu * p.N;
    const int extra = 4;
    const auto s = frobenius(p.N, sub, degree + extra);

    CharPolynomial cp;
    cp.nu = nu;
    cp.params = p;
    cp.coeffs.resize(degree + 1);
    double scale = 0.0;
    for (int l = 0; l <= degree; ++l) {
        cp.coeffs[l] = s.scalar_coefficient(l);
        scale = std::max(scale, std::abs(cp.coeffs[l]));
    }
    double beyond = 0.0;
    for (int l = degree + 1; l <= degree + extra; ++l) {
        beyond = std::max(beyond, std::abs(s.scalar_coefficient(l)));
    }
    cp.truncation_residual = beyond / scale;
    if (cp.truncation_residual > 1e-9) {
        std::ostringstream os;
        os << "series coefficients beyond degree " << degree << " do not vanish (relative "
           << cp.truncation_residual << ")";
        throw ConvergenceFailure(os.str());
    }
    return cp;
}

std::vector<std::complex<double>> poly_zeros(const CharPolynomial& cp) {
    const PreciseZeros z = char_poly_zeros_precise(cp.nu, cp.params);
    if (!(z.max_residual <= 1e-8)) {
        std::ostringstream os;
        os << "largest root residual " << z.max_residual << " exceeds 1e-8";
        throw ConvergenceFailure(os.str());
    }
    return z.roots;
}

}  // namespace selberg
