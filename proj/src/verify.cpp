#include "selberg/verify.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <sstream>

#include "selberg/assembly.hpp"
#include "selberg/errors.hpp"
#include "selberg/fuchsian.hpp"
#include "selberg/monodromy.hpp"
#include "selberg/oracle.hpp"
#include "selberg/precise.hpp"
#include "selberg/roots.hpp"
#include "selberg/selberg_forms.hpp"

namespace selberg {
namespace {

// Uniform draws from 53 random bits, so draws do not depend on the standard
// library's distribution implementation.
class Draw {
public:
    Draw(std::uint64_t seed, int check) {
        std::seed_seq s{seed, static_cast<std::uint64_t>(check)};
        rng_.seed(s);
    }
    double uniform(double a, double b) {
        return a + (b - a) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }
    int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % (hi - lo + 1)); }

private:
    std::mt19937_64 rng_;
};

double rel_err(double got, double want) {
    const double d = std::abs(got - want);
    return want == 0.0 ? d : d / std::abs(want);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

bool quick(const VerifyOptions& o) { return o.level == VerifyLevel::quick; }

// Generic admissible parameters away from the edges of the domain.
Params draw_params(Draw& d, int N, double alpha) {
    return Params::make(N, d.uniform(-0.5, 2.0), d.uniform(-0.5, 2.0), d.uniform(0.25, 2.0),
                        alpha);
}

CheckResult ac1(const VerifyOptions& o) {
    CheckResult r{"AC1", "closed-form Selberg integral vs independent oracle", true, 0, 1e-8, "", 0};
    Draw d(o.seed, 1);
    const int draws = quick(o) ? 4 : 20;
    const long samples = 1'000'000;
    double worst_sigma = 0.0;
    for (int n = 1; n <= 3; ++n) {
        for (int i = 0; i < draws; ++i) {
            const Params p = draw_params(d, n, 1.0);
            const double exact = selberg({n, p.lambda1, p.lambda2, p.lambda}).to_double();
            if (n <= 2) {
                QuadOptions q;
                q.tol = 1e-12;
                const double e = rel_err(quad_selberg(p, q).value, exact);
                r.worst = std::max(r.worst, e);
            } else {
                const auto mc = mc_selberg(p, samples, o.seed + i);
                worst_sigma = std::max(worst_sigma, std::abs(mc.value - exact) / mc.error_estimate);
            }
        }
    }
    r.passed = r.worst <= r.tolerance && worst_sigma <= 3.0;
    r.detail = "n=1,2 quadrature worst rel " + fmt(r.worst) + "; n=3 Monte Carlo (1e6 samples) worst " +
               fmt(worst_sigma) + " stderr (bound 3)";
    return r;
}

CheckResult ac2(const VerifyOptions& o) {
    CheckResult r{"AC2", "ODE residual of the Frobenius solutions", true, 0, 1e-9, "", 0};
    Draw d(o.seed, 2);
    const int sets = quick(o) ? 4 : 10;
    int made = 0, rejected = 0;
    while (made < sets) {
        const Params p = draw_params(d, d.integer(1, 5), d.uniform(0.2, 2.0));
        if (!detect_resonance(p, kMaxTruncation, 1e-6).empty()) {
            ++rejected;
            continue;
        }
        ++made;
        for (double x : {0.1, 0.3}) {
            std::vector<FrobeniusSolution> sols;
            for (int k = 0; k <= p.N; ++k) sols.push_back(frobenius_adaptive(k, p, x, 1e-14));
            r.worst = std::max(r.worst, ode_residual(sols, p, x));
        }
    }
    r.passed = r.worst <= r.tolerance;
    r.detail = std::to_string(sets) + " non-resonant sets (" + std::to_string(rejected) +
               " resonant draws skipped), worst residual " + fmt(r.worst);
    return r;
}

CheckResult ac3(const VerifyOptions& o) {
    CheckResult r{"AC3", "I_q series vs nested tanh-sinh, N=2", true, 0, 1e-8, "", 0};
    Draw d(o.seed, 3);
    const int sets = quick(o) ? 3 : 10;
    QuadOptions q;
    q.tol = 1e-12;
    for (int i = 0; i < sets; ++i) {
        const Params p = draw_params(d, 2, d.uniform(0.2, 2.0));
        const SplitIntegrals s(p);
        for (double x : {0.2, 0.3, 0.4}) {
            const auto v = s.all(x);
            for (int k = 0; k <= 2; ++k) {
                r.worst = std::max(r.worst, rel_err(v.value[k], quad_Iq(k, x, p, q).value));
            }
        }
    }
    r.passed = r.worst <= r.tolerance;
    r.detail = std::to_string(sets) + " sets x 3 points x 3 q, worst rel " + fmt(r.worst);
    return r;
}

CheckResult ac4(const VerifyOptions& o) {
    CheckResult r{"AC4", "sum rule sum_q I_q = S_N at alpha=1", true, 0, 1e-10, "", 0};
    Draw d(o.seed, 4);
    for (int N = 2; N <= 6; ++N) {
        const Params p = draw_params(d, N, 1.0);
        const double S = selberg({N, p.lambda1, p.lambda2, p.lambda}).to_double();
        const SplitIntegrals s(p);
        for (int i = 1; i <= 9; ++i) {
            const auto v = s.all(0.1 * i);
            double sum = 0.0;
            for (double t : v.value) sum += t;
            r.worst = std::max(r.worst, rel_err(sum, S));
        }
    }
    r.passed = r.worst <= r.tolerance;
    r.detail = "N=2..6 at x=0.1..0.9, worst rel " + fmt(r.worst);
    return r;
}

CheckResult ac5(const VerifyOptions&) {
    CheckResult r{"AC5", "median density, N=5, lambda=1/3, closed form", true, 0, 1e-6, "", 0};
    const Params p = Params::make(5, 1.0, 1.0, Rational::make(1, 3), 1.0);
    const SplitIntegrals s(p);
    const double logB = beta_fn(8.0, 8.0).logmag;
    for (int i = 1; i <= 9; ++i) {
        const double x = 0.1 * i;
        const double want = std::exp(7 * std::log(x) + 7 * std::log1p(-x) - logB);
        r.worst = std::max(r.worst, rel_err(order_stat_density(2, x, s), want));
    }
    r.passed = r.worst <= r.tolerance;
    r.detail = "third of five points (0-based n=2) vs x^7(1-x)^7/B(8,8) on x=0.1..0.9, worst rel " +
               fmt(r.worst) + (s.perturbed() ? "; resonance device active" : "");
    return r;
}

CheckResult ac6(const VerifyOptions& o) {
    CheckResult r{"AC6", "reflection symmetry of order-statistic densities, N=4", true, 0, 1e-8, "", 0};
    Draw d(o.seed, 6);
    const int sets = quick(o) ? 2 : 5;
    for (int i = 0; i < sets; ++i) {
        const Params p = draw_params(d, 4, 1.0);
        const SplitIntegrals a(p), b(p.swapped());
        for (double x : {0.15, 0.3, 0.45, 0.6, 0.85}) {
            for (int n = 0; n < 4; ++n) {
                const double lhs = order_stat_density(n, 1.0 - x, a);
                const double rhs = order_stat_density(3 - n, x, b);
                r.worst = std::max(r.worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
        }
    }
    r.passed = r.worst <= r.tolerance;
    r.detail = std::to_string(sets) + " sets, p(n;1-x) vs swapped p(3-n;x), worst " + fmt(r.worst);
    return r;
}

CheckResult ac7(const VerifyOptions&) {
    CheckResult r{"AC7", "nu=1 zeros vs Jacobi zeros", true, 0, 1e-8, "", 0};
    double literal = 0.0;
    for (int N : {3, 6, 10}) {
        const Params p = Params::make(N, 0.7, 1.9, 0.8, 1.0);
        const auto z = poly_zeros(char_polynomial(1, p));
        auto compare = [&](double a, double b) {
            const auto j = jacobi_zeros(N, a, b);
            double w = 0.0;
            for (int i = 0; i < N; ++i) {
                // ascending t maps to descending x = (1 - t)/2
                const double x = 0.5 * (1.0 - j[N - 1 - i]);
                w = std::max({w, std::abs(z[i].real() - x), std::abs(z[i].imag())});
            }
            return w;
        };
        r.worst = std::max(r.worst, compare((p.lambda1 + 1) / p.lambda - 1, (p.lambda2 + 1) / p.lambda - 1));
        literal = std::max(literal, compare((p.lambda1 + 1) / p.lambda - 1, (p.lambda1 + 1) / p.lambda - 1));
    }
    r.passed = r.worst <= r.tolerance;
    r.detail = "N=3,6,10 worst " + fmt(r.worst) + "; with both Jacobi parameters from lambda1 (reported only) " +
               fmt(literal);
    return r;
}

CheckResult ac8(const VerifyOptions& o) {
    CheckResult r{"AC8", "nu=2, N=2 characteristic polynomial vs 2D quadrature", true, 0, 1e-8, "", 0};
    Draw d(o.seed, 8);
    const int sets = quick(o) ? 2 : 4;
    QuadOptions q;
    q.tol = 1e-12;
    for (int i = 0; i < sets; ++i) {
        const Params p = draw_params(d, 2, 1.0);
        const CharPolynomial c = char_polynomial(2, p);
        for (double x : {1.2, 1.5, 2.0}) {
            r.worst = std::max(r.worst, rel_err(c(x), quad_char_average(x, 2, p, q).value));
        }
    }
    r.passed = r.worst <= r.tolerance;
    r.detail = std::to_string(sets) + " sets at x=1.2,1.5,2.0, worst rel " + fmt(r.worst);
    return r;
}

CheckResult ac9(const VerifyOptions& o) {
    CheckResult r{"AC9", "monodromy product, spectrum and lambda1-periodicity", true, 0, 1e-10, "", 0};
    Draw d(o.seed, 9);
    const int sets = quick(o) ? 4 : 10;
    int made = 0, skipped = 0;
    double defect = 0, spectrum = 0, period = 0;
    while (made < sets) {
        const Params p = draw_params(d, d.integer(1, 6), d.uniform(0.2, 2.0));
        MonodromyTriple m, m1;
        try {
            m = monodromy_triple(p);
            m1 = monodromy_triple(p.with_lambda1(p.lambda1 + 1.0));
        } catch (const PoleError&) {
            ++skipped;
            continue;
        } catch (const IllConditioned&) {
            ++skipped;
            continue;
        }
        ++made;
        defect = std::max(defect, product_defect(m));
        const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(m.M0, false).eigenvalues();
        const Eigen::MatrixXcd D = d_matrix(p);
        std::vector<char> used(ev.size(), 0);
        for (int i = 0; i < D.rows(); ++i) {
            int best = -1;
            double bd = INFINITY;
            for (int j = 0; j < ev.size(); ++j) {
                if (!used[j] && std::abs(ev(j) - D(i, i)) < bd) {
                    bd = std::abs(ev(j) - D(i, i));
                    best = j;
                }
            }
            used[best] = 1;
            spectrum = std::max(spectrum, bd);
        }
        const double scale = std::max(1.0, m.M0.cwiseAbs().maxCoeff());
        period = std::max(period, (m.M0 - m1.M0).cwiseAbs().maxCoeff() / scale);
    }
    r.worst = std::max({defect, spectrum, period});
    r.passed = r.worst <= r.tolerance;
    r.detail = std::to_string(sets) + " sets (" + std::to_string(skipped) +
               " pole/ill-conditioned draws skipped): product " + fmt(defect) + ", spectrum " +
               fmt(spectrum) + ", periodicity " + fmt(period);
    return r;
}

CheckResult ac10(const VerifyOptions& o) {
    CheckResult r{"AC10", "small-x moment asymptotics, N=1", true, 0, 1e-2, "", 0};
    Draw d(o.seed, 10);
    const int sets = quick(o) ? 2 : 3;
    QuadOptions q;
    q.tol = 1e-12;
    double slope_worst = 0.0, log_worst = 0.0, log_slope_worst = 0.0;
    auto slope_check = [&](const Params& p, double alpha) {
        const double mu = 0.5 * (alpha - 1.0);
        const MomentAsymptotic a = moment_asymptotic(mu, p);
        const double m3 = quad_moment(1e-3, mu, p, q).value;
        const double m4 = quad_moment(1e-4, mu, p, q).value;
        const double slope = std::log(m3 / m4) / std::log(10.0);
        slope_worst = std::max(slope_worst, std::abs(slope - a.exponent));
    };
    for (int i = 0; i < sets; ++i) {
        // alpha above the window boundary -lambda1: limit is finite
        const double l1 = d.uniform(-0.6, 1.5);
        const double alpha = std::max(0.1, 0.7 - l1) + d.uniform(0.0, 1.0);
        slope_check(Params::make(1, l1, d.uniform(-0.5, 2.0), 1.0, alpha), alpha);
    }
    for (int i = 0; i < sets; ++i) {
        // alpha below -lambda1: decays like x^{lambda1 + alpha}
        const double l1 = d.uniform(-0.97, -0.8);
        const double alpha = d.uniform(0.02, -l1 - 0.7);
        slope_check(Params::make(1, l1, d.uniform(-0.5, 2.0), 1.0, alpha), alpha);
    }
    for (int i = 0; i < sets; ++i) {
        // boundary alpha = -lambda1: logarithmic growth
        const double l1 = d.uniform(-0.9, -0.1);
        const Params p = Params::make(1, l1, d.uniform(-0.5, 2.0), 1.0, -l1);
        const MomentAsymptotic a = moment_asymptotic_log(0, p);
        const double mu = 0.5 * (-l1 - 1.0);
        const double x = 1e-6;
        const double m6 = quad_moment(x, mu, p, q).value;
        log_worst = std::max(log_worst, rel_err(m6 / std::log(1.0 / x), a.coefficient.to_double()));
        // diagnostic only: the slope in log(1/x) cancels the O(1) constant
        const double m9 = quad_moment(1e-9, mu, p, q).value;
        const double m12 = quad_moment(1e-12, mu, p, q).value;
        log_slope_worst = std::max(log_slope_worst,
                                   rel_err((m12 - m9) / std::log(1e3), a.coefficient.to_double()));
    }
    // report whichever part is closer to (or past) its bound
    if (log_worst / 0.05 > slope_worst / 1e-2) {
        r.worst = log_worst;
        r.tolerance = 0.05;
    } else {
        r.worst = slope_worst;
    }
    r.passed = slope_worst <= 1e-2 && log_worst <= 0.05;
    r.detail = "slope worst " + fmt(slope_worst) + " (bound 1e-2); log-case coefficient worst rel " +
               fmt(log_worst) + " (bound 0.05); slope of <.> in log(1/x) over 1e-9..1e-12 matches it to " +
               fmt(log_slope_worst) + " (not asserted)";
    return r;
}

// Near-axis roots grouped into arcs by real part; each arc's crossing is the
// real part of its member closest to the axis.
std::vector<double> axis_crossings(const std::vector<std::complex<double>>& z, double band,
                                   double gap) {
    std::vector<std::complex<double>> near;
    for (auto v : z) {
        if (std::abs(v.imag()) < band) near.push_back(v);
    }
    std::sort(near.begin(), near.end(), [](auto a, auto b) { return a.real() < b.real(); });
    std::vector<double> out;
    double best_im = INFINITY;
    for (std::size_t i = 0; i < near.size(); ++i) {
        if (i > 0 && near[i].real() - near[i - 1].real() > gap) best_im = INFINITY;
        if (best_im == INFINITY) out.push_back(near[i].real());
        if (std::abs(near[i].imag()) < best_im) {
            best_im = std::abs(near[i].imag());
            out.back() = near[i].real();
        }
    }
    return out;
}

CheckResult ac11(const VerifyOptions&) {
    CheckResult r{"AC11", "zeros for N=10, nu=20 and their Jacobi crossings", true, 0, 0.05, "", 0};
    std::ostringstream det;
    bool ok = true;
    for (const Rational lam : {Rational::make(1, 3), Rational::make(3, 1)}) {
        const double l = lam.value();
        const Params p = Params::make(10, 3 * l, 3 * l, lam, 1.0);
        const PreciseZeros z = char_poly_zeros_precise(20, p);
        double pairing = 0.0;
        bool finite = z.roots.size() == 200;
        for (auto v : z.roots) {
            finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
            double b = INFINITY;
            for (auto w : z.roots) b = std::min(b, std::abs(w - std::conj(v)));
            pairing = std::max(pairing, b);
        }
        ok = ok && finite && pairing <= 1e-8 && z.max_residual <= 1e-8;
        det << "lambda=" << lam.str() << ": " << z.roots.size() << " roots at " << z.digits
            << " digits, pairing " << fmt(pairing) << ", residual " << fmt(z.max_residual) << "; ";
        if (lam.den == 1) {
            const auto c = axis_crossings(z.roots, 0.05, 0.03);
            const auto j = jacobi_zeros(10, 2.0, 2.0);
            double worst = c.size() == j.size() ? 0.0 : INFINITY;
            for (std::size_t i = 0; i < c.size() && i < j.size(); ++i) {
                worst = std::max(worst, std::abs(c[i] - 0.5 * (1.0 - j[j.size() - 1 - i])));
            }
            r.worst = worst;
            ok = ok && worst <= r.tolerance;
            det << c.size() << " crossings, worst distance to P10(2,2) zeros " << fmt(worst)
                << " (bound 0.05)";
        }
    }
    r.passed = ok;
    r.detail = det.str();
    return r;
}

using CheckFn = std::function<CheckResult(const VerifyOptions&)>;

const std::vector<CheckFn>& checks() {
    static const std::vector<CheckFn> all = {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11};
    return all;
}

}  // namespace

CheckResult run_check(int index, const VerifyOptions& opt) {
    if (index < 1 || index > kCheckCount) throw PreconditionError("check index out of range");
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
        r = checks()[index - 1](opt);
    } catch (const Error& e) {
        r.id = "AC" + std::to_string(index);
        r.title = "aborted";
        r.passed = false;
        r.detail = e.what();
    } catch (const std::exception& e) {
        r.id = "AC" + std::to_string(index);
        r.title = "aborted";
        r.passed = false;
        r.detail = std::string("unexpected exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CheckResult> run_all_checks(const VerifyOptions& opt) {
    std::vector<CheckResult> out;
    for (int i = 1; i <= kCheckCount; ++i) out.push_back(run_check(i, opt));
    return out;
}

std::string format_check(const CheckResult& r) {
    std::ostringstream os;
    os << (r.passed ? "PASS " : "FAIL ") << r.id << " " << r.title << " | " << r.detail << " | "
       << fmt(r.seconds) << " s";
    return os.str();
}

}  // namespace selberg
