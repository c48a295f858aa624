#include "selberg/precise.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "selberg/errors.hpp"

namespace selberg {
namespace {

namespace mp = boost::multiprecision;

template <unsigned D>
using Real = mp::number<mp::mpfr_float_backend<D>, mp::et_off>;

template <class F>
struct Cx {
    F re, im;
};

template <class F>
Cx<F> operator+(const Cx<F>& a, const Cx<F>& b) { return {a.re + b.re, a.im + b.im}; }
template <class F>
Cx<F> operator-(const Cx<F>& a, const Cx<F>& b) { return {a.re - b.re, a.im - b.im}; }
template <class F>
Cx<F> operator*(const Cx<F>& a, const Cx<F>& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class F>
Cx<F> operator/(const Cx<F>& a, const Cx<F>& b) {
    const F d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class F>
F norm(const Cx<F>& a) { return sqrt(a.re * a.re + a.im * a.im); }
template <class F>
std::complex<double> to_double(const Cx<F>& a) {
    return {static_cast<double>(a.re), static_cast<double>(a.im)};
}

// Scalar coefficients p_{l,N}, l = 0..L, of the top Frobenius solution at the
// substituted parameters lambda2 -> nu, alpha -> lambda2 + 1.
template <class F>
std::vector<F> top_series(int nu, const Params& p, int L) {
    const int N = p.N;
    const F l1 = p.lambda1, l2 = nu, a = F(p.lambda2) + 1;
    const F lam = p.lambda_rational ? F(p.lambda_rational->num) / p.lambda_rational->den
                                    : F(p.lambda);
    std::vector<F> dplus(N + 1), splus(N + 1), dminus(N + 1), sminus(N + 1);
    for (int row = 0; row <= N; ++row) {
        const int m = N - row;
        const F A = m * (l1 + l2 + 2 * lam * (m - 1) + 2 * a);
        const F B = -m * (l1 + lam * (m - 1) + a);
        dplus[row] = -B;
        splus[row] = row < N ? F(m * (l1 + l2 + lam * (2 * N - row - 2) + a + 1)) : F(0);
        dminus[row] = row - A - B;
        sminus[row] = row * (lam * m + a);
    }
    const F sN = N * (l1 + lam * (N - 1) + a);

    std::vector<F> out(L + 1);
    std::vector<F> col(N + 1, F(0)), running(N + 1, F(0)), rhs(N + 1);
    col[0] = 1;
    out[0] = 1;
    for (int l = 1; l <= L; ++l) {
        for (int row = 0; row <= N; ++row) running[row] += col[row];
        for (int row = 0; row <= N; ++row) {
            rhs[row] = dminus[row] * running[row];
            if (row >= 1) rhs[row] += sminus[row] * running[row - 1];
        }
        for (int row = N; row >= 0; --row) {
            const F piv = sN + l - dplus[row];
            if (piv == 0) {
                throw SingularSolve("pivot vanishes at order l=" + std::to_string(l) +
                                    " of the characteristic series");
            }
            F acc = rhs[row];
            if (row < N) acc += splus[row] * col[row + 1];
            col[row] = acc / piv;
        }
        out[l] = col[0];
    }
    return out;
}

template <class F>
struct Horner {
    Cx<F> p, dp;
    F abs_sum;
};

template <class F>
Horner<F> horner(const std::vector<F>& a, const Cx<F>& z) {
    Cx<F> p{a[0], F(0)}, dp{F(0), F(0)};
    F s = abs(a[0]);
    const F r = norm(z);
    for (std::size_t k = 1; k < a.size(); ++k) {
        dp = dp * z + p;
        p = p * z + Cx<F>{a[k], F(0)};
        s = s * r + abs(a[k]);
    }
    return {p, dp, s};
}

template <unsigned D>
struct Pass {
    std::vector<Real<D>> coeffs;
    std::vector<Cx<Real<D>>> roots;
    double truncation = 0.0;
};

template <unsigned D>
std::vector<Real<D>> monic_coeffs(int nu, const Params& p, double& truncation) {
    using F = Real<D>;
    const int degree = nu * p.N;
    const int extra = 4;
    auto s = top_series<F>(nu, p, degree + extra);
    F scale = 0, beyond = 0;
    for (int l = 0; l <= degree; ++l) scale = std::max(scale, F(abs(s[l])));
    for (int l = degree + 1; l <= degree + extra; ++l) beyond = std::max(beyond, F(abs(s[l])));
    truncation = static_cast<double>(beyond / scale);
    s.resize(degree + 1);
    return s;
}

// Aberth-Ehrlich with values and Newton ratios in F; the repulsion sum only
// scales the Newton step and is formed in double.
template <unsigned D>
void aberth(const std::vector<Real<D>>& a, std::vector<Cx<Real<D>>>& z, int max_sweeps) {
    using F = Real<D>;
    const int n = static_cast<int>(z.size());
    const F eps = pow(F(10), -static_cast<int>(D) + 2);
    const F stop = pow(F(10), -static_cast<int>(std::min(D / 2, 40u)));
    std::vector<std::complex<double>> zd(n);
    for (int k = 0; k < n; ++k) zd[k] = to_double(z[k]);
    std::vector<char> done(n, 0);
    int remaining = n;
    for (int it = 0; it < max_sweeps && remaining > 0; ++it) {
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            const auto h = horner(a, z[k]);
            if (norm(h.p) <= 4 * eps * h.abs_sum) {
                done[k] = 1;
                --remaining;
                continue;
            }
            const Cx<F> ratio = h.p / h.dp;
            std::complex<double> rep = 0;
            for (int j = 0; j < n; ++j) {
                if (j != k) rep += 1.0 / (zd[k] - zd[j]);
            }
            const std::complex<double> denom = 1.0 - to_double(ratio) * rep;
            const std::complex<double> inv = 1.0 / denom;
            const Cx<F> step = ratio * Cx<F>{F(inv.real()), F(inv.imag())};
            z[k] = z[k] - step;
            zd[k] = to_double(z[k]);
            if (norm(step) <= stop * std::max(F(1), norm(z[k]))) {
                done[k] = 1;
                --remaining;
            }
        }
    }
    if (remaining > 0) {
        std::ostringstream os;
        os << "Aberth iteration at " << D << " digits left " << remaining << " of " << n
           << " roots unconverged after " << max_sweeps << " sweeps";
        throw ConvergenceFailure(os.str());
    }
}

template <unsigned D>
std::vector<Cx<Real<D>>> initial_circle(const std::vector<Real<D>>& a) {
    using F = Real<D>;
    const int n = static_cast<int>(a.size()) - 1;
    const F centre = -a[1] / n;
    F radius = pow(norm(horner(a, Cx<F>{centre, F(0)}).p), F(1) / n);
    if (!(radius > 0) || !isfinite(radius)) radius = 1;
    std::vector<Cx<F>> z(n);
    for (int k = 0; k < n; ++k) {
        const F th = 2 * boost::math::constants::pi<F>() * k / n + F(0.4);
        z[k] = Cx<F>{centre + radius * cos(th), radius * sin(th)};
    }
    return z;
}

template <unsigned D, class G>
std::vector<Cx<Real<D>>> convert(const std::vector<Cx<G>>& z) {
    std::vector<Cx<Real<D>>> out;
    out.reserve(z.size());
    for (const auto& v : z) out.push_back({Real<D>(v.re), Real<D>(v.im)});
    return out;
}

// Newton polish at precision D from start values; returns the largest
// relative motion.
template <unsigned D>
double polish(const std::vector<Real<D>>& a, std::vector<Cx<Real<D>>>& z) {
    using F = Real<D>;
    const F stop = pow(F(10), -40);
    double worst = 0.0;
    for (auto& root : z) {
        const Cx<F> start = root;
        for (int it = 0; it < 60; ++it) {
            const auto h = horner(a, root);
            const Cx<F> step = h.p / h.dp;
            root = root - step;
            if (norm(step) <= stop * std::max(F(1), norm(root))) break;
        }
        const F shift = norm(root - start) / std::max(F(1), norm(root));
        worst = std::max(worst, static_cast<double>(shift));
    }
    return worst;
}

constexpr double kPolishTolerance = 1e-12;

template <unsigned D, unsigned Dcheck>
bool run_rung(int nu, const Params& p, const PreciseZerosOptions& opt,
              std::vector<std::complex<double>>& warm, PreciseZeros& out) {
    using F = Real<D>;
    double trunc = 0.0;
    const auto a = monic_coeffs<D>(nu, p, trunc);
    std::vector<Cx<F>> z;
    if (warm.empty()) {
        z = initial_circle<D>(a);
    } else {
        for (const auto& w : warm) z.push_back({F(w.real()), F(w.imag())});
    }
    aberth<D>(a, z, opt.max_sweeps);

    double trunc_hi = 0.0;
    const auto ahi = monic_coeffs<Dcheck>(nu, p, trunc_hi);
    auto zhi = convert<Dcheck>(z);
    const double shift = polish<Dcheck>(ahi, zhi);

    // Polished values can collapse onto one root; the next rung restarts
    // from the distinct Aberth iterates.
    warm.clear();
    for (const auto& r : z) warm.push_back(to_double(r));
    out.digits = static_cast<int>(D);
    out.max_polish_shift = shift;
    out.truncation_residual = trunc;
    if (shift > kPolishTolerance) return false;

    // The roots must sum to -a_1; a duplicated root breaks this.
    using G = Real<Dcheck>;
    Cx<G> sum{G(0), G(0)};
    G scale = abs(ahi[1]);
    for (const auto& r : zhi) {
        sum = sum + r;
        scale += norm(r);
    }
    sum.re += ahi[1];
    if (static_cast<double>(norm(sum) / scale) > kPolishTolerance) {
        out.max_polish_shift = std::max(shift, static_cast<double>(norm(sum) / scale));
        return false;
    }

    G norm2 = 0;
    for (const auto& c : ahi) norm2 += c * c;
    norm2 = sqrt(norm2);
    out.max_residual = out.max_backward_error = 0.0;
    for (const auto& r : zhi) {
        const auto h = horner(ahi, r);
        out.max_residual = std::max(out.max_residual, static_cast<double>(norm(h.p) / norm2));
        out.max_backward_error =
            std::max(out.max_backward_error, static_cast<double>(norm(h.p) / h.abs_sum));
    }
    out.roots = warm;
    out.coeffs.clear();
    for (const auto& c : ahi) out.coeffs.push_back(static_cast<double>(c));
    return true;
}

}  // namespace

PreciseZeros char_poly_zeros_precise(int nu, const Params& p, const PreciseZerosOptions& opt) {
    if (nu < 1) throw PreconditionError("characteristic polynomial: nu must be >= 1");
    if (p.N < 1) throw PreconditionError("characteristic polynomial: N must be >= 1");
    PreciseZeros out;
    std::vector<std::complex<double>> warm;
    bool ok = false;
    int start = opt.digits;
    if (start <= 0) {
        // one decade of headroom per decade of coefficient range, plus margin
        double trunc = 0.0;
        const auto a = monic_coeffs<50>(nu, p, trunc);
        double range = 0.0;
        for (const auto& c : a) {
            if (c != 0) range = std::max(range, std::abs(static_cast<double>(log10(abs(c)))));
        }
        start = static_cast<int>(range) + 25;
    }
    if (start <= 50 && opt.max_digits >= 50) ok = run_rung<50, 90>(nu, p, opt, warm, out);
    if (!ok && start <= 100 && opt.max_digits >= 100) ok = run_rung<100, 140>(nu, p, opt, warm, out);
    if (!ok && start <= 200 && opt.max_digits >= 200) ok = run_rung<200, 240>(nu, p, opt, warm, out);
    if (!ok && opt.max_digits >= 400) ok = run_rung<400, 440>(nu, p, opt, warm, out);
    if (!ok) {
        std::ostringstream os;
        os << "characteristic-polynomial roots still move by " << out.max_polish_shift
           << " under re-polishing at " << out.digits << " digits";
        throw ConvergenceFailure(os.str());
    }
    std::sort(out.roots.begin(), out.roots.end(), [](auto x, auto y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
}

}  // namespace selberg
