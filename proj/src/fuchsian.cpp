#include "selberg/fuchsian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "selberg/errors.hpp"
#include "selberg/parallel.hpp"

namespace selberg {
namespace {

// Entries of Y+ and Y- as flat vectors, indexed by the row p.
struct Bands {
    std::vector<double> diag_plus;   // sigma_{N-p}
    std::vector<double> super_plus;  // (N-p) E_p, p < N
    std::vector<double> diag_minus;  // b_{N-p} = p - A_p - B_p
    std::vector<double> sub_minus;   // D_p, p >= 1 (index 0 unused)
};

Bands bands(const Params& p) {
    const int N = p.N;
    Bands b;
    b.diag_plus.resize(N + 1);
    b.super_plus.assign(N + 1, 0.0);
    b.diag_minus.resize(N + 1);
    b.sub_minus.assign(N + 1, 0.0);
    for (int row = 0; row <= N; ++row) {
        const auto c = recurrence_coeffs(row, p);
        b.diag_plus[row] = -c.B;
        if (row < N) b.super_plus[row] = (N - row) * c.E;
        b.diag_minus[row] = row - c.A - c.B;
        if (row >= 1) b.sub_minus[row] = c.D;
    }
    return b;
}

void check_index(int k, const Params& p) {
    if (k < 0 || k > p.N) throw PreconditionError("solution index k must lie in 0..N");
}

}  // namespace

FuchsMatrices build_matrices(const Params& p) {
    if (p.N < 1) throw PreconditionError("build_matrices: N must be >= 1");
    const int n = p.N + 1;
    const Bands b = bands(p);
    FuchsMatrices m{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
    for (int row = 0; row < n; ++row) {
        m.Yplus(row, row) = b.diag_plus[row];
        if (row + 1 < n) m.Yplus(row, row + 1) = b.super_plus[row];
        m.Yminus(row, row) = b.diag_minus[row];
        if (row >= 1) m.Yminus(row, row - 1) = b.sub_minus[row];
    }
    return m;
}

std::vector<Resonance> detect_resonance(const Params& p, int L, double tol) {
    std::vector<Resonance> out;
    for (int k = 0; k <= p.N; ++k) {
        const double sk = sigma(k, p);
        for (int j = 0; j <= p.N; ++j) {
            if (j == k) continue;
            const double d = sigma(j, p) - sk;
            const double l = std::round(d);
            if (l >= 0 && l <= L && std::abs(d - l) < tol) {
                out.push_back({k, static_cast<int>(l), j});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Resonance& a, const Resonance& b) {
                  return a.k != b.k ? a.k < b.k : a.l < b.l;
              });
    return out;
}

FrobeniusSolution frobenius_direct(int k, const Params& p, int L) {
    check_index(k, p);
    if (L < 0) throw PreconditionError("truncation order L must be >= 0");
    const int N = p.N;
    const Bands b = bands(p);
    const double sk = sigma(k, p);

    FrobeniusSolution s;
    s.k = k;
    s.sigma_k = sk;
    s.L = L;
    s.coeffs = Eigen::MatrixXd::Zero(N + 1, L + 1);

    // eigenvector of Y+ for sigma_k; rows below N-k vanish
    Eigen::VectorXd v = Eigen::VectorXd::Zero(N + 1);
    v(N - k) = 1.0;
    for (int row = N - k - 1; row >= 0; --row) {
        const double piv = b.diag_plus[row] - sk;
        if (std::abs(piv) < 1e-300) {
            throw SingularSolve("repeated indicial exponent at row " + std::to_string(row));
        }
        v(row) = -b.super_plus[row] * v(row + 1) / piv;
    }
    if (!(std::abs(v(0)) > 1e-300) || !std::isfinite(v(0))) {
        throw SingularSolve("component 0 of the leading eigenvector vanishes for k=" +
                            std::to_string(k));
    }
    s.coeffs.col(0) = v / v(0);

    Eigen::VectorXd running = Eigen::VectorXd::Zero(N + 1);
    Eigen::VectorXd rhs(N + 1);
    for (int l = 1; l <= L; ++l) {
        running += s.coeffs.col(l - 1);
        for (int row = 0; row <= N; ++row) {
            rhs(row) = b.diag_minus[row] * running(row);
            if (row >= 1) rhs(row) += b.sub_minus[row] * running(row - 1);
        }
        auto col = s.coeffs.col(l);
        for (int row = N; row >= 0; --row) {
            const double piv = sk + l - b.diag_plus[row];
            if (std::abs(piv) < 1e-300) {
                std::ostringstream os;
                os << "pivot vanishes at order l=" << l << ", row " << row << " (k=" << k << ")";
                throw SingularSolve(os.str());
            }
            double acc = rhs(row);
            if (row < N) acc += b.super_plus[row] * col(row + 1);
            col(row) = acc / piv;
        }
    }
    return s;
}

namespace {

struct PerturbedRun {
    Eigen::MatrixXd mean;
    double spread;  // max over columns of |half-difference| / (|mean| + |half-difference|)
};

PerturbedRun perturbed_run(int k, const Params& p, int L, double eps) {
    const auto up = frobenius_direct(k, p.with_lambda1(p.lambda1 + eps), L);
    const auto dn = frobenius_direct(k, p.with_lambda1(p.lambda1 - eps), L);
    PerturbedRun r{0.5 * (up.coeffs + dn.coeffs), 0.0};
    const Eigen::MatrixXd half = 0.5 * (up.coeffs - dn.coeffs);
    for (int l = 0; l <= L; ++l) {
        const double h = half.col(l).lpNorm<Eigen::Infinity>();
        const double m = r.mean.col(l).lpNorm<Eigen::Infinity>();
        if (h + m > 0) r.spread = std::max(r.spread, h / (h + m));
    }
    return r;
}

double max_relative_difference(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    double worst = 0.0;
    for (int l = 0; l < a.cols(); ++l) {
        const double scale =
            std::max(a.col(l).lpNorm<Eigen::Infinity>(), b.col(l).lpNorm<Eigen::Infinity>());
        if (scale > 0) worst = std::max(worst, (a.col(l) - b.col(l)).lpNorm<Eigen::Infinity>() / scale);
    }
    return worst;
}

}  // namespace

FrobeniusSolution frobenius(int k, const Params& p, int L, const FrobeniusOptions& opt) {
    check_index(k, p);
    const auto all = detect_resonance(p, L);
    const bool resonant =
        std::any_of(all.begin(), all.end(), [k](const Resonance& r) { return r.k == k; });
    if (!resonant) return frobenius_direct(k, p, L);
    // A shared exponent is a Jordan block of Y+: the perturbed runs converge,
    // but to the partner solution, and the missing one carries log x.
    for (const auto& r : all) {
        if ((r.k == k || r.j == k) && r.l == 0) {
            throw ResonanceUnresolvable("exponent sigma_" + std::to_string(k) +
                                        " is repeated; the solution space needs log x");
        }
    }

    const PerturbedRun fine = perturbed_run(k, p, L, opt.eps);
    const PerturbedRun coarse = perturbed_run(k, p, L, opt.eps_check);
    // A finite limit gives spread ~ eps; a pole gives spread that does not
    // shrink with eps.
    if (fine.spread > 1e-3 && fine.spread > 0.5 * coarse.spread) {
        std::ostringstream os;
        os << "solution k=" << k << " diverges as the lambda1 perturbation shrinks (spread "
           << fine.spread << " at eps=" << opt.eps << "); a logarithmic term is present";
        throw ResonanceUnresolvable(os.str());
    }
    const double diff = max_relative_difference(fine.mean, coarse.mean);
    if (diff > opt.consistency_tol) {
        std::ostringstream os;
        os << "solution k=" << k << ": averaged runs at eps=" << opt.eps << " and "
           << opt.eps_check << " disagree by " << diff;
        throw ResonanceUnresolvable(os.str());
    }
    FrobeniusSolution s;
    s.k = k;
    s.sigma_k = sigma(k, p);
    s.L = L;
    s.coeffs = fine.mean;
    s.resonant = true;
    s.eps_used = opt.eps;
    s.eps_spread = fine.spread;
    return s;
}

double geometric_tail(std::span<const double> t) {
    const std::size_t n = t.size();
    if (n == 0) return 0.0;
    if (n < 10) {
        if (n < 2) return std::numeric_limits<double>::infinity();
        const double a = t[n - 2], b = t[n - 1];
        if (b == 0.0) return 0.0;
        if (a == 0.0 || b >= a) return std::numeric_limits<double>::infinity();
        const double q = b / a;
        return b * q / (1.0 - q);
    }
    const double last = *std::max_element(t.end() - 5, t.end());
    const double prev = *std::max_element(t.end() - 10, t.end() - 5);
    if (last == 0.0) return 0.0;
    if (prev == 0.0) return std::numeric_limits<double>::infinity();
    const double q = std::pow(last / prev, 1.0 / 5.0);
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    return last * q / (1.0 - q);
}

SolutionValue eval_solution(const FrobeniusSolution& s, double x, double tol) {
    if (!(x > 0.0 && x < 1.0)) throw PreconditionError("eval_solution: need 0 < x < 1");
    const int n = static_cast<int>(s.coeffs.rows());
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd dsum = Eigen::VectorXd::Zero(n);
    std::vector<double> terms(s.L + 1);
    double xl = 1.0;
    for (int l = 0; l <= s.L; ++l) {
        sum += xl * s.coeffs.col(l);
        dsum += ((s.sigma_k + l) * xl) * s.coeffs.col(l);
        terms[l] = xl * s.coeffs.col(l).lpNorm<Eigen::Infinity>();
        xl *= x;
    }
    const double xs = std::pow(x, s.sigma_k);
    SolutionValue out;
    out.value = xs * sum;
    out.derivative = (xs / x) * dsum;
    out.tail_bound = xs * geometric_tail(terms);
    if (tol > 0) {
        const double scale = out.value.lpNorm<Eigen::Infinity>();
        if (!(out.tail_bound <= tol * scale)) {
            std::ostringstream os;
            os << "truncation tail " << out.tail_bound << " exceeds " << tol << " * " << scale
               << " at x=" << x << " with L=" << s.L;
            throw TailTooLarge(os.str());
        }
    }
    return out;
}

FrobeniusSolution frobenius_adaptive(int k, const Params& p, double x, double tol,
                                     const FrobeniusOptions& opt) {
    if (!(x > 0.0 && x < 1.0)) throw PreconditionError("frobenius_adaptive: need 0 < x < 1");
    int L = static_cast<int>(std::ceil(std::log(tol) / std::log(x))) + 10;
    L = std::clamp(L, 16, kMaxTruncation);
    for (;;) {
        auto s = frobenius(k, p, L, opt);
        const auto v = eval_solution(s, x);
        if (v.tail_bound <= tol * v.value.lpNorm<Eigen::Infinity>()) return s;
        if (L == kMaxTruncation) {
            std::ostringstream os;
            os << "no truncation up to L=" << kMaxTruncation << " reaches tolerance " << tol
               << " at x=" << x;
            throw TailTooLarge(os.str());
        }
        L = std::min(2 * L, kMaxTruncation);
    }
}

double ode_residual(std::span<const FrobeniusSolution> solutions, const Params& p, double x) {
    const auto m = build_matrices(p);
    double worst = 0.0;
    for (const auto& s : solutions) {
        const auto v = eval_solution(s, x);
        const Eigen::VectorXd r =
            v.derivative - (m.Yplus * v.value / x + m.Yminus * v.value / (1.0 - x));
        worst = std::max(worst, r.lpNorm<Eigen::Infinity>() / v.value.lpNorm<Eigen::Infinity>());
    }
    return worst;
}

double wronskian_invariant(std::span<const FrobeniusSolution> solutions, const Params& p,
                           double x) {
    const int n = p.N + 1;
    if (static_cast<int>(solutions.size()) != n) {
        throw PreconditionError("wronskian_invariant needs all N+1 solutions");
    }
    Eigen::MatrixXd U(n, n);
    for (const auto& s : solutions) {
        Eigen::VectorXd sum = Eigen::VectorXd::Zero(n);
        double xl = 1.0;
        for (int l = 0; l <= s.L; ++l, xl *= x) sum += xl * s.coeffs.col(l);
        U.col(s.k) = sum;
    }
    const double tr_minus = build_matrices(p).Yminus.trace();
    return U.determinant() * std::pow(1.0 - x, tr_minus);
}

std::vector<FrobeniusSolution> frobenius_all(const Params& p, int L,
                                             const FrobeniusOptions& opt) {
    const int n = p.N + 1;
    std::vector<FrobeniusSolution> out(n);
    for_each_index(n, [&](int k) { out[k] = frobenius(k, p, L, opt); });
    return out;
}

}  // namespace selberg
