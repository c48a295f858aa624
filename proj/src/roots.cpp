#include "selberg/roots.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "selberg/errors.hpp"

namespace selberg {
namespace {

using cld = std::complex<long double>;

struct Horner {
    cld p, dp;
    long double abs_sum;  // sum |a_k| |z|^{n-k}
};

Horner horner(std::span<const double> a, cld z) {
    cld p = a[0], dp = 0;
    long double s = std::abs(static_cast<long double>(a[0]));
    const long double r = std::abs(z);
    for (std::size_t k = 1; k < a.size(); ++k) {
        dp = dp * z + p;
        p = p * z + static_cast<long double>(a[k]);
        s = s * r + std::abs(static_cast<long double>(a[k]));
    }
    return {p, dp, s};
}

}  // namespace

std::vector<std::complex<double>> aberth_roots(std::span<const double> coeffs,
                                               const RootOptions& opt) {
    if (coeffs.size() < 2) throw PreconditionError("aberth_roots: degree must be >= 1");
    if (coeffs[0] == 0.0) throw PreconditionError("aberth_roots: leading coefficient is zero");
    const int n = static_cast<int>(coeffs.size()) - 1;

    // Start on a circle about the centroid with radius the geometric mean of
    // the root distances from it.
    const long double centre = -static_cast<long double>(coeffs[1]) / (n * coeffs[0]);
    const long double pc = std::abs(horner(coeffs, cld(centre, 0)).p / (long double)coeffs[0]);
    long double radius = std::pow(pc, 1.0L / n);
    if (!(radius > 0) || !std::isfinite(radius)) radius = 1.0L;

    std::vector<cld> z(n);
    for (int k = 0; k < n; ++k) {
        const long double th = 2 * std::numbers::pi_v<long double> * k / n + 0.4L;
        z[k] = cld(centre, 0) + radius * cld(std::cos(th), std::sin(th));
    }
    std::vector<char> done(n, 0);
    const long double eps = std::numeric_limits<long double>::epsilon();
    int remaining = n;
    for (int it = 0; it < opt.max_iterations && remaining > 0; ++it) {
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            const Horner h = horner(coeffs, z[k]);
            if (std::abs(h.p) <= 4 * eps * h.abs_sum) {
                done[k] = 1;
                --remaining;
                continue;
            }
            const cld ratio = h.p / h.dp;
            cld repulsion = 0;
            for (int j = 0; j < n; ++j) {
                if (j != k) repulsion += 1.0L / (z[k] - z[j]);
            }
            const cld step = ratio / (1.0L - ratio * repulsion);
            z[k] -= step;
            if (std::abs(step) <= 4 * eps * std::abs(z[k])) {
                done[k] = 1;
                --remaining;
            }
        }
    }
    if (remaining > 0) {
        std::ostringstream os;
        os << "Aberth iteration left " << remaining << " of " << n << " roots unconverged after "
           << opt.max_iterations << " sweeps";
        throw ConvergenceFailure(os.str());
    }
    std::vector<std::complex<double>> out(n);
    for (int k = 0; k < n; ++k) out[k] = {static_cast<double>(z[k].real()),
                                          static_cast<double>(z[k].imag())};
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

double root_residual(std::span<const double> coeffs, std::complex<double> z) {
    long double norm = 0;
    for (double c : coeffs) norm += static_cast<long double>(c) * c;
    const Horner h = horner(coeffs, cld(z.real(), z.imag()));
    return static_cast<double>(std::abs(h.p) / std::sqrt(norm));
}

double root_backward_error(std::span<const double> coeffs, std::complex<double> z) {
    const Horner h = horner(coeffs, cld(z.real(), z.imag()));
    return static_cast<double>(std::abs(h.p) / h.abs_sum);
}

std::vector<double> jacobi_zeros(int n, double a, double b) {
    if (n < 1) throw PreconditionError("jacobi_zeros: n must be >= 1");
    if (!(a > -1 && b > -1)) throw PreconditionError("jacobi_zeros: need a, b > -1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    const double ab = a + b;
    for (int k = 0; k < n; ++k) {
        const double t = 2.0 * k + ab;
        J(k, k) = (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (t * (t + 2.0));
        if (k >= 1) {
            // k = 1 written with (k + a + b) / (t - 1) cancelled
            const double beta =
                k == 1 ? 4.0 * (1 + a) * (1 + b) / (t * t * (t + 1.0))
                       : 4.0 * k * (k + a) * (k + b) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
            J(k, k - 1) = J(k - 1, k) = std::sqrt(beta);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace selberg
