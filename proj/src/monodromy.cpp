#include "selberg/monodromy.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "selberg/connection.hpp"
#include "selberg/errors.hpp"

namespace selberg {
namespace {

inline constexpr double kMaxCondition = 1e6;

struct LocalMonodromy {
    Eigen::MatrixXcd M;
    double condition;
};

LocalMonodromy around_zero(const Params& p) {
    const int n = p.N + 1;
    const Eigen::MatrixXd C = connection_matrix(p).entries;
    const auto tri = C.triangularView<Eigen::UnitLower>();
    const Eigen::MatrixXd Cinv = tri.solve(Eigen::MatrixXd::Identity(n, n));
    const double cond = C.cwiseAbs().colwise().sum().maxCoeff() *
                        Cinv.cwiseAbs().colwise().sum().maxCoeff();
    if (!(cond <= kMaxCondition)) {
        std::ostringstream os;
        os << "connection matrix condition number " << cond << " exceeds " << kMaxCondition;
        throw IllConditioned(os.str());
    }
    const Eigen::MatrixXcd DC = d_matrix(p) * C.cast<std::complex<double>>();
    // forward substitution with the unit lower-triangular C
    Eigen::MatrixXcd M = C.cast<std::complex<double>>()
                             .triangularView<Eigen::UnitLower>()
                             .solve(DC);
    return {M, cond};
}

}  // namespace

Eigen::MatrixXcd d_matrix(const Params& p) {
    const int n = p.N + 1;
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
    for (int q = 0; q < n; ++q) {
        const double e = q * (p.lambda1 + p.alpha - 1.0 + (q - 1) * p.lambda);
        // reduce modulo 1 first so integer exponents give exactly 1
        const double r = e - std::round(e);
        D(q, q) = std::polar(1.0, 2.0 * std::numbers::pi * r);
    }
    return D;
}

MonodromyTriple monodromy_triple(const Params& p) {
    const int n = p.N + 1;
    const LocalMonodromy zero = around_zero(p);
    const LocalMonodromy swapped = around_zero(p.swapped());
    Eigen::MatrixXcd M1(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) M1(i, j) = swapped.M(n - 1 - i, n - 1 - j);
    }
    MonodromyTriple t;
    t.M0 = zero.M;
    t.M1 = M1;
    t.Minf = (t.M0 * t.M1).partialPivLu().inverse();
    t.condition = std::max(zero.condition, swapped.condition);
    return t;
}

double product_defect(const MonodromyTriple& m) {
    const int n = static_cast<int>(m.M0.rows());
    return (m.Minf * m.M0 * m.M1 - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace selberg
