#include "doctest.h"

#include <algorithm>
#include <complex>
#include <vector>

#include "generators.hpp"
#include "selberg/errors.hpp"
#include "selberg/monodromy.hpp"

using namespace selberg;
using selberg::testing::Gen;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Largest distance from each eigenvalue to its nearest diagonal entry of D.
double spectrum_mismatch(const Eigen::MatrixXcd& M, const Eigen::MatrixXcd& D) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    double worst = 0.0;
    for (int i = 0; i < M.rows(); ++i) {
        double best = 1e300;
        for (int j = 0; j < D.rows(); ++j) best = std::min(best, std::abs(es.eigenvalues()(i) - D(j, j)));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

TEST_CASE("D matrix entries") {
    const Params p = Params::make(3, 0.3, 0.1, 0.45, 0.8);
    CHECK(d_matrix(p)(0, 0) == std::complex<double>(1.0, 0.0));
    const auto Di = d_matrix(Params::make(4, 2, 0.5, 1, 3));
    CHECK(max_abs(Di - Eigen::MatrixXcd::Identity(5, 5)) == 0.0);
}

TEST_CASE("monodromy triple multiplies to the identity") {
    Gen g(40);
    int used = 0;
    for (int t = 0; t < 40 && used < 10; ++t) {
        const Params p = g.generic_params(g.integer(1, 6));
        MonodromyTriple m;
        try {
            m = monodromy_triple(p);
        } catch (const IllConditioned&) {
            continue;
        }
        ++used;
        const int n = p.N + 1;
        const double scale = std::max(1.0, max_abs(m.M0));
        CHECK(product_defect(m) <= 1e-10 * scale);
        CHECK(spectrum_mismatch(m.M0, d_matrix(p)) <= 1e-10 * scale);
        CHECK(spectrum_mismatch(m.M1, d_matrix(p.swapped())) <= 1e-10 * scale);
        CHECK(std::abs(std::abs(m.M0.determinant()) - 1.0) <= 1e-10);
        CHECK((m.Minf * m.M0 * m.M1 - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() ==
              doctest::Approx(product_defect(m)));
    }
    CHECK(used == 10);
}

TEST_CASE("M0 is periodic in lambda1 and free of lambda2") {
    Gen g(41);
    for (int t = 0; t < 10; ++t) {
        const Params p = g.generic_params(g.integer(1, 5));
        MonodromyTriple a, b, c;
        try {
            a = monodromy_triple(p);
            b = monodromy_triple(p.with_lambda1(p.lambda1 + 1));
            Params q = p;
            q.lambda2 += 0.37;
            c = monodromy_triple(q);
        } catch (const IllConditioned&) {
            continue;
        }
        const double scale = std::max(1.0, max_abs(a.M0));
        CHECK(max_abs(a.M0 - b.M0) <= 1e-10 * scale);
        CHECK(max_abs(a.M0 - c.M0) <= 1e-12 * scale);
    }
}

TEST_CASE("ill-conditioned connection matrix is refused") {
    // lambda1 + alpha close to an integer blows up the denominator sines
    const Params p = Params::make(4, 0.3, 0.2, 0.41, 0.7 + 1e-9);
    CHECK_THROWS_AS(monodromy_triple(p), IllConditioned);
}
