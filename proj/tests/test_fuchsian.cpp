#include "doctest.h"

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "selberg/errors.hpp"
#include "selberg/fuchsian.hpp"

using namespace selberg;
using selberg::testing::Gen;
using selberg::testing::rel_err;

namespace {

bool has_resonance(const std::vector<Resonance>& rs, int k, int l) {
    for (const auto& r : rs) {
        if (r.k == k && r.l == l) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("residue matrices drive the uniform one-variable integrals") {
    // [DERIVED] N = 1, lambda1 = lambda2 = 0, alpha = 1. With one point below x
    // (q = 1): J_0 = x, J_1 = int_0^x (t - x) dt = -x^2/2. With it above
    // (q = 0): J_0 = 1 - x, J_1 = (1 - x)^2 / 2. H_p = (x - 1)^{-p} J_p.
    const auto m = build_matrices(Params::make(1, 0, 0, 1, 1));
    auto H = [](int q, double x) {
        Eigen::Vector2d h;
        if (q == 1) h << x, -x * x / 2 / (x - 1);
        else h << 1 - x, (1 - x) * (1 - x) / 2 / (x - 1);
        return h;
    };
    auto dH = [](int q, double x) {
        Eigen::Vector2d d;
        // d/dx [-x^2 / (2(x-1))] = -(x^2 - 2x) / (2 (x-1)^2); (1-x)^2/(2(x-1)) = -(1-x)/2
        if (q == 1) d << 1, -(x * x - 2 * x) / (2 * (x - 1) * (x - 1));
        else d << -1, 0.5;
        return d;
    };
    for (int q : {0, 1}) {
        for (double x : {0.2, 0.45, 0.8}) {
            const Eigen::Vector2d rhs = (m.Yplus / x + m.Yminus / (1 - x)) * H(q, x);
            CHECK((rhs - dH(q, x)).norm() < 1e-14);
        }
    }
}

TEST_CASE("residue matrices are bidiagonal with the exponents on the diagonal") {
    Gen g(20);
    for (int t = 0; t < 10; ++t) {
        const int N = g.integer(1, 6);
        const Params p = g.params(N);
        const auto m = build_matrices(p);
        CHECK(m.dim() == N + 1);
        for (int i = 0; i <= N; ++i) {
            CHECK(m.Yplus(i, i) == doctest::Approx(sigma(N - i, p)));
            for (int j = 0; j <= N; ++j) {
                if (j != i && j != i + 1) CHECK(m.Yplus(i, j) == 0.0);
                if (j != i && j != i - 1) CHECK(m.Yminus(i, j) == 0.0);
            }
        }
    }
}

TEST_CASE("resonance detection") {
    CHECK(detect_resonance(Params::make(1, 0.3, 0.0, 0.77, 0.41), 50).empty());

    // sigma = (0, 2, 14/3): only sigma_1 - sigma_0 = 2 is an integer
    const auto rs = detect_resonance(Params::make(2, 1, 1, Rational{1, 3}, 1), 50);
    CHECK(rs.size() == 1);
    CHECK(has_resonance(rs, 0, 2));
    CHECK(rs.front().j == 1);

    Gen g(21);
    for (int i = 0; i < 10; ++i) CHECK(detect_resonance(g.generic_params(3), 100).empty());
}

TEST_CASE("Frobenius normalization and eigenvector support") {
    Gen g(22);
    for (int t = 0; t < 10; ++t) {
        const int N = g.integer(1, 5);
        const Params p = g.generic_params(N);
        for (int k = 0; k <= N; ++k) {
            const auto s = frobenius(k, p, 10);
            CHECK(s.coeffs(0, 0) == 1.0);
            CHECK(s.sigma_k == doctest::Approx(sigma(k, p)));
            for (int i = N - k + 1; i <= N; ++i) CHECK(s.coeffs(i, 0) == 0.0);
        }
    }
}

TEST_CASE("uniform one-variable solution is x itself") {
    const auto s = frobenius(1, Params::make(1, 0, 0, 1, 1), 20);
    CHECK(eval_solution(s, 0.37).value(0) == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("leading behaviour as x -> 0") {
    const Params p = Params::make(3, 0.4, 0.9, 0.55, 1.3);
    for (int k = 0; k <= 3; ++k) {
        const auto s = frobenius(k, p, 30);
        const double x = 1e-6;
        CHECK(rel_err(eval_solution(s, x).value(0), std::pow(x, s.sigma_k)) < 1e-4);
    }
}

TEST_CASE("coefficients grow no faster than radius one") {
    Gen g(23);
    for (int t = 0; t < 5; ++t) {
        const Params p = g.generic_params(g.integer(1, 4));
        const auto s = frobenius(p.N, p, 200);
        const double c = s.coeffs.col(200).lpNorm<Eigen::Infinity>();
        if (c > 0) CHECK(std::pow(c, 1.0 / 200) <= 1.1);
    }
}

TEST_CASE("ODE residual of adaptive solutions") {
    Gen g(24);
    for (int t = 0; t < 10; ++t) {
        const Params p = g.generic_params(g.integer(1, 5));
        for (double x : {0.1, 0.3}) {
            std::vector<FrobeniusSolution> sols;
            for (int k = 0; k <= p.N; ++k) sols.push_back(frobenius_adaptive(k, p, x, 1e-14));
            CHECK(ode_residual(sols, p, x) <= 1e-9);
        }
    }
}

TEST_CASE("Wronskian invariant is constant in x") {
    Gen g(25);
    for (int t = 0; t < 5; ++t) {
        const Params p = g.generic_params(g.integer(1, 4));
        const auto sols = frobenius_all(p, 200);
        const double w0 = wronskian_invariant(sols, p, 0.1);
        for (double x : {0.2, 0.3, 0.4}) CHECK(rel_err(wronskian_invariant(sols, p, x), w0) < 1e-6);
    }
}

TEST_CASE("resonant exponents: direct solve fails, averaging resolves") {
    const Params p = Params::make(2, 1, 1, Rational{1, 3}, 1);
    CHECK_THROWS_AS(frobenius_direct(0, p, 10), SingularSolve);
    const auto s = frobenius(0, p, 40);
    CHECK(s.resonant);
    CHECK(s.eps_spread < 1e-3);
    std::vector<FrobeniusSolution> sols;
    for (int k = 0; k <= 2; ++k) sols.push_back(frobenius_adaptive(k, p, 0.2, 1e-13));
    CHECK(ode_residual(sols, p, 0.2) < 1e-7);
}

TEST_CASE("a genuine logarithmic solution is reported") {
    // alpha = -lambda1 makes sigma_1 = sigma_0
    const Params p = Params::make(1, -0.4, 0.3, 1.0, 0.4);
    const auto rs = detect_resonance(p, 20);
    CHECK(has_resonance(rs, 0, 0));
    CHECK_THROWS_AS(frobenius(0, p, 20), ResonanceUnresolvable);
    CHECK_THROWS_AS(frobenius_direct(0, p, 20), SingularSolve);
    CHECK_THROWS_AS(frobenius(1, p, 20), ResonanceUnresolvable);
}

TEST_CASE("geometric tail bounds geometric terms") {
    // ratio from the block maxima of the last ten terms, continued from the
    // largest of the last five
    std::vector<double> t;
    for (int l = 0; l <= 20; ++l) t.push_back(std::pow(0.5, l));
    const double exact = std::pow(0.5, 21) / 0.5;
    CHECK(geometric_tail(t) >= exact);
    CHECK(geometric_tail(t) == doctest::Approx(std::pow(0.5, 16)).epsilon(1e-12));
    std::vector<double> grow{1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024};
    CHECK(std::isinf(geometric_tail(grow)));
}

TEST_CASE("evaluation preconditions and tail check") {
    const auto s = frobenius(1, Params::make(2, 0.2, 0.3, 0.47, 0.93), 5);
    CHECK_THROWS_AS(eval_solution(s, 0.0), PreconditionError);
    CHECK_THROWS_AS(eval_solution(s, 1.0), PreconditionError);
    CHECK_THROWS_AS(eval_solution(s, 0.9, 1e-12), TailTooLarge);
}

TEST_CASE("adaptive truncation grows with x") {
    const Params p = Params::make(3, 0.2, 0.7, 0.45, 0.9);
    const auto a = frobenius_adaptive(2, p, 0.1, 1e-13);
    const auto b = frobenius_adaptive(2, p, 0.5, 1e-13);
    CHECK(a.L < b.L);
    CHECK(eval_solution(b, 0.5).tail_bound <= 1e-13 * eval_solution(b, 0.5).value.lpNorm<Eigen::Infinity>());
}
