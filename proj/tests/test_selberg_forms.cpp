#include "doctest.h"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "selberg/errors.hpp"
#include "selberg/oracle.hpp"
#include "selberg/selberg_forms.hpp"

using namespace selberg;
using selberg::testing::Gen;
using selberg::testing::rel_err;

TEST_CASE("log_gamma matches the standard library with sign") {
    Gen g(10);
    for (int i = 0; i < 200; ++i) {
        const double x = g.uniform(-20.0, 60.0);
        if (distance_to_gamma_pole(x) < 1e-6) continue;
        const auto lg = log_gamma(x);
        const double want = boost::math::tgamma(x);
        CHECK(lg.sign == (want > 0 ? 1 : -1));
        CHECK(lg.logabs == doctest::Approx(std::log(std::abs(want))).epsilon(1e-12).scale(1));
    }
}

TEST_CASE("sin_pi is exact at integers") {
    for (int k = -5; k <= 5; ++k) CHECK(sin_pi(k) == 0.0);
    CHECK(sin_pi(0.5) == 1.0);
    CHECK(sin_pi(1.5) == -1.0);
}

TEST_CASE("LogValue arithmetic") {
    auto a = LogValue::from_double(-3.0), b = LogValue::from_double(2.0);
    CHECK((a * b).to_double() == doctest::Approx(-6.0));
    CHECK((a / b).to_double() == doctest::Approx(-1.5));
    CHECK((a + b).to_double() == doctest::Approx(-1.0));
    CHECK((a + (-a)).is_zero());
    CHECK(LogValue::from_double(0.0).is_zero());
    // beyond binary64 range and back; the log magnitude reaches ~2.8e4, so
    // round-off in it is ~1e-11 relative to the value
    LogValue big = LogValue::one();
    for (int i = 0; i < 40; ++i) big *= LogValue::from_double(1e300);
    CHECK(big.logmag == doctest::Approx(40 * 300 * std::log(10.0)).epsilon(1e-14));
    for (int i = 0; i < 40; ++i) big /= LogValue::from_double(1e300);
    CHECK(big.to_double() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("selberg small cases") {
    CHECK(selberg::selberg({0, 0.3, 0.4, 0.5}).to_double() == 1.0);
    CHECK(selberg::selberg({1, 0, 0, 0.7}).to_double() == doctest::Approx(1.0).epsilon(1e-15));

    // [DERIVED] int_0^1 int_0^1 |t2 - t1| = 2 int_0^1 int_0^{t2} (t2 - t1): a
    // polynomial on the triangle, exact under Gauss-Legendre
    using boost::math::quadrature::gauss;
    const double oracle = 2.0 * gauss<double, 10>::integrate(
        [](double t2) {
            return gauss<double, 10>::integrate([t2](double t1) { return t2 - t1; }, 0.0, t2);
        },
        0.0, 1.0);
    CHECK(selberg::selberg({2, 0, 0, 0.5}).to_double() == doctest::Approx(oracle).epsilon(1e-14));
}

TEST_CASE("selberg with one variable is the beta function, free of l") {
    Gen g(11);
    for (int i = 0; i < 50; ++i) {
        const double l1 = g.uniform(-0.9, 4.0), l2 = g.uniform(-0.9, 4.0);
        const double want = boost::math::beta(l1 + 1, l2 + 1);
        CHECK(rel_err(selberg::selberg({1, l1, l2, g.uniform(0.1, 5.0)}).to_double(), want) < 1e-12);
        CHECK(rel_err(beta_fn(l1 + 1, l2 + 1).to_double(), want) < 1e-12);
    }
}

TEST_CASE("selberg agrees with nested quadrature") {
    Gen g(12);
    QuadOptions q;
    q.tol = 1e-12;
    for (int i = 0; i < 6; ++i) {
        const int n = 1 + i % 2;
        const Params p = g.params(n);
        const double want = quad_selberg(p, q).value;
        CHECK(rel_err(selberg::selberg({n, p.lambda1, p.lambda2, p.lambda}).to_double(), want) < 1e-8);
    }
}

TEST_CASE("selberg pole handling") {
    // numerator Gamma(l1 + 1) at l1 = -1
    CHECK_THROWS_AS(selberg::selberg({1, -1.0, 0.0, 1.0}), PoleError);
    // denominator pole only: the continuation vanishes
    CHECK(selberg::selberg({1, -0.5, -1.5, 1.0}).is_zero());
}

TEST_CASE("selberg_reduced cancels Gamma(l1 + 1)") {
    CHECK(selberg_reduced({1, -1, 0, 1}).to_double() == doctest::Approx(1.0));
    CHECK(selberg_reduced({0, 0.2, 0.3, 1}).to_double() == 1.0);
    Gen g(13);
    for (int i = 0; i < 20; ++i) {
        SelbergArgs a{g.integer(1, 5), g.uniform(-0.5, 2), g.uniform(-0.5, 2), g.uniform(0.2, 2)};
        const double want = selberg::selberg(a).to_double() / boost::math::tgamma(a.l1 + 1);
        CHECK(rel_err(selberg_reduced(a).to_double(), want) < 1e-12);
    }
}

TEST_CASE("mixed-range form") {
    Gen g(14);
    for (int i = 0; i < 20; ++i) {
        SelbergArgs a{g.integer(1, 6), g.uniform(-0.9, -0.1), g.uniform(-0.9, -0.1),
                      g.uniform(0.01, 0.3)};
        CHECK(rel_err(selberg_df(a.n, a).to_double(), selberg::selberg(a).to_double()) < 1e-15);

        // one-step recurrence in p applied from p = 0
        double v = selberg_df(0, a).to_double();
        const int n = a.n;
        for (int p = 1; p <= n; ++p) {
            v *= static_cast<double>(p) / (n - p + 1) * std::sin(std::numbers::pi * (n - p + 1) * a.l) *
                 std::sin(std::numbers::pi * (a.l1 + a.l2 + 2 + (n + p - 2) * a.l)) /
                 (std::sin(std::numbers::pi * p * a.l) *
                  std::sin(std::numbers::pi * (a.l1 + 1 + (p - 1) * a.l)));
            CHECK(rel_err(v, selberg_df(p, a).to_double()) < 1e-12);
        }
    }
    CHECK_THROWS_AS(selberg_df(2, {1, 0, 0, 1}), PreconditionError);
}

TEST_CASE("mixed-range form, one variable on [1, inf)") {
    // [DERIVED] S_(0,1) = int_1^inf t^l1 (t-1)^l2 dt = B(-l1-l2-1, l2+1),
    // at parameters where it converges
    const double l1 = -1.6, l2 = -0.3;
    const double want = boost::math::beta(-l1 - l2 - 1, l2 + 1);
    CHECK(rel_err(selberg_df(0, {1, l1, l2, 0.1}).to_double(), want) < 1e-12);
    // l1 + l2 + 2 = 1: the [1, inf) integral diverges, reported as a pole
    CHECK_THROWS_AS(selberg_df(0, {1, -0.5, -0.5, 0.1}), PoleError);
}
