#include "doctest.h"

#include "generators.hpp"
#include "selberg/errors.hpp"
#include "selberg/fuchsian.hpp"
#include "selberg/params.hpp"

using namespace selberg;
using selberg::testing::Gen;

TEST_CASE("validate flags each condition") {
    CHECK(validate(Params::make(2, 0, 0, 1, 1)).all());

    auto r = validate(Params::make(1, -2, 0, 1, 1));
    CHECK_FALSE(r.lambda1_ok);
    CHECK(r.lambda2_ok);
    CHECK_FALSE(r.all());

    auto c = validate(Params::make(3, 0.5, 0.5, 0.5, -0.75));
    CHECK_FALSE(c.alpha_ok);
    CHECK(c.continuation_regime());
}

TEST_CASE("Params::make rejects N < 1") {
    CHECK_THROWS_AS(Params::make(0, 0, 0, 1, 1), PreconditionError);
}

TEST_CASE("sigma at fixed points") {
    Gen g(1);
    for (int i = 0; i < 5; ++i) CHECK(sigma(0, g.params(3)) == 0.0);
    CHECK(sigma(1, Params::make(1, 0.3, 0, 1, 0.7)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sigma(2, Params::make(2, 1, 0, 0.5, 1)) == 5.0);
}

TEST_CASE("sigma differences factor, sigma increases") {
    Gen g(2);
    for (int trial = 0; trial < 50; ++trial) {
        const int N = g.integer(1, 6);
        const Params p = g.params(N);
        for (int k = 0; k <= N; ++k) {
            for (int j = 0; j <= N; ++j) {
                const double want = (k - j) * (p.lambda1 + p.alpha + (k + j - 1) * p.lambda);
                CHECK(sigma(k, p) - sigma(j, p) == doctest::Approx(want).epsilon(1e-12).scale(1));
            }
            if (k > 0) CHECK(sigma(k, p) > sigma(k - 1, p));
        }
    }
}

TEST_CASE("recurrence coefficients by substitution") {
    const auto top = recurrence_coeffs(3, Params::make(3, 0.4, 0.2, 0.7, 1.3));
    CHECK(top.A == 0.0);
    CHECK(top.B == 0.0);

    const auto c0 = recurrence_coeffs(0, Params::make(1, 0, 0, 1, 1));
    CHECK(c0.A == 2.0);
    CHECK(c0.B == -1.0);
    CHECK(c0.D == 0.0);
    CHECK(c0.E == 2.0);

    CHECK(recurrence_coeffs(1, Params::make(2, 1, 1, 0.5, 1)).D == 1.5);
}

TEST_CASE("residue matrices agree with the recurrence coefficients") {
    Gen g(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int N = g.integer(1, 6);
        const Params p = g.params(N);
        const auto m = build_matrices(p);
        for (int i = 0; i <= N; ++i) {
            const auto c = recurrence_coeffs(N - i, p);
            const int row = N - i;
            CHECK(m.Yplus(row, row) == doctest::Approx(sigma(i, p)).epsilon(1e-12));
            CHECK(m.Yplus(row, row) == doctest::Approx(-c.B).epsilon(1e-12));
            CHECK(m.Yminus(row, row) == doctest::Approx(N - i - c.A - c.B).epsilon(1e-12));
            if (row + 1 <= N) CHECK(m.Yplus(row, row + 1) == doctest::Approx((N - row) * c.E));
            if (row >= 1) CHECK(m.Yminus(row, row - 1) == doctest::Approx(c.D));
        }
    }
}

TEST_CASE("number parsing") {
    auto third = parse_number("1/3");
    REQUIRE(third.rational);
    CHECK(third.rational->num == 1);
    CHECK(third.rational->den == 3);
    CHECK(third.value == 1.0 / 3.0);

    auto neg = parse_number("4/-6");
    CHECK(neg.rational->num == -2);
    CHECK(neg.rational->den == 3);

    CHECK(parse_number("3").rational->is_integer());
    CHECK_FALSE(parse_number("0.25").rational);
    CHECK(parse_number("-1e-3").value == -1e-3);
    CHECK_THROWS_AS(parse_number("1/0"), PreconditionError);
    CHECK_THROWS_AS(parse_number("abc"), PreconditionError);
    CHECK_THROWS_AS(parse_number("0.5x"), PreconditionError);
}

TEST_CASE("decimal lambda near a small fraction is recognised") {
    auto p = Params::make(2, 0, 0, 0.5, 1);
    REQUIRE(p.lambda_rational);
    CHECK(p.lambda_rational->str() == "1/2");
    CHECK(Params::make(2, 0, 0, 1.0, 1).lambda_rational->is_integer());
    CHECK_FALSE(Params::make(2, 0, 0, 0.5 + 1e-9, 1).lambda_rational);
    CHECK_FALSE(Params::make(2, 0, 0, 1.0 / 67.0, 1).lambda_rational);
}

TEST_CASE("swap exchanges the endpoint exponents") {
    auto p = Params::make(3, 0.1, 0.9, 0.4, 1.2).swapped();
    CHECK(p.lambda1 == 0.9);
    CHECK(p.lambda2 == 0.1);
}
