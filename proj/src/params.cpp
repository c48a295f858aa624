#include "selberg/params.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "selberg/errors.hpp"

namespace selberg {

Rational Rational::make(long num, long den) {
    if (den == 0) throw PreconditionError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Params Params::make(int N, double lambda1, double lambda2, double lambda, double alpha) {
    if (N < 1) throw PreconditionError("N must be >= 1");
    Params p;
    p.N = N;
    p.lambda1 = lambda1;
    p.lambda2 = lambda2;
    p.lambda = lambda;
    p.alpha = alpha;
    // A double that is exactly the rounding of r/s (small s) is read as r/s,
    // which selects the exact connection-matrix branches.
    if (std::isfinite(lambda) && std::abs(lambda) < 1e6) {
        for (long den = 1; den <= kMaxAutoDenominator; ++den) {
            const double num = std::round(lambda * den);
            if (num / static_cast<double>(den) == lambda) {
                p.lambda_rational = Rational::make(static_cast<long>(num), den);
                break;
            }
        }
    }
    return p;
}

Params Params::make(int N, double lambda1, double lambda2, Rational lambda, double alpha) {
    Params p = make(N, lambda1, lambda2, lambda.value(), alpha);
    p.lambda_rational = lambda;
    return p;
}

Params Params::with_lambda1(double v) const {
    Params p = *this;
    p.lambda1 = v;
    return p;
}

Params Params::with_alpha(double v) const {
    Params p = *this;
    p.alpha = v;
    return p;
}

Params Params::swapped() const {
    Params p = *this;
    std::swap(p.lambda1, p.lambda2);
    return p;
}

std::string Params::str() const {
    std::ostringstream os;
    os.precision(17);
    os << "N=" << N << " lambda1=" << lambda1 << " lambda2=" << lambda2 << " lambda="
       << (lambda_rational ? lambda_rational->str() : std::to_string(lambda)) << " alpha=" << alpha;
    return os.str();
}

std::string ValidityReport::str() const {
    if (all()) return "valid";
    std::string s;
    auto add = [&](bool ok, const char* what) {
        if (!ok) s += (s.empty() ? "" : ", ") + std::string(what);
    };
    add(structural_ok, "N >= 1");
    add(lambda1_ok, "lambda1 > -1");
    add(lambda2_ok, "lambda2 > -1");
    add(alpha_ok, "alpha > 0");
    add(lambda_ok, "lambda > 0");
    return (continuation_regime() ? "continuation regime; fails " : "fails ") + s;
}

ValidityReport validate(const Params& p) {
    ValidityReport r;
    r.lambda1_ok = p.lambda1 > -1.0;
    r.lambda2_ok = p.lambda2 > -1.0;
    r.alpha_ok = p.alpha > 0.0;
    r.lambda_ok = p.lambda > 0.0;
    r.structural_ok = p.N >= 1;
    if (p.lambda_rational) {
        r.structural_ok = r.structural_ok && p.lambda_rational->den >= 1 &&
                          std::gcd(p.lambda_rational->num, p.lambda_rational->den) == 1 &&
                          p.lambda == p.lambda_rational->value();
    }
    return r;
}

double sigma(int k, const Params& p) {
    return k * (p.lambda1 + p.lambda * (k - 1) + p.alpha);
}

RecurrenceCoeffs recurrence_coeffs(int pp, const Params& p) {
    const int N = p.N;
    const double l1 = p.lambda1, l2 = p.lambda2, l = p.lambda, a = p.alpha;
    RecurrenceCoeffs c;
    c.A = (N - pp) * (l1 + l2 + 2.0 * l * (N - pp - 1) + 2.0 * a);
    c.B = (pp - N) * (l1 + l * (N - pp - 1) + a);
    c.D = pp * (l * (N - pp) + a);
    c.E = l1 + l2 + l * (2 * N - pp - 2) + a + 1.0;
    return c;
}

ParsedNumber parse_number(const std::string& text) {
    auto parse_long = [&](std::string_view s) {
        long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw PreconditionError("not an integer: '" + std::string(s) + "'");
        }
        return v;
    };
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string_view sv(text);
        const Rational r = Rational::make(parse_long(sv.substr(0, slash)),
                                          parse_long(sv.substr(slash + 1)));
        return {r.value(), r};
    }
    if (!text.empty() && text.find_first_of(".eEnN") == std::string::npos) {
        const Rational r = Rational::make(parse_long(text), 1);
        return {r.value(), r};
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw PreconditionError("not a number: '" + text + "'");
    }
    return {v, std::nullopt};
}

}  // namespace selberg
