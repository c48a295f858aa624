#pragma once

#include <optional>
#include <string>

namespace selberg {

/// Exact rational r/s with gcd(r, s) = 1 and s >= 1.
struct Rational {
    long num = 0;
    long den = 1;

    static Rational make(long num, long den);  // normalizes, throws on den == 0
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }
    std::string str() const;
};

inline constexpr long kMaxAutoDenominator = 64;

/// The parameter tuple of the Selberg weight
///   prod t^lambda1 (1-t)^lambda2 |x-t|^(alpha-1) prod |t_k - t_j|^(2 lambda)
/// on N variables. When lambda_rational is set, lambda equals it exactly and
/// the rational branches of the connection matrix become available.
struct Params {
    int N = 1;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda = 1.0;
    double alpha = 1.0;
    std::optional<Rational> lambda_rational;

    // A lambda equal to the double nearest r/s with s <= kMaxAutoDenominator
    // also sets lambda_rational.
    static Params make(int N, double lambda1, double lambda2, double lambda, double alpha);
    static Params make(int N, double lambda1, double lambda2, Rational lambda, double alpha);

    Params with_lambda1(double v) const;
    Params with_alpha(double v) const;
    // lambda1 <-> lambda2, the reflection t -> 1 - t
    Params swapped() const;

    std::string str() const;
};

struct ValidityReport {
    bool lambda1_ok = false;  // lambda1 > -1
    bool lambda2_ok = false;  // lambda2 > -1
    bool alpha_ok = false;    // alpha > 0
    bool lambda_ok = false;   // lambda > 0
    bool structural_ok = false;  // N >= 1 and rational lambda consistent

    bool all() const { return lambda1_ok && lambda2_ok && alpha_ok && lambda_ok && structural_ok; }
    // Only the alpha condition fails; closed forms still give the analytic
    // continuation.
    bool continuation_regime() const {
        return lambda1_ok && lambda2_ok && !alpha_ok && lambda_ok && structural_ok;
    }
    std::string str() const;
};

ValidityReport validate(const Params& p);

/// Indicial exponent sigma_k = k (lambda1 + lambda (k-1) + alpha).
double sigma(int k, const Params& p);

/// Scalars of the differential-difference system for J_{p,q}.
struct RecurrenceCoeffs {
    double A, B, D, E;
};
RecurrenceCoeffs recurrence_coeffs(int pp, const Params& p);

/// Parse "0.25", "-1e-3", "3" or "1/3". Integer and p/q input also carry the
/// exact rational.
struct ParsedNumber {
    double value;
    std::optional<Rational> rational;
};
ParsedNumber parse_number(const std::string& text);

}  // namespace selberg
