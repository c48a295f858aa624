#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace selberg {

/// Signed value stored as sign and natural log of the magnitude, so that
/// long Gamma products survive where binary64 would overflow.
struct LogValue {
    int sign = 0;
    double logmag = -std::numeric_limits<double>::infinity();

    static LogValue zero() { return {}; }
    static LogValue one() { return {1, 0.0}; }
    static LogValue from_double(double v);
    static LogValue from_log(int sign, double logmag);

    bool is_zero() const { return sign == 0; }
    double to_double() const;

    LogValue operator*(const LogValue& o) const;
    LogValue operator/(const LogValue& o) const;
    LogValue operator-() const { return {-sign, logmag}; }
    LogValue& operator*=(const LogValue& o) { return *this = *this * o; }
    LogValue& operator/=(const LogValue& o) { return *this = *this / o; }

    std::string str() const;
};

LogValue operator+(const LogValue& a, const LogValue& b);

/// log|Gamma(x)| together with the sign of Gamma(x), valid on the whole real
/// line away from the poles at nonpositive integers.
struct SignedLogGamma {
    int sign;
    double logabs;
};
SignedLogGamma log_gamma(double x);

/// Distance from x to the nearest nonpositive integer (infinity for x > 0.5).
double distance_to_gamma_pole(double x);

/// Distance from x to the nearest integer.
double distance_to_integer(double x);

/// sin(pi x) with exact argument reduction, so zeros at integers are exact.
double sin_pi(double x);

/// log of the binomial coefficient C(n, k) for 0 <= k <= n.
double log_binomial(int n, int k);

// Absolute distance of a Gamma or sine argument to its singular set below
// which the library reports a pole.
inline constexpr double kPoleTolerance = 1e-12;

}  // namespace selberg
