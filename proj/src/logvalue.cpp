#include "selberg/logvalue.hpp"

#include <math.h>

#include <cstdio>
#include <numbers>

namespace selberg {

LogValue LogValue::from_double(double v) {
    if (v == 0.0) return zero();
    return {v > 0 ? 1 : -1, std::log(std::abs(v))};
}

LogValue LogValue::from_log(int sign, double logmag) {
    if (sign == 0) return zero();
    return {sign > 0 ? 1 : -1, logmag};
}

double LogValue::to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(logmag);
}

LogValue LogValue::operator*(const LogValue& o) const {
    if (sign == 0 || o.sign == 0) return zero();
    return {sign * o.sign, logmag + o.logmag};
}

LogValue LogValue::operator/(const LogValue& o) const {
    if (o.sign == 0) {
        return {sign == 0 ? 0 : sign, std::numeric_limits<double>::infinity()};
    }
    if (sign == 0) return zero();
    return {sign * o.sign, logmag - o.logmag};
}

std::string LogValue::str() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%c exp(%.17g)", sign < 0 ? '-' : (sign > 0 ? '+' : '0'),
                  logmag);
    return buf;
}

LogValue operator+(const LogValue& a, const LogValue& b) {
    if (a.sign == 0) return b;
    if (b.sign == 0) return a;
    const LogValue& big = a.logmag >= b.logmag ? a : b;
    const LogValue& small = a.logmag >= b.logmag ? b : a;
    const double ratio = std::exp(small.logmag - big.logmag);
    const double m = big.sign == small.sign ? 1.0 + ratio : 1.0 - ratio;
    if (m == 0.0) return LogValue::zero();
    return {big.sign, big.logmag + std::log1p(m - 1.0)};
}

SignedLogGamma log_gamma(double x) {
    int s = 1;
    const double v = ::lgamma_r(x, &s);
    return {s, v};
}

double distance_to_gamma_pole(double x) {
    if (x > 0.5) return std::numeric_limits<double>::infinity();
    return std::abs(x - std::round(x));
}

double distance_to_integer(double x) { return std::abs(x - std::round(x)); }

double sin_pi(double x) {
    // reduce to r in [-1, 1] with x = r + 2n exactly
    double r = x - 2.0 * std::round(0.5 * x);
    if (r > 0.5) {
        r = 1.0 - r;
    } else if (r < -0.5) {
        r = -1.0 - r;
    }
    return std::sin(std::numbers::pi * r);
}

double log_binomial(int n, int k) {
    return log_gamma(n + 1.0).logabs - log_gamma(k + 1.0).logabs -
           log_gamma(n - k + 1.0).logabs;
}

}  // namespace selberg
