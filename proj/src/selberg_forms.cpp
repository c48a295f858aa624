#include "selberg/selberg_forms.hpp"

#include <cmath>
#include <sstream>

#include "selberg/errors.hpp"

namespace selberg {
namespace {

// Accumulates prod Gamma(x_i)^{e_i} with e_i = +-1.
class GammaProduct {
public:
    void mul(double x) {
        if (distance_to_gamma_pole(x) < kPoleTolerance) {
            numerator_pole_ = true;
            pole_arg_ = x;
            return;
        }
        value_ *= gamma_lv(x);
    }
    void div(double x) {
        if (distance_to_gamma_pole(x) < kPoleTolerance) {
            denominator_pole_ = true;
            return;
        }
        value_ /= gamma_lv(x);
    }
    void mul(const LogValue& v) { value_ *= v; }

    LogValue result(const char* what) const {
        if (numerator_pole_) {
            std::ostringstream os;
            os << what << ": Gamma argument " << pole_arg_ << " is a pole";
            throw PoleError(os.str());
        }
        if (denominator_pole_) return LogValue::zero();
        return value_;
    }

private:
    static LogValue gamma_lv(double x) {
        const auto g = log_gamma(x);
        return LogValue::from_log(g.sign, g.logabs);
    }

    LogValue value_ = LogValue::one();
    bool numerator_pole_ = false;
    bool denominator_pole_ = false;
    double pole_arg_ = 0.0;
};

void selberg_factors(GammaProduct& g, const SelbergArgs& a, bool skip_first) {
    for (int j = 0; j < a.n; ++j) {
        if (!(skip_first && j == 0)) g.mul(a.l1 + 1.0 + j * a.l);
        g.mul(a.l2 + 1.0 + j * a.l);
        g.mul(1.0 + (j + 1) * a.l);
        g.div(a.l1 + a.l2 + 2.0 + (a.n + j - 1) * a.l);
        g.div(1.0 + a.l);
    }
}

LogValue sine_lv(double x, const char* what) {
    const double s = sin_pi(x);
    if (distance_to_integer(x) < kPoleTolerance || s == 0.0) {
        std::ostringstream os;
        os << what << ": sin(pi*" << x << ") vanishes in a denominator";
        throw PoleError(os.str());
    }
    return LogValue::from_double(s);
}

}  // namespace

LogValue selberg(const SelbergArgs& args) {
    if (args.n < 0) throw PreconditionError("selberg: n must be >= 0");
    GammaProduct g;
    selberg_factors(g, args, false);
    return g.result("selberg");
}

LogValue selberg_reduced(const SelbergArgs& args) {
    if (args.n < 0) throw PreconditionError("selberg_reduced: n must be >= 0");
    if (args.n == 0) return LogValue::one();
    GammaProduct g;
    selberg_factors(g, args, true);
    return g.result("selberg_reduced");
}

LogValue selberg_df(int p, const SelbergArgs& args) {
    const int n = args.n;
    if (p < 0 || p > n) throw PreconditionError("selberg_df: need 0 <= p <= n");
    LogValue v = selberg(args);
    for (int j = 1; j <= n - p; ++j) {
        const double num1 = sin_pi((n - j + 1) * args.l);
        const double num2 = sin_pi(args.l1 + 1.0 + (n - j) * args.l);
        LogValue f = LogValue::from_double(static_cast<double>(j) / (n - j + 1));
        f *= LogValue::from_double(num1) * LogValue::from_double(num2);
        f /= sine_lv(j * args.l, "selberg_df");
        f /= sine_lv(args.l1 + args.l2 + 2.0 + (2 * n - j - 1) * args.l, "selberg_df");
        v *= f;
    }
    return v;
}

LogValue beta_fn(double a, double b) {
    GammaProduct g;
    g.mul(a);
    g.mul(b);
    g.div(a + b);
    return g.result("beta");
}

}  // namespace selberg
