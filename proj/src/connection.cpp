#include "selberg/connection.hpp"

#include <cmath>
#include <sstream>

#include "selberg/errors.hpp"
#include "selberg/selberg_forms.hpp"

namespace selberg {
namespace {

LogValue denominator_sine(double arg, int k, int q) {
    const double s = sin_pi(arg);
    if (distance_to_integer(arg) < kPoleTolerance || s == 0.0) {
        std::ostringstream os;
        os << "c_{" << k << "," << q << "}: sin(pi*" << arg
           << ") vanishes in a denominator; if lambda is rational supply it exactly as p/q";
        throw PoleError(os.str());
    }
    return LogValue::from_double(s);
}

// The sine product with lambda taken as a plain real number.
LogValue generic_entry(int k, int q, double l1, double alpha, double lam) {
    LogValue v = LogValue::one();
    for (int j = 1; j <= k - q; ++j) {
        v *= LogValue::from_double(sin_pi((k + 1 - j) * lam));
        v *= LogValue::from_double(sin_pi(l1 + (k - j) * lam));
        v /= denominator_sine(j * lam, k, q);
        v /= denominator_sine(l1 + alpha + (2 * k - j - 1) * lam, k, q);
    }
    return v;
}

// lambda an integer: C(k,q) (sin pi l1 / sin pi (l1+alpha))^{k-q}.
LogValue integer_entry(int k, int q, double l1, double alpha) {
    if (k == q) return LogValue::one();
    const LogValue ratio =
        LogValue::from_double(sin_pi(l1)) / denominator_sine(l1 + alpha, k, q);
    LogValue v = LogValue::from_log(1, log_binomial(k, q));
    for (int j = 0; j < k - q; ++j) v *= ratio;
    return v;
}

LogValue entry(int k, int q, const Params& p) {
    if (k < q) return LogValue::zero();
    if (k == q) return LogValue::one();
    switch (connection_branch(p)) {
        case ConnectionBranch::integer_lambda:
            return integer_entry(k, q, p.lambda1, p.alpha);
        case ConnectionBranch::rational_lambda: {
            const long s = p.lambda_rational->den;
            const int km = static_cast<int>(k % s), qm = static_cast<int>(q % s);
            if (km < qm) return LogValue::zero();
            const int kd = static_cast<int>(k / s), qd = static_cast<int>(q / s);
            LogValue v = generic_entry(km, qm, p.lambda1, p.alpha, p.lambda);
            v *= integer_entry(kd, qd, s * p.lambda1, s * p.alpha);
            // sign needed to match the limit of the generic product
            if (((s + 1) * (kd - qd)) % 2 != 0) v = -v;
            return v;
        }
        case ConnectionBranch::generic:
            break;
    }
    return generic_entry(k, q, p.lambda1, p.alpha, p.lambda);
}

}  // namespace

const char* branch_name(ConnectionBranch b) {
    switch (b) {
        case ConnectionBranch::generic: return "generic";
        case ConnectionBranch::integer_lambda: return "integer_lambda";
        case ConnectionBranch::rational_lambda: return "rational_lambda";
    }
    return "?";
}

ConnectionBranch connection_branch(const Params& p) {
    if (!p.lambda_rational) return ConnectionBranch::generic;
    return p.lambda_rational->is_integer() ? ConnectionBranch::integer_lambda
                                           : ConnectionBranch::rational_lambda;
}

double c_entry(int k, int q, const Params& p) {
    if (k < 0 || q < 0 || k > p.N || q > p.N) {
        throw PreconditionError("c_entry: indices must lie in 0..N");
    }
    return entry(k, q, p).to_double();
}

ConnectionMatrix connection_matrix(const Params& p) {
    ConnectionMatrix c;
    c.N = p.N;
    c.branch = connection_branch(p);
    c.entries = Eigen::MatrixXd::Zero(p.N + 1, p.N + 1);
    for (int k = 0; k <= p.N; ++k) {
        for (int q = 0; q <= k; ++q) c.entries(k, q) = c_entry(k, q, p);
    }
    return c;
}

LogValue leading_coeff(int k, int q, const Params& p) {
    if (k < 0 || q < 0 || k > p.N || q > p.N) {
        throw PreconditionError("leading_coeff: indices must lie in 0..N");
    }
    const LogValue c = entry(k, q, p);
    if (c.is_zero()) return c;
    const double lam = p.lambda;
    LogValue v = LogValue::from_log(1, log_binomial(p.N, k));
    v *= selberg({k, p.lambda1, p.alpha - 1.0, lam});
    v *= selberg({p.N - k, p.lambda1 + p.alpha - 1.0 + 2.0 * k * lam, p.lambda2, lam});
    return v * c;
}

}  // namespace selberg
