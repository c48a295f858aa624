#include "selberg/oracle.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <vector>

#include "selberg/errors.hpp"
#include "selberg/logvalue.hpp"
#include "selberg/selberg_forms.hpp"

namespace selberg {
namespace {

// Variables confined to [lo, hi]; e_lo and e_hi are the exponents of the
// weight's endpoint powers (t - lo)^e_lo and (hi - t)^e_hi.
struct Group {
    double lo, hi;
    int count;
    double e_lo = 0.0, e_hi = 0.0;
};

// A quadrature node for one variable, with distances to the ends of its
// interval computed without cancellation. skip_lo / skip_hi: the endpoint
// power at that end has been absorbed by a change of variable and must be
// left out of the weight.
struct Point {
    double t, lo, hi, dlo, dhi;
    bool skip_lo = false, skip_hi = false;
};

// Endpoint powers below this exponent are removed by substitution: the mass
// of (t - lo)^e within eps of lo is eps^(1+e), so e near -1 puts it beyond
// the reach of double-precision nodes.
constexpr double kSubstituteBelow = -0.5;

using Weight = std::function<double(const Point&)>;
using Final = std::function<double(const std::vector<double>&)>;

// Integral over lo_1 < t_1 < ... < t_N < hi_N where the variables are split
// into consecutive groups, each confined to its own interval [lo, hi].
class NestedQuadrature {
public:
    NestedQuadrature(std::vector<Group> groups, double two_lambda, Weight w, Final fin,
                     const QuadOptions& opt, double split = std::nan(""))
        : two_lambda_(two_lambda), weight_(std::move(w)), final_(std::move(fin)), opt_(opt),
          split_(split) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            for (int c = 0; c < groups[g].count; ++c) {
                var_group_.push_back(groups[g]);
                first_.push_back(c == 0);
                group_id_.push_back(static_cast<int>(g));
            }
        }
        n_ = static_cast<int>(var_group_.size());
        t_.assign(n_, 0.0);
        gap_.assign(n_, 0.0);
        dsplit_.assign(n_, 0.0);
        for (int i = 0; i < n_; ++i) integrators_.emplace_back(opt.max_levels);
    }

    OracleResult run() {
        OracleResult r;
        r.method = OracleMethod::tanh_sinh_nested;
        r.value = level(0);
        const double scale = std::max(std::abs(r.value), l1_);
        r.error_estimate = std::max(err_ + opt_.tol * scale, 1e-300);
        r.samples_or_levels = static_cast<long>(levels_);
        if (err_ > std::sqrt(opt_.tol) * scale) {
            std::ostringstream os;
            os << "nested tanh-sinh error estimate " << err_ << " stalls above tolerance for "
               << "value " << r.value;
            throw SlowConvergence(os.str());
        }
        return r;
    }

private:
    // t_i - t_j for j < i, summed from gaps or split distances when possible
    double difference(int i, int j) const {
        if (group_id_[i] == group_id_[j]) {
            double d = 0.0;
            for (int m = j + 1; m <= i; ++m) d += gap_[m];
            return d;
        }
        if (!std::isnan(split_)) return dsplit_[i] + dsplit_[j];
        return t_[i] - t_[j];
    }

    double level(int i) {
        const Group& g = var_group_[i];
        const double lo = first_[i] ? g.lo : t_[i - 1];
        const double hi = g.hi;
        if (!(hi > lo)) return 0.0;
        auto eval = [&](double t, double dlo, double dhi, bool skip_lo, bool skip_hi) -> double {
            t_[i] = t;
            gap_[i] = first_[i] ? 0.0 : dlo;
            if (!std::isnan(split_)) {
                if (hi == split_) {
                    dsplit_[i] = dhi;
                } else if (lo == split_) {
                    dsplit_[i] = dlo;
                } else {
                    dsplit_[i] = std::abs(t - split_);
                }
            }
            double v = weight_({t, lo, hi, dlo, dhi, skip_lo, skip_hi});
            for (int j = 0; j < i && v != 0.0; ++j) v *= std::pow(difference(i, j), two_lambda_);
            if (v == 0.0) return 0.0;
            return i + 1 == n_ ? v * final_(t_) : v * level(i + 1);
        };
        const double a = first_[i] ? g.e_lo : 0.0;
        const double b = g.e_hi;
        const bool sub_lo = a < kSubstituteBelow, sub_hi = b < kSubstituteBelow;

        double total = 0.0, err_sum = 0.0, l1_sum = 0.0;
        std::size_t lv_max = 0;
        // Integrates f(d_from, d_to) over [from, to] through the unit interval;
        // the error estimate on very short intervals is otherwise inflated.
        auto run = [&](auto&& f, double from, double to) {
            const double w = to - from;
            auto unit = [&](double s, double sc) {
                return f(sc < 0 ? -sc * w : s * w, sc >= 0 ? sc * w : (1.0 - s) * w);
            };
            double err = 0.0, l1 = 0.0;
            std::size_t lv = 0;
            try {
                total += w * integrators_[i].integrate(unit, 0.0, 1.0, opt_.tol, &err, &l1, &lv);
            } catch (const std::exception& e) {
                throw SlowConvergence(std::string("tanh-sinh failed: ") + e.what());
            }
            err_sum += w * err;
            l1_sum += w * l1;
            lv_max = std::max(lv_max, lv);
        };
        const double len = hi - lo;
        if (!sub_lo && !sub_hi) {
            run([&](double dl, double dh) {
                return eval(dl <= dh ? lo + dl : hi - dh, dl, dh, false, false);
            }, lo, hi);
        } else {
            // Split at the midpoint; a singular half is integrated in
            // u = (t - end)^(1+e), where the endpoint power becomes constant.
            const double half = 0.5 * len;
            if (sub_lo) {
                run([&](double u, double) {
                    const double d = std::pow(u, 1.0 / (1.0 + a));
                    return eval(lo + d, d, len - d, true, false) / (1.0 + a);
                }, 0.0, std::pow(half, 1.0 + a));
            } else {
                run([&](double dl, double) { return eval(lo + dl, dl, len - dl, false, false); },
                    0.0, half);
            }
            if (sub_hi) {
                run([&](double u, double) {
                    const double d = std::pow(u, 1.0 / (1.0 + b));
                    return eval(hi - d, len - d, d, false, true) / (1.0 + b);
                }, 0.0, std::pow(len - half, 1.0 + b));
            } else {
                run([&](double, double dh) { return eval(hi - dh, len - dh, dh, false, false); },
                    0.0, len - half);
            }
        }
        if (i == 0) {
            err_ = err_sum;
            l1_ = l1_sum;
            levels_ = lv_max;
        }
        return total;
    }

    double two_lambda_;
    Weight weight_;
    Final final_;
    QuadOptions opt_;
    double split_;
    int n_ = 0;
    std::vector<Group> var_group_;
    std::vector<char> first_;
    std::vector<int> group_id_;
    std::vector<double> t_, gap_, dsplit_;
    std::vector<boost::math::quadrature::tanh_sinh<double>> integrators_;
    double err_ = 0.0, l1_ = 0.0;
    std::size_t levels_ = 0;
};

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

void check_quadrature_n(const Params& p) {
    if (p.N > kMaxQuadratureN) {
        throw PreconditionError("nested quadrature supports N <= " +
                                std::to_string(kMaxQuadratureN) + "; use Monte Carlo");
    }
}

void check_unit(double x) {
    if (!(x > 0.0 && x < 1.0)) throw PreconditionError("oracle: need 0 < x < 1");
}

// elementary symmetric polynomial e_k of the values
double elementary(int k, const std::vector<double>& v) {
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (double a : v) {
        for (int j = k; j >= 1; --j) e[j] += a * e[j - 1];
    }
    return e[k];
}

OracleResult split_integral(int q, double x, const Params& p, const Final& fin,
                            const QuadOptions& opt) {
    check_quadrature_n(p);
    check_unit(x);
    if (q < 0 || q > p.N) throw PreconditionError("oracle: need 0 <= q <= N");
    std::vector<Group> groups;
    if (q > 0) groups.push_back({0.0, x, q, p.lambda1, p.alpha - 1.0});
    if (q < p.N) groups.push_back({x, 1.0, p.N - q, p.alpha - 1.0, p.lambda2});
    Weight w = [&p, x](const Point& pt) {
        const double d1 = pt.hi == 1.0 ? pt.dhi : 1.0 - pt.t;
        double dx;
        bool skip_x = false;
        if (pt.hi == x) {
            dx = pt.dhi;
            skip_x = pt.skip_hi;
        } else if (pt.lo == x) {
            dx = pt.dlo;
            skip_x = pt.skip_lo;
        } else {
            dx = std::abs(pt.t - x);
        }
        double v = skip_x ? 1.0 : std::pow(dx, p.alpha - 1.0);
        if (!(pt.skip_lo && pt.lo == 0.0)) v *= std::pow(pt.t, p.lambda1);
        if (!(pt.skip_hi && pt.hi == 1.0)) v *= std::pow(d1, p.lambda2);
        return v;
    };
    NestedQuadrature nq(groups, 2.0 * p.lambda, w, fin, opt, x);
    OracleResult r = nq.run();
    const double nf = factorial(p.N);
    r.value *= nf;
    r.error_estimate *= nf;
    return r;
}

OracleResult whole_interval(const Params& p, const Final& fin, const QuadOptions& opt) {
    check_quadrature_n(p);
    Weight w = [&p](const Point& pt) {
        const double d1 = pt.hi == 1.0 ? pt.dhi : 1.0 - pt.t;
        double v = 1.0;
        if (!(pt.skip_lo && pt.lo == 0.0)) v *= std::pow(pt.t, p.lambda1);
        if (!(pt.skip_hi && pt.hi == 1.0)) v *= std::pow(d1, p.lambda2);
        return v;
    };
    NestedQuadrature nq({{0.0, 1.0, p.N, p.lambda1, p.lambda2}}, 2.0 * p.lambda, w, fin, opt);
    OracleResult r = nq.run();
    const double nf = factorial(p.N);
    r.value *= nf;
    r.error_estimate *= nf;
    return r;
}

OracleResult ratio(const OracleResult& a, const OracleResult& b) {
    OracleResult r = a;
    r.value = a.value / b.value;
    r.error_estimate = std::abs(r.value) * (a.error_estimate / std::abs(a.value) +
                                            b.error_estimate / std::abs(b.value));
    r.samples_or_levels = std::max(a.samples_or_levels, b.samples_or_levels);
    return r;
}

// ---- Monte Carlo ----

struct Moments {
    double a = 0, b = 0, aa = 0, bb = 0, ab = 0;
    long n = 0;
};

double sample_beta(std::mt19937_64& rng, double a, double b) {
    std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
    const double x = ga(rng), y = gb(rng);
    return x / (x + y);
}

// Runs sample(rng) -> (a, b) over fixed streams and merges in stream order.
template <class Sample>
Moments run_streams(long samples, std::uint64_t seed, Execution ex, Sample&& sample) {
    if (samples < 2) throw PreconditionError("Monte Carlo needs at least 2 samples");
    std::vector<Moments> parts(kMonteCarloStreams);
    for_each_index(
        kMonteCarloStreams,
        [&](int s) {
            const long count =
                samples / kMonteCarloStreams + (s < samples % kMonteCarloStreams ? 1 : 0);
            std::seed_seq seq{static_cast<std::uint32_t>(seed),
                              static_cast<std::uint32_t>(seed >> 32),
                              static_cast<std::uint32_t>(s)};
            std::mt19937_64 rng(seq);
            Moments m;
            for (long i = 0; i < count; ++i) {
                const std::array<double, 2> v = sample(rng);
                m.a += v[0];
                m.b += v[1];
                m.aa += v[0] * v[0];
                m.bb += v[1] * v[1];
                m.ab += v[0] * v[1];
            }
            m.n = count;
            parts[s] = m;
        },
        ex);
    Moments total;
    for (const auto& m : parts) {
        total.a += m.a;
        total.b += m.b;
        total.aa += m.aa;
        total.bb += m.bb;
        total.ab += m.ab;
        total.n += m.n;
    }
    return total;
}

OracleResult mean_result(const Moments& m, std::uint64_t seed) {
    const double n = static_cast<double>(m.n);
    const double mean = m.a / n;
    const double var = std::max((m.aa / n - mean * mean) * n / (n - 1.0), 0.0);
    OracleResult r;
    r.value = mean;
    r.error_estimate = std::max(std::sqrt(var / n), 1e-300);
    r.method = OracleMethod::monte_carlo;
    r.samples_or_levels = m.n;
    r.seed = seed;
    return r;
}

void check_mc(const Params& p) {
    if (p.N > kMaxMonteCarloN) {
        throw PreconditionError("Monte Carlo oracle supports N <= " +
                                std::to_string(kMaxMonteCarloN));
    }
    if (!(p.lambda1 > -1.0 && p.lambda2 > -1.0 && p.lambda > 0.0)) {
        throw PreconditionError("Monte Carlo oracle needs lambda1, lambda2 > -1 and lambda > 0");
    }
}

double pair_factor(const double* t, int n, double two_lambda) {
    double v = 1.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) v *= std::pow(std::abs(t[i] - t[j]), two_lambda);
    }
    return v;
}

}  // namespace

const char* method_name(OracleMethod m) {
    return m == OracleMethod::monte_carlo ? "monte_carlo" : "tanh_sinh_nested";
}

OracleResult quad_Iq(int q, double x, const Params& p, const QuadOptions& opt) {
    return split_integral(q, x, p, [](const std::vector<double>&) { return 1.0; }, opt);
}

OracleResult quad_Jpq(int pp, int q, double x, const Params& p, const QuadOptions& opt) {
    if (pp < 0 || pp > p.N) throw PreconditionError("quad_Jpq: need 0 <= p <= N");
    const Final fin = [pp, x](const std::vector<double>& t) {
        std::vector<double> shifted(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) shifted[i] = t[i] - x;
        return elementary(pp, shifted);
    };
    return split_integral(q, x, p, fin, opt);
}

OracleResult quad_selberg(const Params& p, const QuadOptions& opt) {
    return whole_interval(p, [](const std::vector<double>&) { return 1.0; }, opt);
}

OracleResult quad_moment(double x, double mu, const Params& p, const QuadOptions& opt) {
    check_unit(x);
    if (p.N > kMaxQuadratureN) return mc_moment(x, mu, p, 1'000'000, 1);
    const Params pm = p.with_alpha(2.0 * mu + 1.0);
    OracleResult sum;
    sum.value = 0.0;
    for (int q = 0; q <= p.N; ++q) {
        const OracleResult r = quad_Iq(q, x, pm, opt);
        sum.value += r.value;
        sum.error_estimate += r.error_estimate;
        sum.samples_or_levels = std::max(sum.samples_or_levels, r.samples_or_levels);
    }
    return ratio(sum, quad_selberg(p, opt));
}

OracleResult quad_char_average(double x, int nu, const Params& p, const QuadOptions& opt) {
    if (x > 0.0 && x < 1.0) throw PreconditionError("quad_char_average: x must lie outside (0,1)");
    const Final fin = [x, nu](const std::vector<double>& t) {
        double v = 1.0;
        for (double ti : t) v *= std::pow(x - ti, nu);
        return v;
    };
    return ratio(whole_interval(p, fin, opt), quad_selberg(p, opt));
}

OracleResult mc_Iq(int q, double x, const Params& p, long samples, std::uint64_t seed,
                   Execution ex) {
    check_mc(p);
    check_unit(x);
    if (q < 0 || q > p.N) throw PreconditionError("mc_Iq: need 0 <= q <= N");
    if (!(p.alpha > 0.0)) throw PreconditionError("mc_Iq needs alpha > 0");
    const int N = p.N;
    // proposal normalizations on [0, x] and [x, 1]
    const double left = std::pow(x, p.lambda1 + p.alpha) *
                        beta_fn(p.lambda1 + 1.0, p.alpha).to_double();
    const double right = std::pow(1.0 - x, p.alpha + p.lambda2) *
                         beta_fn(p.alpha, p.lambda2 + 1.0).to_double();
    const double constant = std::exp(log_binomial(N, q)) * std::pow(left, q) *
                            std::pow(right, N - q);
    const Moments m = run_streams(samples, seed, ex, [&](std::mt19937_64& rng) {
        double t[kMaxMonteCarloN];
        double w = 1.0;
        for (int i = 0; i < q; ++i) {
            t[i] = x * sample_beta(rng, p.lambda1 + 1.0, p.alpha);
            w *= std::pow(1.0 - t[i], p.lambda2);
        }
        for (int i = q; i < N; ++i) {
            t[i] = x + (1.0 - x) * sample_beta(rng, p.alpha, p.lambda2 + 1.0);
            w *= std::pow(t[i], p.lambda1);
        }
        w *= pair_factor(t, N, 2.0 * p.lambda);
        return std::array<double, 2>{constant * w, 0.0};
    });
    return mean_result(m, seed);
}

OracleResult mc_selberg(const Params& p, long samples, std::uint64_t seed, Execution ex) {
    check_mc(p);
    const int N = p.N;
    const double constant = std::pow(beta_fn(p.lambda1 + 1.0, p.lambda2 + 1.0).to_double(), N);
    const Moments m = run_streams(samples, seed, ex, [&](std::mt19937_64& rng) {
        double t[kMaxMonteCarloN];
        for (int i = 0; i < N; ++i) t[i] = sample_beta(rng, p.lambda1 + 1.0, p.lambda2 + 1.0);
        return std::array<double, 2>{constant * pair_factor(t, N, 2.0 * p.lambda), 0.0};
    });
    return mean_result(m, seed);
}

OracleResult mc_moment(double x, double mu, const Params& p, long samples, std::uint64_t seed,
                       Execution ex) {
    check_mc(p);
    check_unit(x);
    const int N = p.N;
    const Moments m = run_streams(samples, seed, ex, [&](std::mt19937_64& rng) {
        double t[kMaxMonteCarloN];
        double f = 1.0;
        for (int i = 0; i < N; ++i) {
            t[i] = sample_beta(rng, p.lambda1 + 1.0, p.lambda2 + 1.0);
            f *= std::pow(std::abs(t[i] - x), 2.0 * mu);
        }
        const double w = pair_factor(t, N, 2.0 * p.lambda);
        return std::array<double, 2>{w * f, w};
    });
    const double n = static_cast<double>(m.n);
    const double A = m.a / n, B = m.b / n;
    const double R = A / B;
    const double va = m.aa / n - A * A, vb = m.bb / n - B * B, cab = m.ab / n - A * B;
    const double var = std::max((va - 2.0 * R * cab + R * R * vb) / (B * B), 0.0);
    OracleResult r;
    r.value = R;
    r.error_estimate = std::max(std::sqrt(var / n), 1e-300);
    r.method = OracleMethod::monte_carlo;
    r.samples_or_levels = m.n;
    r.seed = seed;
    return r;
}

}  // namespace selberg
