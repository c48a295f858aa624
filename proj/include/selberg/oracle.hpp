#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "selberg/parallel.hpp"
#include "selberg/params.hpp"

namespace selberg {

enum class OracleMethod { tanh_sinh_nested, monte_carlo };

const char* method_name(OracleMethod m);

struct OracleResult {
    double value = 0.0;
    double error_estimate = 0.0;  // quadrature error estimate or MC standard error
    OracleMethod method = OracleMethod::tanh_sinh_nested;
    long samples_or_levels = 0;
    std::optional<std::uint64_t> seed;
};

struct QuadOptions {
    double tol = 1e-10;
    int max_levels = 12;
};

// Deterministic quadrature over ordered points; nesting depth is N (N <= 3).
inline constexpr int kMaxQuadratureN = 3;
inline constexpr int kMaxMonteCarloN = 6;

/// I_q(x) by nested tanh-sinh on the ordered region, split at t = x.
OracleResult quad_Iq(int q, double x, const Params& p, const QuadOptions& opt = {});

/// J_{pp,q}(x): as quad_Iq with the factor e_pp(t_1 - x, ..., t_N - x).
OracleResult quad_Jpq(int pp, int q, double x, const Params& p, const QuadOptions& opt = {});

/// S_N(lambda1, lambda2, lambda) by nested quadrature.
OracleResult quad_selberg(const Params& p, const QuadOptions& opt = {});

/// <prod_j |t_j - x|^{2 mu}> for 0 < x < 1 (alpha of p is ignored). Uses
/// quadrature for N <= 3 and Monte Carlo above.
OracleResult quad_moment(double x, double mu, const Params& p, const QuadOptions& opt = {});

/// <prod_j (x - t_j)^nu> for x outside (0, 1), by quadrature (N <= 3).
OracleResult quad_char_average(double x, int nu, const Params& p, const QuadOptions& opt = {});

inline constexpr int kMonteCarloStreams = 64;

/// Importance-sampled I_q(x): Beta proposals matched to the endpoint
/// weights on [0, x] and [x, 1]. The sample budget is split over a fixed
/// number of streams seeded from (seed, stream), so the result does not
/// depend on the thread count.
OracleResult mc_Iq(int q, double x, const Params& p, long samples, std::uint64_t seed,
                   Execution ex = Execution::parallel);

/// S_N by sampling t_j ~ Beta(lambda1 + 1, lambda2 + 1).
OracleResult mc_selberg(const Params& p, long samples, std::uint64_t seed,
                        Execution ex = Execution::parallel);

/// Self-normalized estimate of <prod |t_j - x|^{2 mu}>; the error is the
/// delta-method standard error.
OracleResult mc_moment(double x, double mu, const Params& p, long samples, std::uint64_t seed,
                       Execution ex = Execution::parallel);

}  // namespace selberg
