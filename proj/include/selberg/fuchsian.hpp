#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "selberg/params.hpp"

namespace selberg {

/// Residue matrices of dH/dx = (Y+/x + Y-/(1-x)) H for the vector
/// H_p = (x-1)^{-p} J_{p,q}, p = 0..N.
///
/// Y+ is upper bidiagonal with diagonal sigma_{N-p} and superdiagonal
/// (N-p) E_p; Y- is lower bidiagonal with diagonal b_{N-p} and subdiagonal D_p
/// (row p, column p-1).
struct FuchsMatrices {
    Eigen::MatrixXd Yplus;
    Eigen::MatrixXd Yminus;

    int dim() const { return static_cast<int>(Yplus.rows()); }
};

FuchsMatrices build_matrices(const Params& p);

/// sigma_k + l coincides with another exponent sigma_j.
struct Resonance {
    int k;  // solution index
    int l;  // order at which ((sigma_k + l) I - Y+) is singular
    int j;  // the exponent hit, sigma_j = sigma_k + l
};

inline constexpr double kResonanceTolerance = 1e-9;

std::vector<Resonance> detect_resonance(const Params& p, int L,
                                        double tol = kResonanceTolerance);

/// Truncated Frobenius solution w_k(x) = x^{sigma_k} sum_l coeffs.col(l) x^l,
/// normalized so that component 0 of coeffs.col(0) equals 1.
struct FrobeniusSolution {
    int k = 0;
    double sigma_k = 0.0;
    Eigen::MatrixXd coeffs;  // (N+1) x (L+1)
    int L = 0;
    bool resonant = false;
    double eps_used = 0.0;
    // Largest componentwise half-difference of the +-eps runs, relative to the
    // coefficient scale; O(eps) when the limit exists.
    double eps_spread = 0.0;

    Eigen::VectorXd coefficient(int l) const { return coeffs.col(l); }
    // p_{l,k}: component 0 of the l-th coefficient vector.
    double scalar_coefficient(int l) const { return coeffs(0, l); }
};

struct FrobeniusOptions {
    double eps = 1e-5;        // symmetric lambda1 perturbation for resonant cases
    double eps_check = 1e-4;  // second perturbation for the consistency check
    double consistency_tol = 1e-6;
};

/// Frobenius solution for sigma_k, with resonant orders resolved by averaging
/// runs at lambda1 +- eps. Throws ResonanceUnresolvable when those runs
/// diverge as eps -> 0 (a genuine logarithmic solution).
FrobeniusSolution frobenius(int k, const Params& p, int L, const FrobeniusOptions& opt = {});

/// Plain recurrence without resonance handling; throws SingularSolve when a
/// pivot vanishes.
FrobeniusSolution frobenius_direct(int k, const Params& p, int L);

inline constexpr int kMaxTruncation = 2000;

/// Smallest power-of-two-grown L (from an initial guess) whose tail estimate
/// at x is below tol relative to the value, capped at kMaxTruncation.
FrobeniusSolution frobenius_adaptive(int k, const Params& p, double x, double tol,
                                     const FrobeniusOptions& opt = {});

struct SolutionValue {
    Eigen::VectorXd value;       // w_k(x)
    Eigen::VectorXd derivative;  // d/dx w_k(x), term by term
    double tail_bound = 0.0;     // estimated truncation error of value (inf-norm)
};

/// Geometric extrapolation of the truncation error from the last five terms
/// of a series whose term magnitudes are given.
double geometric_tail(std::span<const double> term_magnitudes);

/// Evaluate at 0 < x < 1. Throws TailTooLarge when the tail estimate exceeds
/// tol relative to the value (tol <= 0 disables the check).
SolutionValue eval_solution(const FrobeniusSolution& s, double x, double tol = 0.0);

/// max_k |w_k' - (Y+/x + Y-/(1-x)) w_k|_inf / |w_k|_inf.
double ode_residual(std::span<const FrobeniusSolution> solutions, const Params& p, double x);

/// det[U(x)] (1-x)^{Tr Y-} where w_k = x^{sigma_k} U(x) e_k; constant in x.
double wronskian_invariant(std::span<const FrobeniusSolution> solutions, const Params& p,
                           double x);

/// All N+1 solutions; solutions are independent and computed in parallel.
std::vector<FrobeniusSolution> frobenius_all(const Params& p, int L,
                                             const FrobeniusOptions& opt = {});

}  // namespace selberg
