#pragma once

#include <complex>
#include <span>
#include <vector>

namespace selberg {

struct RootOptions {
    int max_iterations = 2000;
};

/// All roots of sum_k a_k z^{n-k} (a_0 != 0) by Aberth-Ehrlich simultaneous
/// iteration in extended precision, started on a circle about the root
/// centroid. Throws ConvergenceFailure if some root never settles.
std::vector<std::complex<double>> aberth_roots(std::span<const double> coeffs,
                                               const RootOptions& opt = {});

/// |P(z)| / ||a||_2.
double root_residual(std::span<const double> coeffs, std::complex<double> z);

/// |P(z)| / sum_k |a_k| |z|^{n-k}, the componentwise backward error.
double root_backward_error(std::span<const double> coeffs, std::complex<double> z);

/// Zeros of the Jacobi polynomial P_n^{(a,b)} on (-1, 1), ascending, from the
/// eigenvalues of the symmetric three-term-recurrence matrix.
std::vector<double> jacobi_zeros(int n, double a, double b);

}  // namespace selberg
