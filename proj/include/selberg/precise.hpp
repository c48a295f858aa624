#pragma once

#include <complex>
#include <vector>

#include "selberg/params.hpp"

namespace selberg {

/// Zeros of <prod_j (x - t_j)^nu> carried out in MPFR arithmetic.
///
/// The monomial coefficients of this polynomial span many decades and its
/// roots off the real axis are extremely sensitive to them: double
/// coefficients perturb roots at |z| ~ 1.5 by O(1). Both the series
/// recurrence and the root iteration therefore run at `digits` decimal
/// digits; each root is then re-polished at digits + 40 and the whole
/// computation is repeated at doubled precision if any root moves by more
/// than 1e-12 (relative), up to max_digits.
struct PreciseZerosOptions {
    int digits = 0;  // 0 picks a starting precision from the coefficient range
    int max_digits = 400;
    int max_sweeps = 500;
};

struct PreciseZeros {
    std::vector<std::complex<double>> roots;  // sorted by real then imaginary part
    std::vector<double> coeffs;               // rounded, highest degree first
    int digits = 0;                           // precision that passed the check
    double max_residual = 0.0;        // max |P(z)| / ||a||_2 at the converged roots
    double max_backward_error = 0.0;  // max |P(z)| / sum |a_k||z|^{n-k}
    double max_polish_shift = 0.0;    // relative root motion under re-polishing
    double truncation_residual = 0.0;
};

PreciseZeros char_poly_zeros_precise(int nu, const Params& p,
                                     const PreciseZerosOptions& opt = {});

}  // namespace selberg
