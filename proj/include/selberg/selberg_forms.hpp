#pragma once

#include "selberg/logvalue.hpp"

namespace selberg {

/// Arguments of the Selberg integral S_n(l1, l2, l).
struct SelbergArgs {
    int n = 0;
    double l1 = 0.0;
    double l2 = 0.0;
    double l = 0.0;
};

/// S_n(l1,l2,l) = prod_{j<n} G(l1+1+jl) G(l2+1+jl) G(1+(j+1)l)
///                / [G(l1+l2+2+(n+j-1)l) G(1+l)].
/// Negative Gamma arguments give the analytic continuation with its sign.
/// Throws PoleError when a numerator Gamma sits on a pole; a denominator pole
/// alone makes the product exactly zero.
LogValue selberg(const SelbergArgs& args);

/// Mixed-range integral S_{(p, n-p)}(l1, l2, l): p variables on [0,1],
/// n-p on [1, inf), evaluated through its closed sine-ratio relation to S_n.
LogValue selberg_df(int p, const SelbergArgs& args);

/// S_n(l1,l2,l) / Gamma(l1+1), computed with the j = 0 factor Gamma(l1+1)
/// cancelled, so it stays finite at l1 = -1.
LogValue selberg_reduced(const SelbergArgs& args);

/// Euler beta B(a, b) as a LogValue (analytic continuation for negative args).
LogValue beta_fn(double a, double b);

}  // namespace selberg
