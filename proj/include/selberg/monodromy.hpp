#pragma once

#include <Eigen/Dense>

#include "selberg/params.hpp"

namespace selberg {

/// diag[exp(2 pi i q (lambda1 + alpha - 1 + (q-1) lambda))], q = 0..N.
Eigen::MatrixXcd d_matrix(const Params& p);

struct MonodromyTriple {
    Eigen::MatrixXcd M0, M1, Minf;
    double condition = 0.0;  // 1-norm condition number of the connection matrix
};

/// M0 = C^{-1} D C, M1 = J (M0 with lambda1 <-> lambda2) J with J the
/// anti-diagonal flip, Minf = (M0 M1)^{-1}. Throws IllConditioned when
/// cond(C) exceeds 1e6.
MonodromyTriple monodromy_triple(const Params& p);

/// Largest |entry| of Minf M0 M1 - I.
double product_defect(const MonodromyTriple& m);

}  // namespace selberg
