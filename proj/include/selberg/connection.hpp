#pragma once

#include <Eigen/Dense>

#include "selberg/logvalue.hpp"
#include "selberg/params.hpp"

namespace selberg {

enum class ConnectionBranch { generic, integer_lambda, rational_lambda };

const char* branch_name(ConnectionBranch b);

/// Which formula applies: exact integer lambda, exact rational r/s with
/// s >= 2, or the generic sine product.
ConnectionBranch connection_branch(const Params& p);

/// c_{k,q}: zero for k < q, one on the diagonal. Throws PoleError when a
/// denominator sine vanishes.
double c_entry(int k, int q, const Params& p);

struct ConnectionMatrix {
    int N = 0;
    Eigen::MatrixXd entries;  // entries(k, q)
    ConnectionBranch branch = ConnectionBranch::generic;
};

ConnectionMatrix connection_matrix(const Params& p);

/// Weight of (w_k(x))_0 in the expansion of I_q(x):
/// C(N,k) S_k(l1, alpha-1, l) S_{N-k}(l1+alpha-1+2kl, l2, l) c_{k,q}.
LogValue leading_coeff(int k, int q, const Params& p);

}  // namespace selberg
