#pragma once

#include <vector>

#include "merb/dense.hpp"
#include "merb/linearize.hpp"
#include "merb/methods.hpp"
#include "merb/problem.hpp"

namespace merb {

struct ExprbResult {
    Vec u_next;
    std::vector<Vec> stages;  // stages[i-1] = U_i; stages[0] is the step's base state
};

/// Dense Jacobian of the frozen linearization, built column by column from
/// the action.  Verification only.
DenseMatrix dense_jacobian(const Linearization& lin, int dim_limit = kOracleDimLimit);

/// One step of the base one-step exponential scheme underlying `method`,
/// evaluated with dense phi-functions (exact up to roundoff).  This is the
/// reference the multirate step converges to as the micro step shrinks.
ExprbResult exprb_step(const MerbMethod& method, const IvpProblem& problem, double t_n,
                       const Vec& u_n, double H, const LinearizeOptions& lin_opts = {},
                       int dim_limit = kOracleDimLimit);

/// Residuals (max-abs) of the seven stiff order conditions for the method's
/// coefficient functions, evaluated on the matrix triple (Z, K, M):
///   1: sum b_i(Z) c_i^2 - 2 phi_3(Z)               (order 3)
///   2: sum b_i(Z) c_i^3 - 6 phi_4(Z)               (order 4)
///   3: sum b_i(Z) c_i^4 - 24 phi_5(Z)              (order 5)
///   4: sum b_i(Z) c_i K [sum a_ik(Z) c_k^2/2! - c_i^3 phi_3(c_i Z)]   (order 5)
///   5: sum b_i(Z) c_i^5 - 120 phi_6(Z)             (order 6)
///   6: sum b_i(Z) c_i^2 M [sum a_ik(Z) c_k^2/2! - c_i^3 phi_3(c_i Z)] (order 6)
///   7: sum b_i(Z) c_i K [sum a_ik(Z) c_k^3/3! - c_i^4 phi_4(c_i Z)]   (order 6)
std::vector<double> check_order_conditions(const MerbMethod& method, const DenseMatrix& Z,
                                           const DenseMatrix& K, const DenseMatrix& M);

}  // namespace merb
