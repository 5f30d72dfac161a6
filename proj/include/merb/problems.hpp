#pragma once

#include <vector>

#include "merb/dense.hpp"
#include "merb/problem.hpp"

namespace merb {

/// Bistable reaction-diffusion benchmark: u_t = eps u_xx + gamma u^2 (1 - u)
/// on x in [0, 5] with homogeneous Neumann boundaries, discretized by
/// second-order centered differences (ghost-point mirroring at the walls).
struct ReactionDiffusionConfig {
    double gamma = 0.1;
    double epsilon = 0.01;
    int grid_points = 101;
    double x_lo = 0.0;
    double x_hi = 5.0;
    double t0 = 0.0;
    double tf = 5.0;
};

IvpProblem reaction_diffusion(const ReactionDiffusionConfig& config = {});

/// Three-variable nonautonomous system with linear slow-to-fast coupling and
/// quadratic fast-to-slow coupling; has a closed-form solution.  Requires
/// a*sigma = b*lambda.
struct BidirectionalConfig {
    double a = 1.0;
    double b = 20.0;
    double beta = 0.01;
    double lambda = 5.0;
    double sigma = 100.0;
    double t0 = 0.0;
    double tf = 1.0;
};

IvpProblem bidirectional(const BidirectionalConfig& config = {});

/// Linear constant-coefficient test problem u' = A u.
IvpProblem linear_problem(const DenseMatrix& a, const Vec& u0, double t0 = 0.0, double tf = 1.0);

/// Scalar Dahlquist problem u' = lambda u, u(0) = 1.
IvpProblem dahlquist(double lambda, double tf = 1.0);

struct ReferenceResult {
    std::vector<Vec> states;       // one per output time
    double certified_error = 0.0;  // Richardson estimate (0 for exact solutions)
    int micro_steps = 0;           // steps of the accepted fine run (0 for exact)
};

/// Reference trajectory at the output times.  Problems with an exact
/// solution just evaluate it; otherwise integrates with the order-6 tableau,
/// doubling the step count until two successive runs agree to `target_tol`
/// in max-norm (Richardson certification).  Throws "reference not certified"
/// when the cap is reached first.
ReferenceResult reference_solution(const IvpProblem& problem,
                                   const std::vector<double>& output_times,
                                   double target_tol = 1e-11);

}  // namespace merb
