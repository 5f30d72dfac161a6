#pragma once

#include <functional>
#include <optional>

#include "merb/counters.hpp"
#include "merb/problem.hpp"
#include "merb/vec.hpp"

namespace merb {

struct LinearizeOptions {
    /// Use finite differences even when the problem carries analytic forms.
    bool force_fd = false;
    /// Use the problem's closed-form remainder / stage-difference formulas
    /// when present (suppresses cancellation at tight accuracies).
    bool use_direct_forms = false;
    /// Finite-difference increments; defaults are sqrt(eps)*(1+|u|) for the
    /// Jacobian action and sqrt(eps)*(1+|t|) for the time derivative.
    std::optional<double> jac_sigma;
    std::optional<double> v_sigma;
};

/// Forward difference (F(t, u + sigma w) - F(t, u)) / sigma; O(sigma) error.
Vec fd_jac_action(const IvpProblem& problem, double t, const Vec& u, const Vec& w, double sigma);

/// Forward difference in time, (F(t + sigma, u) - F(t, u)) / sigma.
Vec fd_v(const IvpProblem& problem, double t, const Vec& u, double sigma);

double default_jac_sigma(const Vec& u);
double default_v_sigma(double t);

/// Per-step frozen linearization of F about (t_n, u_n):
///   F(t, u) = J u + V t + N(t, u)
/// with J, V evaluated at the freeze point.  The remainder N and its stage
/// differences are second-order flat at the freeze point, which is what the
/// whole scheme rides on.  Immutable after construction; safe to share
/// read-only across stage solves.
struct Linearization {
    double t_n = 0.0;
    Vec u_n;
    Vec f0;   // F(t_n, u_n)
    Vec v_n;  // V at the freeze point (zeros for autonomous problems)
    Vec n0;   // N(t_n, u_n)

    Vec apply_jac(const Vec& w, CallCounters* counters = nullptr) const {
        if (counters) ++counters->jac_action_calls;
        return jac_raw_(w);
    }

    /// N(t, u); one slow call.
    Vec eval_n(double t, const Vec& u, CallCounters* counters = nullptr) const;

    int dim() const { return static_cast<int>(u_n.size()); }

    // wiring, set by linearize()
    std::function<Vec(const Vec&)> jac_raw_;
    std::function<Vec(double, const Vec&)> f_;
    std::function<Vec(double, const Vec&)> n_direct_;
    std::function<Vec(double, const Vec&)> d_direct_;
};

/// Change in the frozen remainder between a stage state and the freeze point.
struct StageDifference {
    Vec value;
    int stage_index = 0;
};

/// Freeze J, V, N at (t_n, u_n).  Uses analytic jac_action / v_eval when the
/// problem has them, finite differences otherwise.  Throws when F at the
/// freeze point is not finite ("linearization point invalid").
Linearization linearize(const IvpProblem& problem, double t_n, const Vec& u_n,
                        const LinearizeOptions& opts = {}, CallCounters* counters = nullptr);

/// D_j = N(t_n + c_j H, U_j) - N(t_n, u_n); one slow call.  D_1 (c_j = 0,
/// U_j = u_n) is exactly zero.
StageDifference stage_difference(const Linearization& lin, double t_n, double c_j, double H,
                                 const Vec& u_stage_j, int stage_index = 0,
                                 CallCounters* counters = nullptr);

}  // namespace merb
