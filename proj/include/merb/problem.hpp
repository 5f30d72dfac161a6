#pragma once

#include <functional>
#include <string>

#include "merb/vec.hpp"

namespace merb {

/// An ODE initial-value problem u'(t) = F(t, u), t in [t0, tf].
///
/// Only `f`, `dim`, `u0` and the time span are required.  The optional
/// evaluators supply analytic derivative information; when absent the solver
/// falls back to finite differences.  `exact`, when present, must satisfy
/// exact(t0) == u0.
struct IvpProblem {
    std::string name;
    int dim = 0;
    double t0 = 0.0;
    double tf = 1.0;
    Vec u0;

    /// Right-hand side F(t, u).
    std::function<Vec(double, const Vec&)> f;

    /// Jacobian-vector product (dF/du)(t, u) * w.
    std::function<Vec(double, const Vec&, const Vec&)> jac_action;

    /// Time derivative (dF/dt)(t, u).
    std::function<Vec(double, const Vec&)> v_eval;

    /// Exact solution, when known.
    std::function<Vec(double)> exact;

    /// Frozen nonlinear remainder evaluated from a closed-form expression:
    /// n_direct(t_lin, u_lin, t, u) = F(t,u) - J(t_lin,u_lin) u - V(t_lin,u_lin) t.
    /// Avoids cancellation at tight accuracies; used only on request.
    std::function<Vec(double, const Vec&, double, const Vec&)> n_direct;

    /// Closed-form stage difference: d_direct(t_lin, u_lin, t, u) =
    /// n(t, u) - n(t_lin, u_lin) for the remainder frozen at (t_lin, u_lin).
    std::function<Vec(double, const Vec&, double, const Vec&)> d_direct;

    /// True when F does not depend on t (skips V evaluations entirely).
    bool autonomous = false;

    bool has_jac_action() const { return static_cast<bool>(jac_action); }
    bool has_v_eval() const { return static_cast<bool>(v_eval); }
    bool has_exact() const { return static_cast<bool>(exact); }
};

/// n output times evenly spaced over (t0, tf]; excludes t0 itself.
inline std::vector<double> evenly_spaced_outputs(const IvpProblem& p, int n) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k) {
        out.push_back(p.t0 + (p.tf - p.t0) * static_cast<double>(k) / static_cast<double>(n));
    }
    return out;
}

}  // namespace merb
