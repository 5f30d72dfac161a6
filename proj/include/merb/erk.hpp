#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "merb/counters.hpp"
#include "merb/forcing.hpp"
#include "merb/linearize.hpp"
#include "merb/tableau.hpp"

namespace merb {

/// A modified fast IVP: y'(tau) = J y + p(tau) on [0, t_end], y(0) = y0,
/// with J the frozen Jacobian action of `lin`.
struct FastIvp {
    const Linearization* lin = nullptr;
    ForcingPolynomial forcing;
    double t_end = 0.0;
    Vec y0;
};

/// Thrown when a fast solve produces a non-finite state.
struct FastSolveDivergence : std::runtime_error {
    explicit FastSolveDivergence(const std::string& what) : std::runtime_error(what) {}
};

struct FastSolveResult {
    Vec y_end;
    std::vector<Vec> captures;  // states at the requested capture times, in order
};

/// Fixed-step explicit RK solve of a fast IVP.  The base grid is n_steps
/// uniform micro steps; each capture time is snapped to the nearest grid
/// point when it already lies on the grid (to relative 1e-12) and otherwise
/// inserted as an extra breakpoint, splitting one micro step.  No
/// interpolation, so the tableau's order is preserved at every capture.
FastSolveResult erk_solve_with_captures(const FastIvp& ivp, const ButcherTableau& tab, int n_steps,
                                        const std::vector<double>& capture_times,
                                        CallCounters* counters = nullptr);

/// y(t_end) after n_steps uniform micro steps; adds s*n_steps fast calls.
Vec erk_solve(const FastIvp& ivp, const ButcherTableau& tab, int n_steps,
              CallCounters* counters = nullptr);

/// Generic fixed-step explicit RK integration of y' = rhs(t, y) from ta to
/// tb.  Used for reference solutions; no counters.
Vec erk_integrate(const ButcherTableau& tab, const std::function<Vec(double, const Vec&)>& rhs,
                  double ta, double tb, const Vec& y0, int n_steps);

}  // namespace merb
