#pragma once

#include <string>
#include <vector>

#include "merb/counters.hpp"
#include "merb/erk.hpp"
#include "merb/methods.hpp"
#include "merb/problem.hpp"

namespace merb {

struct StepOptions {
    /// Micro-solver orders; 0 means the method's defaults.  inner_order_drop
    /// lowers the stage solves (not the final solve) to order p-1, which the
    /// convergence bound still admits.
    int stage_tableau_order = 0;
    int final_tableau_order = 0;
    bool inner_order_drop = false;

    LinearizeOptions lin;

    /// Replace the micro solver with exact dense-phi solves of the modified
    /// IVPs (verification only; dimension-limited).
    bool exact_fast_solves = false;
};

int resolve_stage_order(const MerbMethod& method, const StepOptions& opts);
int resolve_final_order(const MerbMethod& method, const StepOptions& opts);

/// One macro step t_n -> t_n + H at time-scale separation m: freeze the
/// linearization, solve one modified fast IVP per stage group (reading every
/// member stage off the group solve), form the stage differences, then solve
/// the update IVP on [0, H].
Vec merb_step(const MerbMethod& method, const IvpProblem& problem, double t_n, const Vec& u_n,
              double H, int m, const StepOptions& opts = {}, CallCounters* counters = nullptr);

struct TrajectoryPoint {
    double t = 0.0;
    Vec u;
};

struct IntegrationResult {
    std::vector<TrajectoryPoint> trajectory;  // (t0, u0) followed by the outputs reached
    CallCounters counters;
    int steps = 0;
    bool ok = true;
    std::string error;
};

/// Repeated merb_step from (t0, u0), recording the state at each output
/// time.  The last step before an output shrinks to land on it exactly.  A
/// diverged fast solve ends the run early with the partial trajectory and
/// ok = false.
IntegrationResult integrate(const MerbMethod& method, const IvpProblem& problem, double H, int m,
                            const std::vector<double>& output_times, const StepOptions& opts = {});

/// Micro-step count for a fast interval [0, c*H] at separation factor m:
/// ceil(c*m), at least 1, so the micro step never exceeds H/m.
int micro_steps(double c, int m);

}  // namespace merb
