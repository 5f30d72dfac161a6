#include "merb/step.hpp"

#include <cmath>
#include <stdexcept>

#include "merb/dense.hpp"
#include "merb/exprb.hpp"

namespace merb {

int micro_steps(double c, int m) {
    // Guard against c*m landing a hair above an integer in floating point.
    const double cm = c * static_cast<double>(m);
    const int n = static_cast<int>(std::ceil(cm * (1.0 - 1e-12) - 1e-12));
    return std::max(1, n);
}

int resolve_stage_order(const MerbMethod& method, const StepOptions& opts) {
    if (opts.stage_tableau_order > 0) return opts.stage_tableau_order;
    if (opts.inner_order_drop) return method.order - 1;
    return method.inner_order_stages;
}

int resolve_final_order(const MerbMethod& method, const StepOptions& opts) {
    if (opts.final_tableau_order > 0) return opts.final_tableau_order;
    return method.inner_order_final;
}

Vec merb_step(const MerbMethod& method, const IvpProblem& problem, double t_n, const Vec& u_n,
              double H, int m, const StepOptions& opts, CallCounters* counters) {
    if (H <= 0.0) throw std::invalid_argument("merb_step: H must be positive");
    if (m < 1) throw std::invalid_argument("merb_step: m must be >= 1");

    const Linearization lin = linearize(problem, t_n, u_n, opts.lin, counters);

    const ButcherTableau* stage_tab = nullptr;
    const ButcherTableau* final_tab = nullptr;
    DenseMatrix dense_jac;
    if (opts.exact_fast_solves) {
        dense_jac = dense_jacobian(lin);
    } else {
        stage_tab = &tableau_of_order(resolve_stage_order(method, opts));
        final_tab = &tableau_of_order(resolve_final_order(method, opts));
    }

    std::vector<StageDifference> d_hats;
    for (std::size_t g = 0; g < method.groups.size(); ++g) {
        const StageGroup& group = method.groups[g];
        const double c_lead = method.node(group.lead);
        const double span = c_lead * H;

        FastIvp ivp;
        ivp.lin = &lin;
        ivp.forcing = build_stage_polynomial(method, lin, d_hats, t_n, H, static_cast<int>(g));
        ivp.t_end = span;
        ivp.y0 = u_n;

        std::vector<double> capture_times;
        capture_times.reserve(group.members.size());
        for (int j : group.members) capture_times.push_back(method.node(j) * H);

        std::vector<Vec> stage_states;
        if (opts.exact_fast_solves) {
            if (counters) ++counters->fast_solves;
            stage_states.reserve(group.members.size());
            for (double tc : capture_times) {
                stage_states.push_back(exact_affine_solve(dense_jac, u_n, tc, ivp.forcing.coeffs));
            }
        } else {
            FastSolveResult solved;
            try {
                solved = erk_solve_with_captures(ivp, *stage_tab, micro_steps(c_lead, m),
                                                 capture_times, counters);
            } catch (const FastSolveDivergence& e) {
                throw FastSolveDivergence(std::string(e.what()) + " (stage group " +
                                          std::to_string(g + 1) + ", t_n = " + std::to_string(t_n) + ")");
            }
            stage_states = std::move(solved.captures);
        }

        for (std::size_t k = 0; k < group.members.size(); ++k) {
            const int j = group.members[k];
            d_hats.push_back(
                stage_difference(lin, t_n, method.node(j), H, stage_states[k], j, counters));
        }
    }

    FastIvp update;
    update.lin = &lin;
    update.forcing = build_update_polynomial(method, lin, d_hats, t_n, H);
    update.t_end = H;
    update.y0 = u_n;

    if (opts.exact_fast_solves) {
        if (counters) ++counters->fast_solves;
        return exact_affine_solve(dense_jac, u_n, H, update.forcing.coeffs);
    }
    try {
        return erk_solve(update, *final_tab, m, counters);
    } catch (const FastSolveDivergence& e) {
        throw FastSolveDivergence(std::string(e.what()) + " (update solve, t_n = " +
                                  std::to_string(t_n) + ")");
    }
}

IntegrationResult integrate(const MerbMethod& method, const IvpProblem& problem, double H, int m,
                            const std::vector<double>& output_times, const StepOptions& opts) {
    if (H <= 0.0) throw std::invalid_argument("integrate: H must be positive");
    IntegrationResult result;
    double t = problem.t0;
    Vec u = problem.u0;
    result.trajectory.push_back({t, u});

    const double tiny = 1e-13 * std::max({1.0, std::abs(problem.t0), std::abs(problem.tf)});
    try {
        for (double target : output_times) {
            if (target < t - tiny) {
                throw std::invalid_argument("integrate: output times must be nondecreasing from t0");
            }
            while (target - t > H * (1.0 + 1e-9)) {
                u = merb_step(method, problem, t, u, H, m, opts, &result.counters);
                ++result.steps;
                t += H;
            }
            if (target - t > tiny) {
                u = merb_step(method, problem, t, u, target - t, m, opts, &result.counters);
                ++result.steps;
            }
            t = target;
            result.trajectory.push_back({t, u});
        }
    } catch (const FastSolveDivergence& e) {
        result.ok = false;
        result.error = e.what();
    }
    return result;
}

}  // namespace merb
