#include "merb/erk.hpp"

#include <algorithm>
#include <cmath>

namespace merb {

namespace {

// One explicit RK step of y' = rhs(t, y) from (t, y) with step h.
template <typename Rhs>
Vec rk_step(const ButcherTableau& tab, const Rhs& rhs, double t, const Vec& y, double h) {
    const int s = tab.stages();
    const std::size_t d = y.size();
    std::vector<Vec> k(static_cast<std::size_t>(s));
    Vec stage(d);
    for (int i = 0; i < s; ++i) {
        stage = y;
        for (int j = 0; j < i; ++j) {
            const double aij = tab.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (aij != 0.0) axpy(h * aij, k[static_cast<std::size_t>(j)], stage);
        }
        k[static_cast<std::size_t>(i)] = rhs(t + tab.c[static_cast<std::size_t>(i)] * h, stage);
    }
    Vec out = y;
    for (int i = 0; i < s; ++i) {
        axpy(h * tab.b[static_cast<std::size_t>(i)], k[static_cast<std::size_t>(i)], out);
    }
    return out;
}

}  // namespace

FastSolveResult erk_solve_with_captures(const FastIvp& ivp, const ButcherTableau& tab, int n_steps,
                                        const std::vector<double>& capture_times,
                                        CallCounters* counters) {
    if (n_steps < 1) throw std::invalid_argument("erk_solve: n_steps must be >= 1");
    if (ivp.lin == nullptr) throw std::invalid_argument("erk_solve: missing linearization");
    if (counters) ++counters->fast_solves;

    const double T = ivp.t_end;
    const double snap_tol = 1e-12 * std::max(T, 1.0);

    // Base uniform grid plus any off-grid capture times.
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(n_steps) + capture_times.size() + 1);
    for (int k = 0; k <= n_steps; ++k) {
        grid.push_back(k == n_steps ? T : T * static_cast<double>(k) / n_steps);
    }
    for (double tc : capture_times) {
        if (tc < -snap_tol || tc > T + snap_tol) {
            throw std::invalid_argument("erk_solve: capture time outside [0, t_end]");
        }
        const bool on_grid = std::any_of(grid.begin(), grid.end(),
                                         [&](double g) { return std::abs(g - tc) <= snap_tol; });
        if (!on_grid) grid.push_back(tc);
    }
    std::sort(grid.begin(), grid.end());

    const Linearization& lin = *ivp.lin;
    auto rhs = [&](double tau, const Vec& y) {
        if (counters) ++counters->fast_calls;
        Vec r = lin.apply_jac(y, counters);
        if (!ivp.forcing.coeffs.empty()) {
            const Vec g = ivp.forcing.eval(tau);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] += g[i];
        }
        return r;
    };

    FastSolveResult result;
    result.captures.assign(capture_times.size(), Vec{});
    Vec y = ivp.y0;

    auto record_captures = [&](double tau) {
        for (std::size_t ci = 0; ci < capture_times.size(); ++ci) {
            if (result.captures[ci].empty() && std::abs(capture_times[ci] - tau) <= snap_tol) {
                result.captures[ci] = y;
            }
        }
    };
    record_captures(0.0);

    const int total = static_cast<int>(grid.size()) - 1;
    for (int k = 0; k < total; ++k) {
        const double ta = grid[static_cast<std::size_t>(k)];
        const double h = grid[static_cast<std::size_t>(k) + 1] - ta;
        if (h <= 0.0) continue;
        y = rk_step(tab, rhs, ta, y, h);
        if (!all_finite(y)) {
            throw FastSolveDivergence("fast solve diverged at micro-step " + std::to_string(k + 1) +
                                      " of " + std::to_string(total));
        }
        record_captures(grid[static_cast<std::size_t>(k) + 1]);
    }
    result.y_end = y;
    return result;
}

Vec erk_solve(const FastIvp& ivp, const ButcherTableau& tab, int n_steps, CallCounters* counters) {
    return erk_solve_with_captures(ivp, tab, n_steps, {}, counters).y_end;
}

Vec erk_integrate(const ButcherTableau& tab, const std::function<Vec(double, const Vec&)>& rhs,
                  double ta, double tb, const Vec& y0, int n_steps) {
    Vec y = y0;
    const double h = (tb - ta) / n_steps;
    for (int k = 0; k < n_steps; ++k) {
        y = rk_step(tab, rhs, ta + k * h, y, h);
    }
    return y;
}

}  // namespace merb
