#include "merb/linearize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace merb {

namespace {
constexpr double kSqrtEps = 1.4901161193847656e-08;  // sqrt(machine epsilon)
}

double default_jac_sigma(const Vec& u) { return kSqrtEps * (1.0 + inf_norm(u)); }

double default_v_sigma(double t) { return kSqrtEps * (1.0 + std::abs(t)); }

Vec fd_jac_action(const IvpProblem& problem, double t, const Vec& u, const Vec& w, double sigma) {
    if (sigma == 0.0) throw std::invalid_argument("fd_jac_action: sigma must be nonzero");
    Vec up = u;
    axpy(sigma, w, up);
    Vec fu = problem.f(t, u);
    Vec fp = problem.f(t, up);
    for (std::size_t i = 0; i < fu.size(); ++i) fp[i] = (fp[i] - fu[i]) / sigma;
    return fp;
}

Vec fd_v(const IvpProblem& problem, double t, const Vec& u, double sigma) {
    if (sigma == 0.0) throw std::invalid_argument("fd_v: sigma must be nonzero");
    Vec fu = problem.f(t, u);
    Vec fp = problem.f(t + sigma, u);
    for (std::size_t i = 0; i < fu.size(); ++i) fp[i] = (fp[i] - fu[i]) / sigma;
    return fp;
}

Vec Linearization::eval_n(double t, const Vec& u, CallCounters* counters) const {
    if (counters) ++counters->slow_calls;
    if (n_direct_) return n_direct_(t, u);
    Vec r = f_(t, u);
    Vec ju = apply_jac(u, counters);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= ju[i] + v_n[i] * t;
    return r;
}

Linearization linearize(const IvpProblem& problem, double t_n, const Vec& u_n,
                        const LinearizeOptions& opts, CallCounters* counters) {
    Linearization lin;
    lin.t_n = t_n;
    lin.u_n = u_n;
    lin.f_ = problem.f;
    lin.f0 = problem.f(t_n, u_n);
    if (!all_finite(lin.f0)) {
        throw std::runtime_error("linearization point invalid: F(t_n, u_n) not finite");
    }

    if (problem.has_jac_action() && !opts.force_fd) {
        auto jac = problem.jac_action;
        lin.jac_raw_ = [jac, t_n, u_n](const Vec& w) { return jac(t_n, u_n, w); };
    } else {
        const double sigma = opts.jac_sigma.value_or(default_jac_sigma(u_n));
        auto f = problem.f;
        Vec f0 = lin.f0;
        lin.jac_raw_ = [f, t_n, u_n, f0, sigma](const Vec& w) {
            Vec up = u_n;
            axpy(sigma, w, up);
            Vec fp = f(t_n, up);
            for (std::size_t i = 0; i < fp.size(); ++i) fp[i] = (fp[i] - f0[i]) / sigma;
            return fp;
        };
    }

    if (problem.autonomous) {
        lin.v_n = zeros(u_n.size());
    } else if (problem.has_v_eval() && !opts.force_fd) {
        lin.v_n = problem.v_eval(t_n, u_n);
    } else {
        const double sigma = opts.v_sigma.value_or(default_v_sigma(t_n));
        Vec fp = problem.f(t_n + sigma, u_n);
        lin.v_n = fp;
        for (std::size_t i = 0; i < fp.size(); ++i) lin.v_n[i] = (fp[i] - lin.f0[i]) / sigma;
    }

    if (opts.use_direct_forms && problem.n_direct) {
        auto nd = problem.n_direct;
        lin.n_direct_ = [nd, t_n, u_n](double t, const Vec& u) { return nd(t_n, u_n, t, u); };
    }
    if (opts.use_direct_forms && problem.d_direct) {
        auto dd = problem.d_direct;
        lin.d_direct_ = [dd, t_n, u_n](double t, const Vec& u) { return dd(t_n, u_n, t, u); };
    }

    lin.n0 = lin.eval_n(t_n, u_n, counters);
    return lin;
}

StageDifference stage_difference(const Linearization& lin, double t_n, double c_j, double H,
                                 const Vec& u_stage_j, int stage_index, CallCounters* counters) {
    if (c_j < 0.0 || c_j > 1.0) throw std::invalid_argument("stage_difference: node outside [0, 1]");
    if (H <= 0.0) throw std::invalid_argument("stage_difference: H must be positive");
    StageDifference d;
    d.stage_index = stage_index;
    const double t = t_n + c_j * H;
    if (lin.d_direct_) {
        if (counters) ++counters->slow_calls;
        d.value = lin.d_direct_(t, u_stage_j);
        return d;
    }
    d.value = lin.eval_n(t, u_stage_j, counters);
    for (std::size_t i = 0; i < d.value.size(); ++i) d.value[i] -= lin.n0[i];
    return d;
}

}  // namespace merb
