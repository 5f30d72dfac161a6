#include "merb/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "merb/erk.hpp"
#include "merb/tableau.hpp"

namespace merb {

IvpProblem reaction_diffusion(const ReactionDiffusionConfig& config) {
    if (config.grid_points < 3) throw std::invalid_argument("reaction_diffusion: grid_points must be >= 3");
    if (config.gamma <= 0.0 || config.epsilon <= 0.0) {
        throw std::invalid_argument("reaction_diffusion: gamma and epsilon must be positive");
    }
    const int d = config.grid_points;
    const double dx = (config.x_hi - config.x_lo) / (d - 1);
    const double diff = config.epsilon / (dx * dx);
    const double gamma = config.gamma;

    // Centered Laplacian with Neumann walls via ghost-point mirroring.
    auto laplacian = [d, diff](const Vec& u, Vec& out) {
        out[0] = 2.0 * diff * (u[1] - u[0]);
        for (int i = 1; i < d - 1; ++i) {
            out[static_cast<std::size_t>(i)] =
                diff * (u[static_cast<std::size_t>(i - 1)] - 2.0 * u[static_cast<std::size_t>(i)] +
                        u[static_cast<std::size_t>(i + 1)]);
        }
        out[static_cast<std::size_t>(d - 1)] =
            2.0 * diff * (u[static_cast<std::size_t>(d - 2)] - u[static_cast<std::size_t>(d - 1)]);
    };

    IvpProblem p;
    p.name = "reaction-diffusion";
    p.dim = d;
    p.t0 = config.t0;
    p.tf = config.tf;
    p.autonomous = true;

    const double lambda = 0.5 * std::sqrt(2.0 * gamma / config.epsilon);
    p.u0.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        const double x = config.x_lo + i * dx;
        p.u0[static_cast<std::size_t>(i)] = 1.0 / (1.0 + std::exp(lambda * (x - 1.0)));
    }

    p.f = [d, gamma, laplacian](double, const Vec& u) {
        Vec out(static_cast<std::size_t>(d));
        laplacian(u, out);
        for (int i = 0; i < d; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] += gamma * ui * ui * (1.0 - ui);
        }
        return out;
    };

    p.jac_action = [d, gamma, laplacian](double, const Vec& u, const Vec& w) {
        Vec out(static_cast<std::size_t>(d));
        laplacian(w, out);
        for (int i = 0; i < d; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] += gamma * (2.0 * ui - 3.0 * ui * ui) * w[static_cast<std::size_t>(i)];
        }
        return out;
    };

    // Closed-form remainder: the diffusion part is linear, so it cancels and
    // only the reaction survives.  N(u) = gamma [u^2(1-u) - (2u* - 3u*^2) u].
    p.n_direct = [d, gamma](double, const Vec& u_lin, double, const Vec& u) {
        Vec out(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            const double ul = u_lin[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] = gamma * (ui * ui * (1.0 - ui) - (2.0 * ul - 3.0 * ul * ul) * ui);
        }
        return out;
    };
    p.d_direct = [d, gamma](double, const Vec& u_lin, double, const Vec& u) {
        Vec out(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            const double ui = u[static_cast<std::size_t>(i)];
            const double ul = u_lin[static_cast<std::size_t>(i)];
            out[static_cast<std::size_t>(i)] =
                gamma * (ui * ui * (1.0 - ui) - ul * ul * (1.0 - ul) -
                         (2.0 * ul - 3.0 * ul * ul) * (ui - ul));
        }
        return out;
    };
    return p;
}

IvpProblem bidirectional(const BidirectionalConfig& config) {
    const double a = config.a, b = config.b, beta = config.beta;
    const double lambda = config.lambda, sigma = config.sigma;
    if (std::abs(a * sigma - b * lambda) > 1e-12 * std::max(std::abs(a * sigma), 1.0)) {
        throw std::invalid_argument("bidirectional: requires a*sigma = b*lambda");
    }
    const double c = a * lambda + b * sigma;

    IvpProblem p;
    p.name = "bidirectional";
    p.dim = 3;
    p.t0 = config.t0;
    p.tf = config.tf;

    p.exact = [a, b, beta, lambda, sigma, c](double t) {
        const double decay = std::exp(-lambda * t);
        return Vec{std::cos(sigma * t) + a * decay, -std::sin(sigma * t) + b * decay,
                   c * decay - beta * t};
    };
    p.u0 = p.exact(config.t0);

    p.f = [a, b, beta, lambda, sigma, c](double t, const Vec& x) {
        const double u = x[0], v = x[1], w = x[2];
        const double s = w + beta * t;
        const double pu = u - a * s / c;
        const double qv = v - b * s / c;
        return Vec{sigma * v - w - beta * t, -sigma * u,
                   -lambda * s - beta * pu * pu - beta * qv * qv};
    };

    p.jac_action = [a, b, beta, lambda, sigma, c](double t, const Vec& x, const Vec& w_vec) {
        const double u = x[0], v = x[1], w = x[2];
        const double s = w + beta * t;
        const double pu = u - a * s / c;
        const double qv = v - b * s / c;
        const double dw3 = -lambda + (2.0 * beta / c) * (a * pu + b * qv);
        return Vec{sigma * w_vec[1] - w_vec[2], -sigma * w_vec[0],
                   -2.0 * beta * pu * w_vec[0] - 2.0 * beta * qv * w_vec[1] + dw3 * w_vec[2]};
    };

    p.v_eval = [a, b, beta, lambda, sigma, c](double t, const Vec& x) {
        const double u = x[0], v = x[1], w = x[2];
        const double s = w + beta * t;
        const double pu = u - a * s / c;
        const double qv = v - b * s / c;
        return Vec{-beta, 0.0, -lambda * beta + (2.0 * beta * beta / c) * (a * pu + b * qv)};
    };
    return p;
}

IvpProblem linear_problem(const DenseMatrix& a, const Vec& u0, double t0, double tf) {
    if (a.n != static_cast<int>(u0.size())) {
        throw std::invalid_argument("linear_problem: dimension mismatch");
    }
    IvpProblem p;
    p.name = "linear";
    p.dim = a.n;
    p.t0 = t0;
    p.tf = tf;
    p.u0 = u0;
    p.autonomous = true;
    p.f = [a](double, const Vec& u) { return matvec(a, u); };
    p.jac_action = [a](double, const Vec&, const Vec& w) { return matvec(a, w); };
    return p;
}

IvpProblem dahlquist(double lambda, double tf) {
    DenseMatrix a(1);
    a(0, 0) = lambda;
    IvpProblem p = linear_problem(a, Vec{1.0}, 0.0, tf);
    p.name = "dahlquist";
    p.exact = [lambda](double t) { return Vec{std::exp(lambda * t)}; };
    return p;
}

ReferenceResult reference_solution(const IvpProblem& problem,
                                   const std::vector<double>& output_times, double target_tol) {
    ReferenceResult result;
    if (problem.has_exact()) {
        result.states.reserve(output_times.size());
        for (double t : output_times) result.states.push_back(problem.exact(t));
        return result;
    }

    const ButcherTableau& tab = tableau_of_order(6);
    const double span = (output_times.empty() ? problem.tf : output_times.back()) - problem.t0;

    auto run = [&](int total_steps) {
        std::vector<Vec> states;
        states.reserve(output_times.size());
        Vec u = problem.u0;
        double t = problem.t0;
        for (double target : output_times) {
            const double seg = target - t;
            if (seg > 0.0) {
                const int n = std::max(1, static_cast<int>(std::ceil(seg / span * total_steps)));
                u = erk_integrate(tab, problem.f, t, target, u, n);
            }
            t = target;
            states.push_back(u);
        }
        return states;
    };

    const int cap = 1 << 18;
    std::vector<Vec> coarse = run(2048);
    for (int n = 4096; n <= cap; n *= 2) {
        std::vector<Vec> fine = run(n);
        double diff = 0.0;
        for (std::size_t i = 0; i < fine.size(); ++i) diff = std::max(diff, max_abs_diff(coarse[i], fine[i]));
        if (diff <= target_tol) {
            result.states = std::move(fine);
            result.certified_error = diff;
            result.micro_steps = n;
            return result;
        }
        coarse = std::move(fine);
    }
    throw std::runtime_error("reference not certified: Richardson pair above " +
                             std::to_string(target_tol) + " at step cap");
}

}  // namespace merb
