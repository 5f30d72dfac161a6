#pragma once

#include <random>

#include "merb/dense.hpp"
#include "merb/vec.hpp"

namespace merb::testing {

inline std::mt19937& rng() {
    static std::mt19937 gen(20240817u);
    return gen;
}

inline Vec random_vec(int d, double scale = 1.0) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    Vec v(static_cast<std::size_t>(d));
    for (double& x : v) x = dist(rng());
    return v;
}

/// Random matrix rescaled to the requested infinity norm; since
/// spectral radius <= matrix norm this also bounds the spectral radius.
inline DenseMatrix random_matrix(int d, double target_norm) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    DenseMatrix m(d);
    for (double& x : m.data) x = dist(rng());
    const double norm = inf_norm(m);
    if (norm > 0.0) m = scaled(m, target_norm / norm);
    return m;
}

/// Least-squares slope of log(err) against log(h); local helper for
/// refinement studies.
inline double fit_slope(const std::vector<double>& h, const std::vector<double>& err) {
    const std::size_t n = h.size();
    double sx = 0, sy = 0;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = std::log(h[i]);
        y[i] = std::log(err[i]);
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double num = 0, den = 0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

}  // namespace merb::testing
