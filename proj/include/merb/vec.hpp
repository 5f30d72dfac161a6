#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace merb {

/// Dense real state vector.
using Vec = std::vector<double>;

inline bool all_finite(const Vec& u) {
    for (double x : u) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

inline double inf_norm(const Vec& u) {
    double m = 0.0;
    for (double x : u) m = std::max(m, std::abs(x));
    return m;
}

/// Max-norm distance between two states of equal dimension.
inline double max_abs_diff(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch (" +
                                    std::to_string(u.size()) + " vs " +
                                    std::to_string(v.size()) + ")");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return m;
}

/// y += a*x
inline void axpy(double a, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline Vec scaled(const Vec& x, double a) {
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = a * x[i];
    return y;
}

inline Vec zeros(std::size_t d) { return Vec(d, 0.0); }

}  // namespace merb
