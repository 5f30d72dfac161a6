#pragma once

#include <vector>

#include "merb/vec.hpp"

namespace merb {

/// Vector-valued polynomial in the fast time variable tau,
/// p(tau) = sum_k coeffs[k] tau^k.  Degrees stay tiny (<= 5).
struct ForcingPolynomial {
    std::vector<Vec> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    Vec eval(double tau) const {
        if (coeffs.empty()) return {};
        Vec r = coeffs.back();
        for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k) {
            const Vec& ck = coeffs[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < r.size(); ++i) r[i] = r[i] * tau + ck[i];
        }
        return r;
    }

    /// coeffs[k] += a * v, growing with zero blocks as needed.
    void add_term(int k, double a, const Vec& v) {
        while (static_cast<int>(coeffs.size()) <= k) coeffs.push_back(zeros(v.size()));
        axpy(a, v, coeffs[static_cast<std::size_t>(k)]);
    }
};

}  // namespace merb
