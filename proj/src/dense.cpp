#include "merb/dense.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace merb {

DenseMatrix DenseMatrix::identity(int dim) {
    DenseMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c(a.n);
    for (int i = 0; i < a.n; ++i) {
        for (int k = 0; k < a.n; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < a.n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Vec matvec(const DenseMatrix& a, const Vec& x) {
    Vec y(static_cast<std::size_t>(a.n), 0.0);
    for (int i = 0; i < a.n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < a.n; ++j) acc += a(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = acc;
    }
    return y;
}

DenseMatrix scaled(const DenseMatrix& a, double s) {
    DenseMatrix c = a;
    for (double& x : c.data) x *= s;
    return c;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
    return c;
}

double inf_norm(const DenseMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.n; ++i) {
        double row = 0.0;
        for (int j = 0; j < a.n; ++j) row += std::abs(a(i, j));
        m = std::max(m, row);
    }
    return m;
}

double max_abs(const DenseMatrix& a) {
    double m = 0.0;
    for (double x : a.data) m = std::max(m, std::abs(x));
    return m;
}

DenseMatrix expm(const DenseMatrix& a) {
    if (!a.data.empty() && !all_finite(a.data)) {
        throw std::invalid_argument("expm: non-finite entries");
    }
    const double norm = inf_norm(a);
    int s = 0;
    if (norm > 1.0) s = static_cast<int>(std::ceil(std::log2(norm)));
    DenseMatrix b = scaled(a, std::ldexp(1.0, -s));

    // Taylor sum; 1/26! ~ 2.5e-27 so the truncation is far below roundoff
    // for ||B|| <= 1.
    DenseMatrix result = DenseMatrix::identity(a.n);
    DenseMatrix term = DenseMatrix::identity(a.n);
    for (int k = 1; k <= 30; ++k) {
        term = scaled(matmul(term, b), 1.0 / k);
        result = add(result, term);
        if (max_abs(term) < 1e-18 * (1.0 + max_abs(result))) break;
    }
    for (int k = 0; k < s; ++k) result = matmul(result, result);
    return result;
}

PhiStack phi_stack(const DenseMatrix& z, int K, int dim_limit) {
    if (z.n > dim_limit) {
        throw std::invalid_argument("phi_stack: dimension " + std::to_string(z.n) +
                                    " exceeds oracle limit " + std::to_string(dim_limit));
    }
    if (K < 0 || K > 6) throw std::invalid_argument("phi_stack: K must be in 0..6");

    PhiStack stack;
    if (max_abs(z) == 0.0) {
        double fact = 1.0;
        for (int k = 0; k <= K; ++k) {
            if (k >= 1) fact *= k;
            stack.values.push_back(scaled(DenseMatrix::identity(z.n), 1.0 / fact));
        }
        return stack;
    }
    if (K == 0) {
        stack.values.push_back(expm(z));
        return stack;
    }

    const int d = z.n;
    const int big = (K + 1) * d;
    DenseMatrix w(big);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) w(i, j) = z(i, j);
    }
    for (int blk = 0; blk < K; ++blk) {
        for (int i = 0; i < d; ++i) w(blk * d + i, (blk + 1) * d + i) = 1.0;
    }
    const DenseMatrix e = expm(w);
    for (int k = 0; k <= K; ++k) {
        DenseMatrix phik(d);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) phik(i, j) = e(i, k * d + j);
        }
        stack.values.push_back(std::move(phik));
    }
    return stack;
}

Vec exact_affine_solve(const DenseMatrix& jac, const Vec& y0, double T,
                       const std::vector<Vec>& poly_coeffs) {
    const int K = static_cast<int>(poly_coeffs.size());
    const PhiStack phis = phi_stack(scaled(jac, T), K);
    Vec y = matvec(phis[0], y0);
    double factor = T;  // k! T^{k+1}
    for (int k = 0; k < K; ++k) {
        if (k > 0) factor *= T * k;
        axpy(factor, matvec(phis[k + 1], poly_coeffs[static_cast<std::size_t>(k)]), y);
    }
    return y;
}

}  // namespace merb
