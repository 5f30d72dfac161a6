#pragma once

#include <vector>

#include "merb/vec.hpp"

namespace merb {

/// Largest dimension the dense verification routines accept.
inline constexpr int kOracleDimLimit = 64;

/// Small dense row-major matrix for the verification path.  The production
/// integrator never forms a matrix; everything here is test machinery for
/// dimensions up to kOracleDimLimit.
struct DenseMatrix {
    int n = 0;
    std::vector<double> data;

    DenseMatrix() = default;
    explicit DenseMatrix(int dim) : n(dim), data(static_cast<std::size_t>(dim) * dim, 0.0) {}

    double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
    double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }

    static DenseMatrix identity(int dim);
};

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
Vec matvec(const DenseMatrix& a, const Vec& x);
DenseMatrix scaled(const DenseMatrix& a, double s);
DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
double inf_norm(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);

/// Matrix exponential by scaling and squaring with a Taylor kernel.
DenseMatrix expm(const DenseMatrix& a);

/// phi_0..phi_K of one matrix argument; values[k] = phi_k(Z).
struct PhiStack {
    std::vector<DenseMatrix> values;

    const DenseMatrix& operator[](int k) const { return values[static_cast<std::size_t>(k)]; }
    int top() const { return static_cast<int>(values.size()) - 1; }
};

/// Computes phi_0..phi_K through one exponential of the (K+1)d x (K+1)d block
/// companion matrix [[Z, I, 0, ...], [0, 0, I, ...], ...]; its top block row
/// is exactly [exp(Z), phi_1(Z), ..., phi_K(Z)].
PhiStack phi_stack(const DenseMatrix& z, int K, int dim_limit = kOracleDimLimit);

/// Exact solution at tau = T of y' = J y + g(tau), y(0) = y0, where g is a
/// vector polynomial g(tau) = sum_k coeffs[k] tau^k:
///   y(T) = phi_0(T J) y0 + sum_k k! T^{k+1} phi_{k+1}(T J) coeffs[k].
Vec exact_affine_solve(const DenseMatrix& jac, const Vec& y0, double T,
                       const std::vector<Vec>& poly_coeffs);

}  // namespace merb
