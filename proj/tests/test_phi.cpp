#include <doctest.h>

#include <cmath>

#include "merb/dense.hpp"
#include "test_util.hpp"

using namespace merb;

namespace {

// Independent scalar oracle: composite 5-point Gauss-Legendre quadrature of
//   phi_k(z) = integral_0^1 exp((1-s) z) s^(k-1)/(k-1)! ds,  k >= 1.
double phi_quadrature(double z, int k) {
    if (k == 0) return std::exp(z);
    static const double nodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                    0.5384693101056831, 0.9061798459386640};
    static const double weights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                      0.4786286704993665, 0.2369268850561891};
    double fact = 1.0;
    for (int i = 2; i < k; ++i) fact *= i;
    const int panels = 200;
    const double h = 1.0 / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * h;
        for (int q = 0; q < 5; ++q) {
            const double s = mid + 0.5 * h * nodes[q];
            acc += 0.5 * h * weights[q] * std::exp((1.0 - s) * z) * std::pow(s, k - 1) / fact;
        }
    }
    return acc;
}

double recurrence_residual(const PhiStack& stack, const DenseMatrix& z) {
    // phi_{k+1}(Z) Z = phi_k(Z) - (1/k!) I, and phi_1 Z = phi_0 - I.
    double worst = 0.0;
    double fact = 1.0;
    for (int k = 0; k < stack.top(); ++k) {
        if (k >= 1) fact *= k;
        DenseMatrix lhs = matmul(stack[k + 1], z);
        DenseMatrix rhs = stack[k];
        for (int i = 0; i < z.n; ++i) rhs(i, i) -= 1.0 / fact;
        worst = std::max(worst, max_abs(add(lhs, scaled(rhs, -1.0))));
    }
    return worst;
}

}  // namespace

TEST_CASE("phi_k at zero is exactly 1/k! on the diagonal") {
    DenseMatrix z(4);
    const PhiStack stack = phi_stack(z, 6);
    double fact = 1.0;
    for (int k = 0; k <= 6; ++k) {
        if (k >= 1) fact *= k;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                CHECK(stack[k](i, j) == (i == j ? 1.0 / fact : 0.0));
            }
        }
    }
}

TEST_CASE("scalar phi_1(1) = e - 1") {
    DenseMatrix z(1);
    z(0, 0) = 1.0;
    const PhiStack stack = phi_stack(z, 1);
    CHECK(stack[1](0, 0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("phi stack matches scalar quadrature for z in [-5, 5]") {
    for (double z = -5.0; z <= 5.0; z += 1.25) {
        DenseMatrix zm(1);
        zm(0, 0) = z;
        const PhiStack stack = phi_stack(zm, 6);
        for (int k = 0; k <= 6; ++k) {
            CAPTURE(z);
            CAPTURE(k);
            CHECK(std::abs(stack[k](0, 0) - phi_quadrature(z, k)) <= 1e-9);
        }
    }
}

TEST_CASE("recurrence residual small for random matrices") {
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix z = testing::random_matrix(5, trial < 5 ? 2.0 : 4.0);
        const PhiStack stack = phi_stack(z, 6);
        CAPTURE(trial);
        CHECK(recurrence_residual(stack, z) <= 1e-11);
    }
}

TEST_CASE("expm agrees with squaring identity exp(2A) = exp(A)^2") {
    const DenseMatrix a = testing::random_matrix(6, 1.3);
    const DenseMatrix e1 = expm(scaled(a, 2.0));
    const DenseMatrix e2 = matmul(expm(a), expm(a));
    CHECK(max_abs(add(e1, scaled(e2, -1.0))) <= 1e-12 * (1.0 + max_abs(e1)));
}

TEST_CASE("oracle rejects dimensions above the limit") {
    DenseMatrix big(kOracleDimLimit + 1);
    CHECK_THROWS_AS(phi_stack(big, 2), std::invalid_argument);
    CHECK_NOTHROW(phi_stack(DenseMatrix(kOracleDimLimit), 1));
}

TEST_CASE("exact affine solve reproduces polynomial integration when J = 0") {
    // y' = g(tau) with g(tau) = c0 + c1 tau + c2 tau^2 integrates to
    // y0 + c0 T + c1 T^2/2 + c2 T^3/3.
    DenseMatrix j(2);
    const Vec y0{1.0, -2.0};
    const std::vector<Vec> coeffs{{0.5, 1.0}, {2.0, 0.0}, {0.0, 3.0}};
    const double T = 0.7;
    const Vec y = exact_affine_solve(j, y0, T, coeffs);
    for (int i = 0; i < 2; ++i) {
        const double expect = y0[i] + coeffs[0][i] * T + coeffs[1][i] * T * T / 2.0 +
                              coeffs[2][i] * T * T * T / 3.0;
        CHECK(y[i] == doctest::Approx(expect).epsilon(1e-14));
    }
}
