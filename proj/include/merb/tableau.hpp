#pragma once

#include <map>
#include <string>
#include <vector>

namespace merb {

/// Explicit Runge-Kutta tableau.  A is strictly lower triangular and the
/// declared order is verified programmatically (see order_condition_residuals)
/// rather than trusted from transcription.
struct ButcherTableau {
    std::string name;
    int order = 0;
    std::vector<std::vector<double>> a;  // s x s, strictly lower triangular
    std::vector<double> b;
    std::vector<double> c;

    int stages() const { return static_cast<int>(b.size()); }
};

/// Residual of every rooted-tree order condition of order <= `order`
/// (sum_i b_i Phi_i(t) - 1/gamma(t), one entry per tree).
std::vector<double> order_condition_residuals(const ButcherTableau& tab, int order);

/// Largest order-condition residual over all trees of order <= `order`.
double max_order_condition_residual(const ButcherTableau& tab, int order);

/// Number of rooted trees with up to `order` nodes (1,2,4,8,17,37 cumulative).
int order_condition_count(int order);

/// Throws std::invalid_argument when the tableau is not strictly lower
/// triangular, c differs from the row sums of A, or any order condition
/// through the declared order has residual above 1e-12.
void validate_tableau(const ButcherTableau& tab);

/// Fixed-step explicit tableaus of orders 3, 4, 5, 6 used for the fast IVPs.
const std::map<int, ButcherTableau>& shipped_tableaus();

/// Shipped tableau of the given order; throws when none exists.
const ButcherTableau& tableau_of_order(int order);

}  // namespace merb
