#include <doctest.h>

#include "merb/counters.hpp"
#include "merb/problems.hpp"
#include "merb/tableau.hpp"
#include "merb/vec.hpp"
#include "test_util.hpp"

using namespace merb;

TEST_CASE("max_abs_diff basic values") {
    CHECK(max_abs_diff({1, 2}, {1, 2}) == 0.0);
    CHECK(max_abs_diff({0, 0}, {0, 3}) == 3.0);
    CHECK(max_abs_diff({1, -1}, {-1, 1}) == 2.0);
    CHECK_THROWS_AS(max_abs_diff({1, 2}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("counters reset and accumulate") {
    CallCounters c;
    c.slow_calls = 3;
    c.fast_calls = 7;
    CHECK(c.total_calls() == 10);
    c.reset();
    CHECK(c.total_calls() == 0);
}

TEST_CASE("rooted tree counts through order six") {
    CHECK(order_condition_count(1) == 1);
    CHECK(order_condition_count(2) == 2);
    CHECK(order_condition_count(3) == 4);
    CHECK(order_condition_count(4) == 8);
    CHECK(order_condition_count(5) == 17);
    CHECK(order_condition_count(6) == 37);
}

TEST_CASE("every shipped tableau satisfies its order conditions to 1e-12") {
    for (const auto& [order, tab] : shipped_tableaus()) {
        CAPTURE(tab.name);
        CHECK(tab.order == order);
        CHECK_NOTHROW(validate_tableau(tab));
        CHECK(max_order_condition_residual(tab, order) <= 1e-12);
    }
}

TEST_CASE("shipped tableau shapes match their sources") {
    const auto& tabs = shipped_tableaus();
    CHECK(tabs.at(3).stages() == 3);
    CHECK(tabs.at(4).stages() == 4);
    CHECK(tabs.at(5).stages() == 8);
    CHECK(tabs.at(6).stages() == 8);

    // classical RK4
    const ButcherTableau& rk4 = tabs.at(4);
    CHECK(rk4.c == std::vector<double>{0.0, 0.5, 0.5, 1.0});
    CHECK(rk4.b == std::vector<double>{1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0});

    double b_sum = 0.0;
    for (double b : tabs.at(3).b) b_sum += b;
    CHECK(b_sum == doctest::Approx(1.0).epsilon(1e-15));

    // all 17 fifth-order conditions, checked against the programmatic oracle
    for (double r : order_condition_residuals(tabs.at(5), 5)) CHECK(std::abs(r) <= 1e-12);
}

TEST_CASE("validate_tableau rejects broken data") {
    ButcherTableau bad;
    bad.name = "bad";
    bad.order = 2;
    bad.c = {0.0, 0.5};
    bad.b = {0.5, 0.5};
    bad.a = {{0, 0}, {0.4, 0}};  // row sum != c
    CHECK_THROWS_AS(validate_tableau(bad), std::invalid_argument);

    bad.a = {{0, 0.1}, {0.5, 0}};  // upper triangle entry
    bad.c = {0.1, 0.5};
    CHECK_THROWS_AS(validate_tableau(bad), std::invalid_argument);

    ButcherTableau wrong_order = shipped_tableaus().at(3);
    wrong_order.order = 4;
    CHECK_THROWS_AS(validate_tableau(wrong_order), std::invalid_argument);
}

TEST_CASE("jac_action linearity on shipped problems") {
    for (const IvpProblem& p : {bidirectional(), reaction_diffusion()}) {
        CAPTURE(p.name);
        for (int trial = 0; trial < 5; ++trial) {
            const double t = 0.3 * trial;
            const Vec u = trial == 0 ? p.u0 : testing::random_vec(p.dim, 1.0);
            const Vec w1 = testing::random_vec(p.dim, 1.0);
            const Vec w2 = testing::random_vec(p.dim, 1.0);
            const double alpha = 1.7;

            Vec combo = w2;
            axpy(alpha, w1, combo);
            const Vec lhs = p.jac_action(t, u, combo);
            Vec rhs = p.jac_action(t, u, w2);
            axpy(alpha, p.jac_action(t, u, w1), rhs);

            double scale = inf_norm(lhs) + 1.0;
            CHECK(max_abs_diff(lhs, rhs) / scale <= 1e-10);
        }
    }
}
