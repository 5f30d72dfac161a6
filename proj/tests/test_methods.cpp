#include <doctest.h>

#include <cmath>

#include "merb/exprb.hpp"
#include "merb/problems.hpp"
#include "merb/step.hpp"
#include "test_util.hpp"

using namespace merb;

namespace {

Linearization trivial_lin(int dim) {
    // zero Jacobian, zero V, zero remainder; isolates the difference terms
    Linearization lin;
    lin.u_n = zeros(static_cast<std::size_t>(dim));
    lin.v_n = zeros(static_cast<std::size_t>(dim));
    lin.n0 = zeros(static_cast<std::size_t>(dim));
    lin.f0 = zeros(static_cast<std::size_t>(dim));
    lin.jac_raw_ = [dim](const Vec&) { return zeros(static_cast<std::size_t>(dim)); };
    lin.f_ = [dim](double, const Vec&) { return zeros(static_cast<std::size_t>(dim)); };
    return lin;
}

StageDifference unit_diff(int stage, int dim, int component = 0) {
    StageDifference d;
    d.stage_index = stage;
    d.value = zeros(static_cast<std::size_t>(dim));
    d.value[static_cast<std::size_t>(component)] = 1.0;
    return d;
}

}  // namespace

TEST_CASE("structural data per method") {
    struct Expect {
        const char* name;
        int order;
        int ivps;
        double traversal;
        int slow_evals;
    };
    const Expect table[] = {
        {"merb2", 2, 1, 1.0, 1},
        {"merb3", 3, 2, 1.5, 2},
        {"merb4", 4, 2, 1.75, 2},
        {"merb5", 5, 3, 2.075, 4},
        {"merb6", 6, 3, 79.0 / 63.0, 7},
    };
    for (const auto& e : table) {
        const MerbMethod m = method_by_name(e.name);
        CAPTURE(e.name);
        CHECK(m.order == e.order);
        CHECK(m.num_fast_ivps() == e.ivps);
        CHECK(m.traversal() == doctest::Approx(e.traversal).epsilon(1e-14));
        CHECK(m.slow_evals_per_step() == e.slow_evals);
    }
    CHECK_THROWS_AS(method_by_name("merb7"), std::invalid_argument);
}

TEST_CASE("node constraints are enforced at construction") {
    CHECK_THROWS_AS(merb3(0.0), std::invalid_argument);
    CHECK_THROWS_AS(merb3(1.5), std::invalid_argument);
    CHECK_THROWS_AS(merb5(0.25, 0.75), std::invalid_argument);  // c4 undefined at c3 = 3/4
    CHECK_THROWS_WITH_AS(merb6(1.0 / 9, 1.0 / 9, 1.0 / 7, 0.1, 1.0 / 9, 0.125),
                         doctest::Contains("c2 != c3"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(merb6(0.1, 1.0 / 9, 1.0 / 7, 0.1, 1.0 / 9, 0.125),
                         doctest::Contains("c3 < c2"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(merb6(1.0 / 9, 0.1, 1.0 / 7, 0.1, 1.0 / 9, 0.5),
                         doctest::Contains("c7 < c4"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(merb6(1.0 / 9, 0.1, 1.0 / 7, 0.1, 0.1, 0.125),
                         doctest::Contains("distinct"), std::invalid_argument);
}

TEST_CASE("merb5 derived node satisfies the printed constraint for other c3 too") {
    const MerbMethod m = merb5(0.3, 0.9);
    const double c3 = 0.9;
    const double expect = 3.0 * (5.0 * c3 - 4.0) / (5.0 * (4.0 * c3 - 3.0));
    CHECK(m.node(4) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("first-group polynomial is the base slow forcing") {
    const int d = 3;
    Linearization lin = trivial_lin(d);
    lin.n0 = {1.0, 2.0, 3.0};
    lin.v_n = {0.5, 0.0, -0.5};
    const double t_n = 2.0;
    for (const char* name : {"merb3", "merb4", "merb5", "merb6"}) {
        const MerbMethod m = method_by_name(name);
        const ForcingPolynomial p = build_stage_polynomial(m, lin, {}, t_n, 0.1, 0);
        REQUIRE(p.degree() == 1);
        for (int i = 0; i < d; ++i) {
            CHECK(p.coeffs[0][static_cast<std::size_t>(i)] ==
                  doctest::Approx(lin.n0[static_cast<std::size_t>(i)] + t_n * lin.v_n[static_cast<std::size_t>(i)]));
            CHECK(p.coeffs[1][static_cast<std::size_t>(i)] == lin.v_n[static_cast<std::size_t>(i)]);
        }
    }
}

TEST_CASE("merb3 update polynomial weight: tau^2 / (c2 H)^2") {
    const Linearization lin = trivial_lin(2);
    const MerbMethod m = merb3(0.5);
    const ForcingPolynomial q =
        build_update_polynomial(m, lin, {unit_diff(2, 2)}, 0.0, 1.0);
    REQUIRE(q.degree() == 2);
    CHECK(q.coeffs[2][0] == doctest::Approx(4.0).epsilon(1e-14));  // 1/c2^2 = 4
    CHECK(q.coeffs[2][1] == 0.0);
    CHECK(inf_norm(q.coeffs[0]) == 0.0);
    CHECK(inf_norm(q.coeffs[1]) == 0.0);
}

TEST_CASE("merb4 update polynomial weight: (16/9) tau^2 / H^2") {
    const Linearization lin = trivial_lin(1);
    const ForcingPolynomial q =
        build_update_polynomial(merb4(), lin, {unit_diff(2, 1)}, 0.0, 2.0);
    REQUIRE(q.degree() == 2);
    CHECK(q.coeffs[2][0] == doctest::Approx((16.0 / 9.0) / 4.0).epsilon(1e-14));
}

TEST_CASE("merb5 polynomials carry the printed difference weights") {
    const double c2 = 0.25, c3 = 33.0 / 40.0;
    const MerbMethod m = merb5(c2, c3);
    const double c4 = m.node(4);
    const Linearization lin = trivial_lin(1);
    const double H = 1.0;

    // stage group 2 (lead stage 3): (tau/(c2 H))^2 D2
    const ForcingPolynomial p3 =
        build_stage_polynomial(m, lin, {unit_diff(2, 1)}, 0.0, H, 1);
    REQUIRE(p3.degree() == 2);
    CHECK(p3.coeffs[2][0] == doctest::Approx(1.0 / (c2 * c2)).epsilon(1e-13));  // = 16

    // update: tau^2/H^2 and tau^3/H^3 weights on D3 and D4
    const ForcingPolynomial q =
        build_update_polynomial(m, lin, {unit_diff(2, 1), unit_diff(3, 1), unit_diff(4, 1)}, 0.0, H);
    REQUIRE(q.degree() == 3);
    const double w3_2 = c4 / (c3 * c3 * (c4 - c3));
    const double w4_2 = c3 / (c4 * c4 * (c3 - c4));
    const double w3_3 = -1.0 / (c3 * c3 * (c4 - c3));
    const double w4_3 = -1.0 / (c4 * c4 * (c3 - c4));
    CHECK(q.coeffs[2][0] == doctest::Approx(w3_2 + w4_2).epsilon(1e-12));
    CHECK(q.coeffs[3][0] == doctest::Approx(w3_3 + w4_3).epsilon(1e-12));
}

TEST_CASE("merb6 group-2 polynomial collapses to the base forcing when differences vanish") {
    const int d = 2;
    Linearization lin = trivial_lin(d);
    lin.n0 = {0.3, -0.1};
    lin.v_n = {0.0, 0.2};
    const MerbMethod m = merb6();
    std::vector<StageDifference> zero_diffs;
    for (int j : {2, 3}) {
        StageDifference sd;
        sd.stage_index = j;
        sd.value = zeros(d);
        zero_diffs.push_back(sd);
    }
    const ForcingPolynomial p4 = build_stage_polynomial(m, lin, zero_diffs, 1.0, 0.5, 1);
    const ForcingPolynomial p2 = build_stage_polynomial(m, lin, {}, 1.0, 0.5, 0);
    REQUIRE(p4.coeffs.size() >= p2.coeffs.size());
    for (std::size_t k = 0; k < p4.coeffs.size(); ++k) {
        const double norm = k < p2.coeffs.size() ? max_abs_diff(p4.coeffs[k], p2.coeffs[k])
                                                 : inf_norm(p4.coeffs[k]);
        CHECK(norm == 0.0);
    }
}

TEST_CASE("merb6 group-2 polynomial matches the printed tau^2/tau^3 combinations") {
    const MerbMethod m = merb6();
    const double c2 = m.node(2), c3 = m.node(3);
    const Linearization lin = trivial_lin(2);
    const double H = 0.5;
    // D2 = e0, D3 = e1
    const ForcingPolynomial p =
        build_stage_polynomial(m, lin, {unit_diff(2, 2, 0), unit_diff(3, 2, 1)}, 0.0, H, 1);
    REQUIRE(p.degree() == 3);
    const double H2 = H * H, H3 = H * H * H;
    CHECK(p.coeffs[2][0] == doctest::Approx(c3 / (c2 * c2 * (c3 - c2) * H2)).epsilon(1e-12));
    CHECK(p.coeffs[2][1] == doctest::Approx(-c2 / (c3 * c3 * (c3 - c2) * H2)).epsilon(1e-12));
    CHECK(p.coeffs[3][0] == doctest::Approx(-1.0 / (c2 * c2 * (c3 - c2) * H3)).epsilon(1e-12));
    CHECK(p.coeffs[3][1] == doctest::Approx(1.0 / (c3 * c3 * (c3 - c2) * H3)).epsilon(1e-12));
}

TEST_CASE("update polynomial with all differences zero reduces to the base forcing") {
    Linearization lin = trivial_lin(2);
    lin.n0 = {1.0, -2.0};
    lin.v_n = {0.1, 0.0};
    for (const char* name : {"merb3", "merb5", "merb6"}) {
        const MerbMethod m = method_by_name(name);
        std::vector<StageDifference> diffs;
        for (int j = 2; j <= m.stages(); ++j) {
            StageDifference sd;
            sd.stage_index = j;
            sd.value = zeros(2);
            diffs.push_back(sd);
        }
        const ForcingPolynomial q = build_update_polynomial(m, lin, diffs, 0.5, 0.25);
        for (std::size_t k = 2; k < q.coeffs.size(); ++k) CHECK(inf_norm(q.coeffs[k]) == 0.0);
        CHECK(q.coeffs[0][0] == doctest::Approx(lin.n0[0] + 0.5 * lin.v_n[0]));
        CHECK(q.coeffs[1][0] == lin.v_n[0]);
    }
}

TEST_CASE("missing stage differences are reported") {
    const Linearization lin = trivial_lin(1);
    CHECK_THROWS_WITH_AS(build_update_polynomial(merb3(), lin, {}, 0.0, 1.0),
                         doctest::Contains("missing stage difference"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_stage_polynomial(merb5(), lin, {}, 0.0, 1.0, 1),
                         doctest::Contains("missing stage difference"), std::invalid_argument);
}

TEST_CASE("counter audit: slow calls per step match the stage structure") {
    const IvpProblem p = bidirectional();
    for (const char* name : {"merb2", "merb3", "merb4", "merb5", "merb6"}) {
        const MerbMethod m = method_by_name(name);
        CallCounters counters;
        merb_step(m, p, 0.0, p.u0, 0.01, 4, {}, &counters);
        CAPTURE(name);
        CHECK(counters.slow_calls == m.slow_evals_per_step());
        CHECK(counters.fast_solves == m.num_fast_ivps());
    }
}

TEST_CASE("merb_step on a linear autonomous problem reduces to the micro solver") {
    const DenseMatrix a = testing::random_matrix(4, 1.0);
    const Vec u0 = testing::random_vec(4);
    const IvpProblem p = linear_problem(a, u0);
    const double H = 0.3;
    const int m_fac = 1;

    const Vec by_step = merb_step(merb3(), p, 0.0, u0, H, m_fac);

    // all forcing terms vanish, so the step is one plain RK3 solve of y' = Ay
    const Vec by_rk = erk_integrate(
        tableau_of_order(3), [&](double, const Vec& y) { return matvec(a, y); }, 0.0, H, u0, 1);
    CHECK(max_abs_diff(by_step, by_rk) == 0.0);
}

TEST_CASE("merb_step with exact fast solves reproduces the dense one-step scheme") {
    const IvpProblem p = bidirectional();
    const double t_n = 0.1;
    const Vec u_n = p.exact(t_n);
    const double H = 0.02;
    StepOptions opts;
    opts.exact_fast_solves = true;
    for (const char* name : {"merb2", "merb3", "merb4", "merb5", "merb6"}) {
        CAPTURE(name);
        const MerbMethod m = method_by_name(name);
        const Vec multirate = merb_step(m, p, t_n, u_n, H, 1, opts);
        const ExprbResult oracle = exprb_step(m, p, t_n, u_n, H);
        CHECK(max_abs_diff(multirate, oracle.u_next) <= 2e-10 * (1.0 + inf_norm(oracle.u_next)));
    }
}

TEST_CASE("exact linear reproduction: dense-solve step equals phi_0(HA) u") {
    const DenseMatrix a = testing::random_matrix(6, 1.0);
    const Vec u0 = testing::random_vec(6);
    const IvpProblem p = linear_problem(a, u0);
    const double H = 0.25;
    StepOptions opts;
    opts.exact_fast_solves = true;
    const Vec expect = matvec(expm(scaled(a, H)), u0);
    for (const char* name : {"merb2", "merb3", "merb4", "merb5", "merb6"}) {
        CAPTURE(name);
        const Vec u1 = merb_step(method_by_name(name), p, 0.0, u0, H, 1, opts);
        CHECK(max_abs_diff(u1, expect) <= 1e-12 * (1.0 + inf_norm(expect)));
    }
}

TEST_CASE("inner order resolution") {
    const MerbMethod m4 = merb4();
    StepOptions opts;
    CHECK(resolve_stage_order(m4, opts) == 4);
    CHECK(resolve_final_order(m4, opts) == 4);
    opts.inner_order_drop = true;
    CHECK(resolve_stage_order(m4, opts) == 3);
    CHECK(resolve_final_order(m4, opts) == 4);
    opts.stage_tableau_order = 6;
    CHECK(resolve_stage_order(m4, opts) == 6);

    // merb3 cannot drop: there is no order-2 tableau
    const IvpProblem p = bidirectional();
    StepOptions drop;
    drop.inner_order_drop = true;
    CHECK_THROWS_AS(merb_step(merb3(), p, 0.0, p.u0, 0.01, 2, drop), std::invalid_argument);
}

TEST_CASE("micro step counts") {
    CHECK(micro_steps(1.0, 7) == 7);
    CHECK(micro_steps(0.5, 80) == 40);
    CHECK(micro_steps(0.825, 10) == 9);   // ceil(8.25)
    CHECK(micro_steps(1.0 / 9.0, 9) == 1);  // guards fp spill above an integer
    CHECK(micro_steps(0.01, 2) == 1);
    CHECK(micro_steps(1.0 / 7.0, 5) == 1);
}
