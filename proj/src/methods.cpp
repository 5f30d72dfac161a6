#include "merb/methods.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace merb {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

const double kFactorial[7] = {1, 1, 2, 6, 24, 120, 720};

// The polynomial common to every modified IVP: N(t_n, u_n) + (t_n + tau) V.
ForcingPolynomial base_polynomial(const Linearization& lin, double t_n) {
    ForcingPolynomial p;
    Vec c0 = lin.n0;
    axpy(t_n, lin.v_n, c0);
    p.coeffs.push_back(std::move(c0));
    p.coeffs.push_back(lin.v_n);
    return p;
}

const Vec& d_hat_for_stage(const std::vector<StageDifference>& d_hats, int stage) {
    for (const auto& d : d_hats) {
        if (d.stage_index == stage) return d.value;
    }
    throw std::invalid_argument("missing stage difference for stage " + std::to_string(stage));
}

}  // namespace

MerbMethod merb2() {
    MerbMethod m;
    m.name = "merb2";
    m.order = 2;
    m.c = {0.0};
    m.a.assign(1, std::vector<PhiCombo>(1));
    m.b.assign(1, {});
    m.inner_order_stages = 3;  // smallest shipped tableau; only r >= 2 is required
    m.inner_order_final = 3;
    return m;
}

MerbMethod merb3(double c2) {
    require(c2 > 0.0 && c2 <= 1.0, "merb3: requires 0 < c2 <= 1");
    MerbMethod m;
    m.name = "merb3";
    m.order = 3;
    m.c = {0.0, c2};
    m.a.assign(2, std::vector<PhiCombo>(2));
    m.b.assign(2, {});
    m.b[1] = {{3, 2.0 / (c2 * c2)}};
    m.groups = {{2, {2}}};
    m.inner_order_stages = 3;
    m.inner_order_final = 3;
    m.strong_conditions = {1};
    return m;
}

MerbMethod merb4() {
    const double c2 = 0.75;
    MerbMethod m;
    m.name = "merb4";
    m.order = 4;
    m.c = {0.0, c2};
    m.a.assign(2, std::vector<PhiCombo>(2));
    m.b.assign(2, {});
    m.b[1] = {{3, 2.0 / (c2 * c2)}};  // = 32/9
    m.groups = {{2, {2}}};
    m.inner_order_stages = 4;
    m.inner_order_final = 4;
    m.strong_conditions = {1};
    m.weak_conditions = {2};
    return m;
}

MerbMethod merb5(double c2, double c3) {
    require(c2 > 0.0 && c2 <= 1.0, "merb5: requires 0 < c2 <= 1");
    require(c3 > 0.0 && c3 <= 1.0, "merb5: requires 0 < c3 <= 1");
    require(std::abs(4.0 * c3 - 3.0) > 1e-12, "merb5: requires c3 != 3/4 (c4 undefined)");
    const double c4 = 3.0 * (5.0 * c3 - 4.0) / (5.0 * (4.0 * c3 - 3.0));
    require(c4 > 0.0 && c4 <= 1.0, "merb5: derived c4 = 3(5c3-4)/(5(4c3-3)) must lie in (0, 1]");
    require(std::abs(c4 - c3) > 1e-12, "merb5: derived c4 must be distinct from c3");

    MerbMethod m;
    m.name = "merb5";
    m.order = 5;
    m.c = {0.0, c2, c3, c4};
    m.a.assign(4, std::vector<PhiCombo>(4));
    m.b.assign(4, {});
    m.a[2][1] = {{3, 2.0 * c3 * c3 * c3 / (c2 * c2)}};
    m.a[3][1] = {{3, 2.0 * c4 * c4 * c4 / (c2 * c2)}};
    const double w3 = 1.0 / (c3 * c3 * (c4 - c3));
    const double w4 = 1.0 / (c4 * c4 * (c3 - c4));
    m.b[2] = {{3, 2.0 * c4 * w3}, {4, -6.0 * w3}};
    m.b[3] = {{3, 2.0 * c3 * w4}, {4, -6.0 * w4}};

    // Both later stages carry the same polynomial, so one solve to the larger
    // node serves them both.
    if (c3 >= c4) {
        m.groups = {{2, {2}}, {3, {3, 4}}};
    } else {
        m.groups = {{2, {2}}, {4, {3, 4}}};
    }
    m.inner_order_stages = 5;
    m.inner_order_final = 5;
    m.strong_conditions = {1, 2, 4};
    m.weak_conditions = {3};
    return m;
}

MerbMethod merb6(double c2, double c3, double c4, double c5, double c6, double c7) {
    const double nodes[6] = {c2, c3, c4, c5, c6, c7};
    for (double ci : nodes) require(ci > 0.0 && ci <= 1.0, "merb6: requires all nodes in (0, 1]");
    require(std::abs(c2 - c3) > 1e-12, "merb6: requires c2 != c3");
    require(c3 < c2, "merb6: requires c3 < c2");
    require(c5 < c4 && c6 < c4 && c7 < c4, "merb6: requires c5, c6, c7 < c4");
    const double quad[4] = {c4, c5, c6, c7};
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
            require(std::abs(quad[i] - quad[j]) > 1e-12, "merb6: requires c4, c5, c6, c7 distinct");
        }
    }

    MerbMethod m;
    m.name = "merb6";
    m.order = 6;
    m.c = {0.0, c2, c3, c4, c5, c6, c7};
    m.a.assign(7, std::vector<PhiCombo>(7));
    m.b.assign(7, {});

    const double w2 = 1.0 / (c2 * c2 * (c3 - c2));
    const double w3 = 1.0 / (c3 * c3 * (c2 - c3));
    for (int i = 4; i <= 7; ++i) {
        const double ci = m.node(i);
        const double ci3 = ci * ci * ci;
        const double ci4 = ci3 * ci;
        m.a[static_cast<std::size_t>(i - 1)][1] = {{3, 2.0 * ci3 * c3 * w2}, {4, -6.0 * ci4 * w2}};
        m.a[static_cast<std::size_t>(i - 1)][2] = {{3, 2.0 * ci3 * c2 * w3}, {4, -6.0 * ci4 * w3}};
    }

    for (int i = 4; i <= 7; ++i) {
        const double ci = m.node(i);
        double gamma = 1.0 / (ci * ci);
        double prod = 1.0, sum = 0.0, pair_sum = 0.0;
        std::vector<double> others;
        for (int l = 4; l <= 7; ++l) {
            if (l == i) continue;
            const double cl = m.node(l);
            gamma /= (ci - cl);
            others.push_back(cl);
        }
        prod = others[0] * others[1] * others[2];
        sum = others[0] + others[1] + others[2];
        pair_sum = others[0] * others[1] + others[1] * others[2] + others[0] * others[2];
        const double alpha = prod * gamma;
        const double eta = pair_sum * gamma;
        const double beta = sum * gamma;
        m.b[static_cast<std::size_t>(i - 1)] = {
            {3, -2.0 * alpha}, {4, 6.0 * eta}, {5, -24.0 * beta}, {6, 120.0 * gamma}};
    }

    m.groups = {{2, {2, 3}}, {4, {4, 5, 6, 7}}};
    m.inner_order_stages = 6;
    m.inner_order_final = 6;
    m.strong_conditions = {1, 2, 3, 4, 5, 6, 7};
    return m;
}

MerbMethod method_by_name(const std::string& name) {
    if (name == "merb2") return merb2();
    if (name == "merb3") return merb3();
    if (name == "merb4") return merb4();
    if (name == "merb5") return merb5();
    if (name == "merb6") return merb6();
    throw std::invalid_argument("unknown method '" + name + "'");
}

std::vector<std::string> method_names() { return {"merb2", "merb3", "merb4", "merb5", "merb6"}; }

ForcingPolynomial build_stage_polynomial(const MerbMethod& method, const Linearization& lin,
                                         const std::vector<StageDifference>& d_hats, double t_n,
                                         double H, int group_index) {
    if (group_index < 0 || group_index >= static_cast<int>(method.groups.size())) {
        throw std::invalid_argument("build_stage_polynomial: group index out of range");
    }
    const int lead = method.groups[static_cast<std::size_t>(group_index)].lead;
    const double ci = method.node(lead);
    ForcingPolynomial p = base_polynomial(lin, t_n);
    const auto& row = method.a[static_cast<std::size_t>(lead - 1)];
    for (int j = 2; j < lead; ++j) {
        const PhiCombo& combo = row[static_cast<std::size_t>(j - 1)];
        if (combo.empty()) continue;
        const Vec& dj = d_hat_for_stage(d_hats, j);
        for (const PhiTerm& term : combo) {
            const double w = term.weight /
                             (std::pow(ci, term.k) * std::pow(H, term.k - 1) * kFactorial[term.k - 1]);
            p.add_term(term.k - 1, w, dj);
        }
    }
    return p;
}

ForcingPolynomial build_update_polynomial(const MerbMethod& method, const Linearization& lin,
                                          const std::vector<StageDifference>& d_hats, double t_n,
                                          double H) {
    ForcingPolynomial q = base_polynomial(lin, t_n);
    for (int i = 2; i <= method.stages(); ++i) {
        const PhiCombo& combo = method.b[static_cast<std::size_t>(i - 1)];
        if (combo.empty()) continue;
        const Vec& di = d_hat_for_stage(d_hats, i);
        for (const PhiTerm& term : combo) {
            const double w = term.weight / (std::pow(H, term.k - 1) * kFactorial[term.k - 1]);
            q.add_term(term.k - 1, w, di);
        }
    }
    return q;
}

}  // namespace merb
