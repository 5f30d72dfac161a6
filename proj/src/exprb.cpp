#include "merb/exprb.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace merb {

DenseMatrix dense_jacobian(const Linearization& lin, int dim_limit) {
    const int d = lin.dim();
    if (d > dim_limit) {
        throw std::invalid_argument("dense_jacobian: dimension " + std::to_string(d) +
                                    " exceeds oracle limit " + std::to_string(dim_limit));
    }
    DenseMatrix jac(d);
    Vec unit(static_cast<std::size_t>(d), 0.0);
    for (int j = 0; j < d; ++j) {
        unit[static_cast<std::size_t>(j)] = 1.0;
        const Vec col = lin.apply_jac(unit);
        for (int i = 0; i < d; ++i) jac(i, j) = col[static_cast<std::size_t>(i)];
        unit[static_cast<std::size_t>(j)] = 0.0;
    }
    return jac;
}

namespace {

int max_phi_index(const PhiCombo& combo) {
    int k = 0;
    for (const auto& t : combo) k = std::max(k, t.k);
    return k;
}

// sum_k weight_k phi_k(arg) applied to v, from a precomputed stack of phi(arg).
Vec apply_combo(const PhiCombo& combo, const PhiStack& phis, const Vec& v) {
    Vec out = zeros(v.size());
    for (const auto& term : combo) {
        axpy(term.weight, matvec(phis[term.k], v), out);
    }
    return out;
}

}  // namespace

ExprbResult exprb_step(const MerbMethod& method, const IvpProblem& problem, double t_n,
                       const Vec& u_n, double H, const LinearizeOptions& lin_opts, int dim_limit) {
    if (problem.dim > dim_limit) {
        throw std::invalid_argument("exprb_step: dimension exceeds oracle limit");
    }
    const Linearization lin = linearize(problem, t_n, u_n, lin_opts);
    const DenseMatrix jac = dense_jacobian(lin, dim_limit);
    const int s = method.stages();

    int k_stage = 2;
    for (int i = 2; i <= s; ++i) {
        for (int j = 2; j < i; ++j) {
            k_stage = std::max(k_stage, max_phi_index(method.a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]));
        }
    }
    int k_final = 2;
    for (int i = 2; i <= s; ++i) k_final = std::max(k_final, max_phi_index(method.b[static_cast<std::size_t>(i - 1)]));

    // phi stacks per distinct stage node, argument c_i H J.
    std::vector<PhiStack> stage_phis(static_cast<std::size_t>(s + 1));
    for (int i = 2; i <= s; ++i) {
        stage_phis[static_cast<std::size_t>(i)] = phi_stack(scaled(jac, method.node(i) * H), k_stage, dim_limit);
    }
    const PhiStack full_phis = phi_stack(scaled(jac, H), k_final, dim_limit);

    ExprbResult result;
    result.stages.assign(static_cast<std::size_t>(s), u_n);
    std::vector<Vec> d(static_cast<std::size_t>(s + 1));

    for (int i = 2; i <= s; ++i) {
        const double ci = method.node(i);
        const PhiStack& phis = stage_phis[static_cast<std::size_t>(i)];
        Vec ui = u_n;
        axpy(ci * H, matvec(phis[1], lin.f0), ui);
        axpy(ci * ci * H * H, matvec(phis[2], lin.v_n), ui);
        for (int j = 2; j < i; ++j) {
            const PhiCombo& combo = method.a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
            if (combo.empty()) continue;
            axpy(H, apply_combo(combo, phis, d[static_cast<std::size_t>(j)]), ui);
        }
        result.stages[static_cast<std::size_t>(i - 1)] = ui;
        d[static_cast<std::size_t>(i)] = stage_difference(lin, t_n, ci, H, ui, i).value;
    }

    Vec un1 = u_n;
    axpy(H, matvec(full_phis[1], lin.f0), un1);
    axpy(H * H, matvec(full_phis[2], lin.v_n), un1);
    for (int i = 2; i <= s; ++i) {
        const PhiCombo& combo = method.b[static_cast<std::size_t>(i - 1)];
        if (combo.empty()) continue;
        axpy(H, apply_combo(combo, full_phis, d[static_cast<std::size_t>(i)]), un1);
    }
    result.u_next = std::move(un1);
    return result;
}

namespace {

DenseMatrix combo_matrix(const PhiCombo& combo, const PhiStack& phis, int dim) {
    DenseMatrix out(dim);
    for (const auto& term : combo) {
        out = add(out, scaled(phis[term.k], term.weight));
    }
    return out;
}

}  // namespace

std::vector<double> check_order_conditions(const MerbMethod& method, const DenseMatrix& Z,
                                           const DenseMatrix& K, const DenseMatrix& M) {
    if (Z.n != K.n || Z.n != M.n) {
        throw std::invalid_argument("check_order_conditions: matrices must share one dimension");
    }
    const int d = Z.n;
    const int s = method.stages();
    const PhiStack full = phi_stack(Z, 6);

    std::vector<DenseMatrix> b_mats(static_cast<std::size_t>(s + 1), DenseMatrix(d));
    std::vector<PhiStack> stage_phis(static_cast<std::size_t>(s + 1));
    for (int i = 2; i <= s; ++i) {
        b_mats[static_cast<std::size_t>(i)] = combo_matrix(method.b[static_cast<std::size_t>(i - 1)], full, d);
        stage_phis[static_cast<std::size_t>(i)] = phi_stack(scaled(Z, method.node(i)), 4);
    }

    // Brackets from conditions 4/6 (psi_3) and 7 (psi_4), one per stage.
    std::vector<DenseMatrix> psi3(static_cast<std::size_t>(s + 1), DenseMatrix(d));
    std::vector<DenseMatrix> psi4(static_cast<std::size_t>(s + 1), DenseMatrix(d));
    for (int i = 2; i <= s; ++i) {
        const double ci = method.node(i);
        DenseMatrix p3(d), p4(d);
        for (int k = 2; k < i; ++k) {
            const PhiCombo& combo = method.a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)];
            if (combo.empty()) continue;
            const DenseMatrix aik = combo_matrix(combo, stage_phis[static_cast<std::size_t>(i)], d);
            const double ck = method.node(k);
            p3 = add(p3, scaled(aik, ck * ck / 2.0));
            p4 = add(p4, scaled(aik, ck * ck * ck / 6.0));
        }
        p3 = add(p3, scaled(stage_phis[static_cast<std::size_t>(i)][3], -std::pow(ci, 3)));
        p4 = add(p4, scaled(stage_phis[static_cast<std::size_t>(i)][4], -std::pow(ci, 4)));
        psi3[static_cast<std::size_t>(i)] = p3;
        psi4[static_cast<std::size_t>(i)] = p4;
    }

    auto moment_residual = [&](int power, double factor, const DenseMatrix& phi) {
        DenseMatrix acc(d);
        for (int i = 2; i <= s; ++i) {
            acc = add(acc, scaled(b_mats[static_cast<std::size_t>(i)], std::pow(method.node(i), power)));
        }
        acc = add(acc, scaled(phi, -factor));
        return max_abs(acc);
    };
    auto bracket_residual = [&](int power, const DenseMatrix& middle, const std::vector<DenseMatrix>& psi) {
        DenseMatrix acc(d);
        for (int i = 2; i <= s; ++i) {
            const DenseMatrix t = matmul(b_mats[static_cast<std::size_t>(i)],
                                         matmul(middle, psi[static_cast<std::size_t>(i)]));
            acc = add(acc, scaled(t, std::pow(method.node(i), power)));
        }
        return max_abs(acc);
    };

    std::vector<double> residuals(7, 0.0);
    residuals[0] = moment_residual(2, 2.0, full[3]);
    residuals[1] = moment_residual(3, 6.0, full[4]);
    residuals[2] = moment_residual(4, 24.0, full[5]);
    residuals[3] = bracket_residual(1, K, psi3);
    residuals[4] = moment_residual(5, 120.0, full[6]);
    residuals[5] = bracket_residual(2, M, psi3);
    residuals[6] = bracket_residual(1, K, psi4);
    return residuals;
}

}  // namespace merb
