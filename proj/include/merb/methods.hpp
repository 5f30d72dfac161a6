#pragma once

#include <string>
#include <vector>

#include "merb/forcing.hpp"
#include "merb/linearize.hpp"

namespace merb {

/// One term of a coefficient function: weight * phi_k evaluated at the
/// stage-scaled argument (c_i H J for stage weights, H J for update weights).
struct PhiTerm {
    int k = 0;
    double weight = 0.0;
};
using PhiCombo = std::vector<PhiTerm>;

/// Stages whose states are read off a single fast solve.  The lead stage has
/// the largest node in the group and the shared forcing polynomial is built
/// from its coefficient row.
struct StageGroup {
    int lead = 0;               // 1-based stage index
    std::vector<int> members;   // 1-based stage indices, lead included
};

/// A multirate exponential Rosenbrock method.  The per-stage coefficient
/// functions a_ij and update functions b_i are stored as phi-combination
/// data; the same data drives the dense one-step reference scheme and the
/// forcing-polynomial construction, so the two routes share one source of
/// truth.
struct MerbMethod {
    std::string name;
    int order = 0;
    std::vector<double> c;                  // nodes, c[0] = 0
    std::vector<std::vector<PhiCombo>> a;   // a[i-1][j-1] for stage i, difference j
    std::vector<PhiCombo> b;                // b[i-1]
    std::vector<StageGroup> groups;
    int inner_order_stages = 0;             // default micro-solver order for stage IVPs
    int inner_order_final = 0;              // default micro-solver order for the update IVP

    /// Stiff order conditions (Table numbering 1..7) the scheme satisfies as
    /// operator identities; the remaining order conditions of the scheme's
    /// order hold only in the nonstiff limit (argument -> 0) by node choice.
    std::vector<int> strong_conditions;
    std::vector<int> weak_conditions;

    int stages() const { return static_cast<int>(c.size()); }
    int num_fast_ivps() const { return static_cast<int>(groups.size()) + 1; }

    /// Total fast-integration span per macro step, in units of H.
    double traversal() const {
        double total = 1.0;
        for (const auto& g : groups) total += c[static_cast<std::size_t>(g.lead - 1)];
        return total;
    }

    double node(int stage) const { return c[static_cast<std::size_t>(stage - 1)]; }

    /// Slow remainder evaluations per step: the freeze point plus one per
    /// group member.
    int slow_evals_per_step() const {
        int n = 1;
        for (const auto& g : groups) n += static_cast<int>(g.members.size());
        return n;
    }
};

MerbMethod merb2();
MerbMethod merb3(double c2 = 0.5);
MerbMethod merb4();
MerbMethod merb5(double c2 = 0.25, double c3 = 33.0 / 40.0);
MerbMethod merb6(double c2 = 1.0 / 9.0, double c3 = 0.1, double c4 = 1.0 / 7.0,
                 double c5 = 0.1, double c6 = 1.0 / 9.0, double c7 = 0.125);

/// "merb2" .. "merb6" with default nodes.
MerbMethod method_by_name(const std::string& name);
std::vector<std::string> method_names();

/// Forcing polynomial of the modified fast IVP for stage group `group_index`
/// (the p-polynomial of the group's lead stage).  `d_hats` must contain the
/// stage differences of every earlier group.
ForcingPolynomial build_stage_polynomial(const MerbMethod& method, const Linearization& lin,
                                         const std::vector<StageDifference>& d_hats, double t_n,
                                         double H, int group_index);

/// Forcing polynomial of the final update IVP (the q-polynomial); needs the
/// stage differences of every group member.
ForcingPolynomial build_update_polynomial(const MerbMethod& method, const Linearization& lin,
                                          const std::vector<StageDifference>& d_hats, double t_n,
                                          double H);

}  // namespace merb
