#include "merb/tableau.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace merb {

namespace {

// Rooted trees are enumerated once, smallest order first.  A tree is a root
// plus a multiset of child trees, stored as a non-decreasing list of indices
// into the global list; that ordering makes each multiset unique.
struct Tree {
    int order;
    std::vector<int> children;
    double gamma;  // density
};

class TreeTable {
  public:
    explicit TreeTable(int max_order) {
        trees_.push_back({1, {}, 1.0});
        for (int n = 2; n <= max_order; ++n) {
            std::vector<int> children;
            extend(n - 1, 0, children);
        }
    }

    const std::vector<Tree>& trees() const { return trees_; }

  private:
    void extend(int remaining, int min_index, std::vector<int>& children) {
        if (remaining == 0) {
            Tree t;
            t.children = children;
            t.order = 1;
            t.gamma = 1.0;
            for (int ci : children) {
                t.order += trees_[static_cast<std::size_t>(ci)].order;
                t.gamma *= trees_[static_cast<std::size_t>(ci)].gamma;
            }
            t.gamma *= t.order;
            trees_.push_back(t);
            return;
        }
        for (int i = min_index; i < static_cast<int>(trees_.size()); ++i) {
            if (trees_[static_cast<std::size_t>(i)].order > remaining) continue;
            children.push_back(i);
            extend(remaining - trees_[static_cast<std::size_t>(i)].order, i, children);
            children.pop_back();
        }
    }

    std::vector<Tree> trees_;
};

const TreeTable& tree_table() {
    static const TreeTable table(6);
    return table;
}

// Elementary weight vector of a tree: g(leaf)_i = 1 and
// g([t1..tk])_i = prod_m (A g(tm))_i.
std::vector<double> elementary_weight(const ButcherTableau& tab, const std::vector<Tree>& trees,
                                      int index, std::vector<std::vector<double>>& cache) {
    auto& slot = cache[static_cast<std::size_t>(index)];
    if (!slot.empty()) return slot;
    const int s = tab.stages();
    std::vector<double> g(static_cast<std::size_t>(s), 1.0);
    for (int ci : trees[static_cast<std::size_t>(index)].children) {
        const auto gc = elementary_weight(tab, trees, ci, cache);
        for (int i = 0; i < s; ++i) {
            double acc = 0.0;
            for (int j = 0; j < i; ++j) acc += tab.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * gc[static_cast<std::size_t>(j)];
            g[static_cast<std::size_t>(i)] *= acc;
        }
    }
    slot = g;
    return slot;
}

}  // namespace

std::vector<double> order_condition_residuals(const ButcherTableau& tab, int order) {
    if (order < 1 || order > 6) throw std::invalid_argument("order_condition_residuals: order must be in 1..6");
    const auto& trees = tree_table().trees();
    std::vector<std::vector<double>> cache(trees.size());
    std::vector<double> residuals;
    for (std::size_t k = 0; k < trees.size(); ++k) {
        if (trees[k].order > order) continue;
        const auto g = elementary_weight(tab, trees, static_cast<int>(k), cache);
        double phi = 0.0;
        for (int i = 0; i < tab.stages(); ++i) phi += tab.b[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(i)];
        residuals.push_back(phi - 1.0 / trees[k].gamma);
    }
    return residuals;
}

double max_order_condition_residual(const ButcherTableau& tab, int order) {
    double m = 0.0;
    for (double r : order_condition_residuals(tab, order)) m = std::max(m, std::abs(r));
    return m;
}

int order_condition_count(int order) {
    int n = 0;
    for (const auto& t : tree_table().trees()) {
        if (t.order <= order) ++n;
    }
    return n;
}

void validate_tableau(const ButcherTableau& tab) {
    const int s = tab.stages();
    if (s == 0 || tab.c.size() != static_cast<std::size_t>(s) || tab.a.size() != static_cast<std::size_t>(s)) {
        throw std::invalid_argument("tableau '" + tab.name + "': inconsistent sizes");
    }
    for (int i = 0; i < s; ++i) {
        if (tab.a[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(s)) {
            throw std::invalid_argument("tableau '" + tab.name + "': A row size mismatch");
        }
        double row_sum = 0.0;
        for (int j = 0; j < s; ++j) {
            const double aij = tab.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (j >= i && aij != 0.0) {
                throw std::invalid_argument("tableau '" + tab.name + "': not strictly lower triangular");
            }
            row_sum += aij;
        }
        if (std::abs(row_sum - tab.c[static_cast<std::size_t>(i)]) > 1e-13) {
            throw std::invalid_argument("tableau '" + tab.name + "': c does not match row sums of A");
        }
    }
    if (max_order_condition_residual(tab, tab.order) > 1e-12) {
        throw std::invalid_argument("tableau '" + tab.name + "': order conditions not met to 1e-12");
    }
}

namespace {

// Kutta's 3-stage third-order rule.
ButcherTableau make_rk3() {
    ButcherTableau t;
    t.name = "erk-3-3";
    t.order = 3;
    t.c = {0.0, 0.5, 1.0};
    t.b = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
    t.a = {{0, 0, 0}, {0.5, 0, 0}, {-1.0, 2.0, 0}};
    return t;
}

ButcherTableau make_rk4() {
    ButcherTableau t;
    t.name = "erk-4-4";
    t.order = 4;
    t.c = {0.0, 0.5, 0.5, 1.0};
    t.b = {1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0};
    t.a = {{0, 0, 0, 0}, {0.5, 0, 0, 0}, {0, 0.5, 0, 0}, {0, 0, 1.0, 0}};
    return t;
}

// Explicit part of the 8-stage ARK5(4)8L[2]SA pair.
ButcherTableau make_erk5() {
    ButcherTableau t;
    t.name = "erk-8-5";
    t.order = 5;
    t.c = {0.0,
           41.0 / 100.0,
           2935347310677.0 / 11292855782101.0,
           1426016391358.0 / 7196633302097.0,
           92.0 / 100.0,
           24.0 / 100.0,
           3.0 / 5.0,
           1.0};
    t.b = {-872700587467.0 / 9133579230613.0,
           0.0,
           0.0,
           22348218063261.0 / 9555858737531.0,
           -1143369518992.0 / 8141816002931.0,
           -39379526789629.0 / 19018526304540.0,
           32727382324388.0 / 42900044865799.0,
           41.0 / 200.0};
    t.a.assign(8, std::vector<double>(8, 0.0));
    t.a[1][0] = 41.0 / 100.0;
    t.a[2][0] = 367902744464.0 / 2072280473677.0;
    t.a[2][1] = 677623207551.0 / 8224143866563.0;
    t.a[3][0] = 1268023523408.0 / 10340822734521.0;
    t.a[3][2] = 1029933939417.0 / 13636558850479.0;
    t.a[4][0] = 14463281900351.0 / 6315353703477.0;
    t.a[4][2] = 66114435211212.0 / 5879490589093.0;
    t.a[4][3] = -54053170152839.0 / 4284798021562.0;
    t.a[5][0] = 14090043504691.0 / 34967701212078.0;
    t.a[5][2] = 15191511035443.0 / 11219624916014.0;
    t.a[5][3] = -18461159152457.0 / 12425892160975.0;
    t.a[5][4] = -281667163811.0 / 9011619295870.0;
    t.a[6][0] = 19230459214898.0 / 13134317526959.0;
    t.a[6][2] = 21275331358303.0 / 2942455364971.0;
    t.a[6][3] = -38145345988419.0 / 4862620318723.0;
    t.a[6][4] = -1.0 / 8.0;
    t.a[6][5] = -1.0 / 8.0;
    t.a[7][0] = -19977161125411.0 / 11928030595625.0;
    t.a[7][2] = -40795976796054.0 / 6384907823539.0;
    t.a[7][3] = 177454434618887.0 / 12078138498510.0;
    t.a[7][4] = 782672205425.0 / 8267701900261.0;
    t.a[7][5] = -69563011059811.0 / 9646580694205.0;
    t.a[7][6] = 7356628210526.0 / 4942186776405.0;
    return t;
}

// Verner's 8-stage sixth-order method.
ButcherTableau make_erk6() {
    ButcherTableau t;
    t.name = "erk-8-6";
    t.order = 6;
    t.c = {0.0, 1.0 / 6.0, 4.0 / 15.0, 2.0 / 3.0, 5.0 / 6.0, 1.0, 1.0 / 15.0, 1.0};
    t.b = {3.0 / 40.0, 0.0, 875.0 / 2244.0, 23.0 / 72.0, 264.0 / 1955.0, 0.0, 125.0 / 11592.0, 43.0 / 616.0};
    t.a.assign(8, std::vector<double>(8, 0.0));
    t.a[1][0] = 1.0 / 6.0;
    t.a[2][0] = 4.0 / 75.0;
    t.a[2][1] = 16.0 / 75.0;
    t.a[3][0] = 5.0 / 6.0;
    t.a[3][1] = -8.0 / 3.0;
    t.a[3][2] = 5.0 / 2.0;
    t.a[4][0] = -165.0 / 64.0;
    t.a[4][1] = 55.0 / 6.0;
    t.a[4][2] = -425.0 / 64.0;
    t.a[4][3] = 85.0 / 96.0;
    t.a[5][0] = 12.0 / 5.0;
    t.a[5][1] = -8.0;
    t.a[5][2] = 4015.0 / 612.0;
    t.a[5][3] = -11.0 / 36.0;
    t.a[5][4] = 88.0 / 255.0;
    t.a[6][0] = -8263.0 / 15000.0;
    t.a[6][1] = 124.0 / 75.0;
    t.a[6][2] = -643.0 / 680.0;
    t.a[6][3] = -81.0 / 250.0;
    t.a[6][4] = 2484.0 / 10625.0;
    t.a[7][0] = 3501.0 / 1720.0;
    t.a[7][1] = -300.0 / 43.0;
    t.a[7][2] = 297275.0 / 52632.0;
    t.a[7][3] = -319.0 / 2322.0;
    t.a[7][4] = 24068.0 / 84065.0;
    t.a[7][6] = 3850.0 / 26703.0;
    return t;
}

}  // namespace

const std::map<int, ButcherTableau>& shipped_tableaus() {
    static const std::map<int, ButcherTableau> tabs = [] {
        std::map<int, ButcherTableau> m;
        m.emplace(3, make_rk3());
        m.emplace(4, make_rk4());
        m.emplace(5, make_erk5());
        m.emplace(6, make_erk6());
        return m;
    }();
    return tabs;
}

const ButcherTableau& tableau_of_order(int order) {
    const auto& tabs = shipped_tableaus();
    auto it = tabs.find(order);
    if (it == tabs.end()) {
        throw std::invalid_argument("no shipped tableau of order " + std::to_string(order));
    }
    return it->second;
}

}  // namespace merb
