#include "deflab/lp.hpp"

#include <vector>

#include "deflab/errors.hpp"

namespace deflab {

namespace {

// Dense canonical tableau: rows 0..m-1 are constraints, row m is the reduced
// cost row; column n is the right-hand side.
struct Tableau {
    int m = 0, n = 0;
    std::vector<std::vector<Rat>> t;  // (m+1) x (n+1)
    std::vector<int> basis;           // basic column per row

    void pivot(int r, int c) {
        Rat piv = t[r][c];
        for (int j = 0; j <= n; ++j) t[r][j] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == r || sgn(t[i][c]) == 0) continue;
            Rat f = t[i][c];
            for (int j = 0; j <= n; ++j) t[i][j] -= f * t[r][j];
        }
        basis[r] = c;
    }

    // Bland's rule: smallest eligible entering column, smallest basis index on
    // ratio ties. Returns false when the current basis is optimal.
    bool step(const std::vector<bool>& allowed) {
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (allowed[j] && sgn(t[m][j]) < 0) {
                enter = j;
                break;
            }
        if (enter < 0) return false;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (sgn(t[i][enter]) <= 0) continue;
            Rat ratio = t[i][n] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) fail(ErrorKind::Internal, "unbounded pivot in bounded phase");
        pivot(leave, enter);
        return true;
    }

    void set_costs(const std::vector<Rat>& cost) {
        for (int j = 0; j < n; ++j) t[m][j] = cost[j];
        t[m][n] = 0;
        for (int i = 0; i < m; ++i) {
            const Rat& cb = cost[basis[i]];
            if (sgn(cb) == 0) continue;
            for (int j = 0; j <= n; ++j) t[m][j] -= cb * t[i][j];
        }
    }
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
    // Standard form: x_j = p_j - q_j with p,q >= 0; surplus per ge row;
    // artificial per row.
    const int nf = lp.num_vars;
    const int n_split = 2 * nf;
    const int n_surplus = static_cast<int>(lp.ge.size());
    const int m = static_cast<int>(lp.eq.size() + lp.ge.size());
    const int n_art = m;
    const int n = n_split + n_surplus + n_art;

    Tableau tab;
    tab.m = m;
    tab.n = n;
    tab.t.assign(m + 1, std::vector<Rat>(n + 1, Rat(0)));
    tab.basis.assign(m, 0);

    auto fill_row = [&](int i, const LinRow& row, int surplus_col) {
        for (const auto& [var, coef] : row.terms) {
            tab.t[i][2 * var] += coef;
            tab.t[i][2 * var + 1] -= coef;
        }
        if (surplus_col >= 0) tab.t[i][surplus_col] = -1;
        tab.t[i][n] = row.rhs;
        if (sgn(tab.t[i][n]) < 0)
            for (int j = 0; j <= n; ++j) tab.t[i][j] = -tab.t[i][j];
        tab.t[i][n_split + n_surplus + i] = 1;
        tab.basis[i] = n_split + n_surplus + i;
    };

    int i = 0;
    for (const LinRow& row : lp.eq) fill_row(i++, row, -1);
    for (size_t k = 0; k < lp.ge.size(); ++k) fill_row(i++, lp.ge[k], n_split + static_cast<int>(k));

    // Phase 1: drive the artificials to zero.
    std::vector<Rat> cost1(n, Rat(0));
    for (int j = n_split + n_surplus; j < n; ++j) cost1[j] = 1;
    tab.set_costs(cost1);
    std::vector<bool> all_cols(n, true);
    while (tab.step(all_cols)) {
    }
    LpSolution sol;
    if (sgn(tab.t[m][n]) != 0) {  // -objective value; feasible iff exactly zero
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    // Pivot basic artificials out where possible; redundant rows keep them at
    // zero, blocked from re-entering.
    std::vector<bool> allowed(n, true);
    for (int j = n_split + n_surplus; j < n; ++j) allowed[j] = false;
    for (int r = 0; r < m; ++r) {
        if (tab.basis[r] < n_split + n_surplus) continue;
        int c = -1;
        for (int j = 0; j < n_split + n_surplus; ++j)
            if (sgn(tab.t[r][j]) != 0) {
                c = j;
                break;
            }
        if (c >= 0) tab.pivot(r, c);
    }

    // Phase 2: minimize -objective over the original columns.
    std::vector<Rat> cost2(n, Rat(0));
    for (int v = 0; v < nf; ++v) {
        cost2[2 * v] = -lp.objective[v];
        cost2[2 * v + 1] = lp.objective[v];
    }
    tab.set_costs(cost2);
    while (true) {
        int enter = -1;
        for (int j = 0; j < n; ++j)
            if (allowed[j] && sgn(tab.t[m][j]) < 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        Rat best;
        for (int r = 0; r < m; ++r) {
            if (sgn(tab.t[r][enter]) <= 0) continue;
            Rat ratio = tab.t[r][n] / tab.t[r][enter];
            if (leave < 0 || ratio < best || (ratio == best && tab.basis[r] < tab.basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave < 0) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        tab.pivot(leave, enter);
    }

    sol.status = LpStatus::Optimal;
    std::vector<Rat> std_x(n, Rat(0));
    for (int r = 0; r < m; ++r) std_x[tab.basis[r]] = tab.t[r][n];
    sol.x.assign(nf, Rat(0));
    for (int v = 0; v < nf; ++v) sol.x[v] = std_x[2 * v] - std_x[2 * v + 1];
    sol.value = Rat(0);
    for (int v = 0; v < nf; ++v) sol.value += lp.objective[v] * sol.x[v];
    return sol;
}

}  // namespace deflab
