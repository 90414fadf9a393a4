#pragma once

#include <vector>

#include "deflab/rational.hpp"

namespace deflab {

// A sparse row: sum of coef * x[var] compared against rhs.
struct LinRow {
    std::vector<std::pair<int, Rat>> terms;
    Rat rhs;
};

// maximize objective . x  subject to  eq rows (= rhs), ge rows (>= rhs),
// all variables free. Solved by an exact two-phase dense simplex with
// Bland's rule; every pivot is a rational operation, so the verdict is
// a certificate, not an approximation.
struct LinearProgram {
    int num_vars = 0;
    std::vector<LinRow> eq;
    std::vector<LinRow> ge;
    std::vector<Rat> objective;

    int add_var() {
        objective.emplace_back(0);
        return num_vars++;
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rat value;
    std::vector<Rat> x;
};

LpSolution solve_lp(const LinearProgram& lp);

}  // namespace deflab
