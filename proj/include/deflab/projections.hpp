#pragma once

#include "deflab/space.hpp"

namespace deflab {

// Doob-Meyer pair for an adapted X: X = martingale - drift with drift
// predictable, drift[0] = 0, martingale[0] = X[0].
struct DoobMeyer {
    Proc martingale;
    Proc drift;
};

// Y_t = E[X_t | F_t]; fixes adapted processes.
Proc optional_projection(const FilteredSpace& s, const Proc& x);

// Y_t = E[X_t | F_{t-1}] for t >= 1, Y_0 = E[X_0 | F_0].
Proc predictable_projection(const FilteredSpace& s, const Proc& x);

// Dual projections act on increments: the result cumulates E[dV_t|F_t]
// (resp. E[dV_t|F_{t-1}]) from zero. Initial mass at t=0 never contributes,
// matching the vanishing-jump-at-0 convention.
Proc dual_optional(const FilteredSpace& s, const Proc& v);
Proc dual_predictable(const FilteredSpace& s, const Proc& v);

DoobMeyer doob_meyer(const FilteredSpace& s, const Proc& x);

}  // namespace deflab
