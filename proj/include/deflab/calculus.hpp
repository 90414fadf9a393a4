#pragma once

#include <optional>
#include <vector>

#include "deflab/space.hpp"

namespace deflab {

// A random set of the form [0,bound] (or [0,bound)), optionally presented as
// an increasing union of closed intervals [0,family[k]] whose supremum is
// attained at bound. Used for C(1/gamma) and for the union of the level
// hitting times of the survival process.
struct StochasticInterval {
    RTime bound;
    bool inclusive = true;
    std::vector<RTime> family;  // nondecreasing in k; empty means {bound}

    bool contains(int t, int w) const {
        if (!family.empty()) {
            for (const RTime& r : family)
                if (t <= r.t[w]) return true;
            return false;
        }
        return inclusive ? t <= bound.t[w] : t < bound.t[w];
    }
};

// (H . X)_t = sum_{s=1..t} H_s dX_s, zero at t=0.
Proc integrate(const Proc& h, const Proc& x);

// The left-limit path X_- as a table: value X_{t-1} at t >= 1, X_0 at 0.
Proc shift_left(const Proc& x);

// [X,Y]_t = sum_{s<=t} dX_s dY_s.
Proc bracket(const Proc& x, const Proc& y);

// E(X)_t = prod_{s<=t} (1 + dX_s), one at t=0.
Proc stoch_exp(const Proc& x);

// Exact inverse of stoch_exp for Y > 0 with Y_0 = 1; throws NonPositive
// otherwise. The absorbing variant accepts a nonnegative Y that stays at its
// first zero, emitting a -1 jump there.
Proc stoch_log(const Proc& y);
Proc stoch_log_absorbing(const Proc& y);

Proc stop_at(const Proc& x, const RTime& r);      // X^R
Proc stop_before(const Proc& x, const RTime& r);  // X^{R-}

bool martingale_test(const FilteredSpace& s, const Proc& x);
bool supermartingale_test(const FilteredSpace& s, const Proc& x);

// Local martingale on a stochastic set, realized as: every capped process
// X^{family[k]} is a martingale. Family times must be stopping times.
bool martingale_on_set_test(const FilteredSpace& s, const Proc& x, const StochasticInterval& set);

// X is orthogonal to U when the product XU is a martingale.
bool orthogonality_test(const FilteredSpace& s, const Proc& x, const Proc& u);

}  // namespace deflab
