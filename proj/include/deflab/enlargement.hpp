#pragma once

#include <utility>
#include <vector>

#include "deflab/azema.hpp"
#include "deflab/calculus.hpp"
#include "deflab/space.hpp"

namespace deflab {

// A pair of filtrations on the same outcomes/measure with G refining F and
// tau a G stopping time, satisfying the reduction property: every G-adapted
// (resp. G-predictable) process agrees on [0,tau) (resp. (0,tau]) with an
// F-adapted (resp. F-predictable) one. Progressive enlargement always
// qualifies; hand-built pairs are validated at construction.
struct EnlargedPair {
    FilteredSpace F;
    FilteredSpace G;
    RTime tau;
};

// G_t = F_t refined by the level sets {tau=0},...,{tau=t},{tau>t}.
EnlargedPair enlarge_progressively(const FilteredSpace& f, const RTime& tau);

// Validates a hand-built pair (same measure, refinement, stopping time,
// reduction property checked on the atom basis).
EnlargedPair make_enlarged_pair(FilteredSpace f, FilteredSpace g, RTime tau);

// Canonical reductions. Optional: K_t = E[H_t 1_{{t<tau}} | F_t] / Z_t on
// {Z>0}, zero elsewhere; agrees with H on [0,tau). Predictable: the
// Z_--weighted version agreeing on (0,tau]. Throws ReductionImpossible when
// the canonical representative fails to match (possible only for hand-built
// pairs violating the assumption).
Proc reduce_optional(const EnlargedPair& pair, const Proc& h);
Proc reduce_predictable(const EnlargedPair& pair, const Proc& h);

// F stopping time T with T ^ tau = U ^ tau; predictable version preserves
// predictability.
RTime reduce_stopping_time(const EnlargedPair& pair, const RTime& u);
RTime reduce_predictable_time(const EnlargedPair& pair, const RTime& u);

// Y_- 1_{{Z_->0}} is an F-predictable reduction of X_-.
bool check_redreg(const EnlargedPair& pair, const Proc& x);

struct RdmResult {
    Proc reduction;
    bool holds = false;
};

// For a G martingale X with no jump at tau: the reduction Y satisfies
// YZ + Y_-.a (equivalently Z_-.Y + [Y,Z]) martingale on U_n [0,zeta_n].
RdmResult rdm_check(const EnlargedPair& pair, const Proc& x);

enum class YyamDirection { Forward, Backward };

// Forward: X = E(-(1/Z_-).a) M from a martingale M on the union set.
// Backward: recovers M from a solution X of the drift equation vanishing at
// eta_ddot; round trip is the identity on the union set.
Proc yyam_solve(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt,
                YyamDirection direction, const Proc& input);

// Lifts a solution of the drift equation to the G martingale X^{tau-}.
Proc csinv_lift(const EnlargedPair& pair, const Proc& x);

// G drift of X^tau for an F martingale X:
//   Drift_t = sum_{s <= t ^ tau} E[dX_s dm_s | F_{s-1}] / Z_{s-1},
// with m the optional-dual companion martingale Z + A. X^tau - Drift is a
// G martingale, exactly.
Proc jeulin_yor(const EnlargedPair& pair, const Proc& x);

// E[xi | G_{T-}] 1_{{0<tau, T<=tau}} =
//   xi 1_{{0=T<tau}} + (E[xi Ztilde_T | F_{T-}] / Z_{T-}) 1_{{0<T<=tau}}
// for F-predictable T and F_T-measurable xi.
bool key_lemma_check(const EnlargedPair& pair, const RTime& T, const std::vector<Rat>& xi);

// Reduction of a G-predictable finite-variation A (A_0 = 0) is finite
// variation on the union set and nondecreasing there when A is.
bool rdi_check(const EnlargedPair& pair, const Proc& a);

}  // namespace deflab
