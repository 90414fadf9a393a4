#pragma once

#include <vector>

#include "deflab/calculus.hpp"
#include "deflab/projections.hpp"
#include "deflab/space.hpp"

namespace deflab {

// Compensation structure of a stopping time R:
//   v = predictable dual projection of 1_{{0<R}} 1_{[R,oo)}
//   u = 1_{{0<R}} 1_{[R,oo)} - v            (the compensated jump martingale)
//   R_natural = R on {dv_R = 1}             (the predictable part of R)
//   R_flat    = R on {dv_R < 1}             (the totally-unannounced part)
//   kappa     = 1_{{dv<1}} dv
struct JumpComp {
    Proc v, u;
    RTime R_natural, R_flat;
    Proc kappa;
};

// Orthogonal decomposition of a martingale X against u:
//   X^R = Xbar + jump_mart + (H . u)
// with H = K/(1-kappa) predictable, Xbar = (X - H.u)^{R-}, and
// jump_mart carrying the residual jump of X - H.u at R.
struct OrthoDecomp {
    Proc H, K;
    Proc Xbar;
    Proc jump_mart;
};

JumpComp jump_comp(const FilteredSpace& s, const RTime& r);

// Predictable K with E[dX_R | F_{R-}] = K_R on {0<R<oo}; zero where the
// conditional probability of {R=t} vanishes.
Proc K_coefficient(const FilteredSpace& s, const Proc& x, const RTime& r);

OrthoDecomp ortho_decomp(const FilteredSpace& s, const Proc& x, const RTime& r);

// Deflator surgery for S^{R-}: from a deflator E(xi) of S^{R-} builds
//   first  = E(xibar + H.u)
//   nojump = E((1/(1 - H dv)) . xibar)
// both strictly positive deflators of S^{R-}; the second has no jump at R.
struct NoJumpDeflators {
    Proc first;
    Proc nojump;
};

NoJumpDeflators nojump_deflator(const FilteredSpace& s, const std::vector<Proc>& S, const RTime& r,
                                const Proc& xi);

// Convenience overload recovering xi = stoch_log(Y) from a deflator Y > 0.
NoJumpDeflators nojump_deflator_from(const FilteredSpace& s, const std::vector<Proc>& S,
                                     const RTime& r, const Proc& y);

}  // namespace deflab
