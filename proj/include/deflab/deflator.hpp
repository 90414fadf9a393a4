#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deflab/azema.hpp"
#include "deflab/enlargement.hpp"
#include "deflab/lp.hpp"
#include "deflab/space.hpp"

namespace deflab {

// Outcome of a deflator-existence search. When feasible, M is the F-side
// witness (normalized so that {M=0} = [eta]), z the induced solution of the
// drift-equation system, and Phi the verified G deflator. slack is the
// optimal margin of the strict constraints; feasibility means slack > 0.
struct Certificate {
    bool feasible = false;
    std::optional<Rat> slack;  // empty when even the equalities are inconsistent
    Proc M;
    Proc z;
    Proc Phi;
};

bool is_deflator(const FilteredSpace& s, const Proc& y, const std::vector<Proc>& S);

// n^{tau-} / L^{tau-}: the G deflator of X^{tau-} for F martingales X whose
// eta-stopped version is still a martingale.
Proc deflator_dfet(const EnlargedPair& pair, const Analysis& an, const Proc& x);

// When P(0 < eta < oo) > 0: M = 1_{{0<eta}} 1_{[eta,oo)} - d_comp is an F
// martingale whose stopped-before-tau version is a nonconstant nonincreasing
// G process (an arbitrage of the first kind); empty otherwise.
struct ArbitrageWitness {
    Proc M;
    Proc M_stopped;      // M^{tau-}
    Rat terminal_mean;   // E[M^{tau-}_T] = -E[gamma_eta 1_{{0<eta<oo}}] < 0
};
std::optional<ArbitrageWitness> arbitrage_witness(const EnlargedPair& pair, const Analysis& an);

bool ratio_supermartingale_check(const EnlargedPair& pair, const Analysis& an, const Proc& m);

// Exact linear-feasibility search for the F-side witness M of the deflator
// system for X^{tau-}:
//   M martingale on U_n[0,zeta_n], M_eta = 0, X^{eta_ddot-} M martingale on
//   the union set, M > 0 on [0,zeta), M_- > 0 on {Z_0>0} n U_n[0,zeta_n],
// with M_0 = 1 and strictness via one maximized slack.
Certificate certificate_search(const EnlargedPair& pair, const Analysis& an,
                               const std::vector<Proc>& X);

// Direct G-side feasibility: is there Y > 0, Y_0 = 1, with Y and Y S_G^i all
// G martingales? Cross-checks the iff theorems.
Certificate g_deflator_search(const EnlargedPair& pair, const std::vector<Proc>& S_G);

// The S-with-deflator variant: unknowns M with Y M and S^{eta_ddot-} Y M
// martingales on the union set and the same positivity block.
Certificate whenS_search(const EnlargedPair& pair, const Analysis& an, const std::vector<Proc>& S,
                         const Proc& y);

// The purely discontinuous G martingale with jumps
//   (Z_- ntilde / (ntilde_- Ztilde) - 1) 1_{(0,tau]};
// its G-predictable projection vanishes block by block, its jumps stay above
// -1, and its exponential is strictly positive.
struct FrakM {
    Proc m_frak;
    Proc exp_m;  // E(m_frak) > 0
};
FrakM frak_m(const EnlargedPair& pair, const Analysis& an);

// Y^tau E(m_frak): the G deflator of S^tau for an F deflator Y of S with no
// jump at eta_tilde (the continuous-part factor degenerates to 1 on a
// discrete grid since continuous martingale parts vanish identically).
Proc deflator_at_tau(const EnlargedPair& pair, const Analysis& an, const std::vector<Proc>& S,
                     const Proc& y);

// Documentation stub for the purely-discontinuous lemma: on a discrete grid
// every martingale is purely discontinuous, so the continuous part of the G
// martingale part of X^tau vanishes identically.
struct PureDiscReport {
    bool continuous_part_zero = true;
    std::string note;
};
PureDiscReport puredisc_note(const EnlargedPair& pair, const Proc& x);

}  // namespace deflab
