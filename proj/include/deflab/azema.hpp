#pragma once

#include <optional>
#include <vector>

#include "deflab/calculus.hpp"
#include "deflab/projections.hpp"
#include "deflab/space.hpp"

namespace deflab {

// The survival process of a random time tau in the small filtration and its
// companions:
//   Z      optional projection of 1_{[0,tau)}
//   Ztilde optional projection of 1_{[0,tau]}
//   a / A  predictable / optional dual projection of 1_{{0<tau}} 1_{[tau,oo)}
//   mdot   Z + a,   m = Z + A   (both martingales)
//   gamma  predictable projection of Z, = Z_- - da
struct AzemaBundle {
    Proc Z, Ztilde, a, A, m, mdot, gamma;
};

// First zero of Z and its classification. zeta_n = inf{t : Z_t <= 1/n} is
// materialized for the finitely many effective levels only; beyond
// stabilization zeta_n = zeta. On a finite grid the first zero is always
// attained with Z_{zeta-} > 0, so eta_dot (the continuous-vanishing branch)
// is identically infinite; it is kept for interface fidelity.
struct VanishingTimes {
    RTime zeta;
    std::vector<std::pair<long, RTime>> zeta_family;  // (n, zeta_n), effective levels
    RTime eta;       // Z_{zeta-} > 0, gamma_zeta > 0
    RTime eta_dot;   // Z_{zeta-} = 0 (empty in discrete time)
    RTime eta_ddot;  // Z_{zeta-} > 0, gamma_zeta = 0
    RTime eta_tilde; // Ztilde_zeta = 0 < Z_{zeta-}

    StochasticInterval union_zeta_n(const FilteredSpace& s) const;
};

// Multiplicative decomposition Z = L D on C(1/gamma). D is the published
// version redefined as D^{eta_dot-} 1_{[0,eta_ddot)}; D_raw keeps the plain
// closed form Z_0 E(-(1/Z_-).a) for the verbatim decomposition tests. L is
// defined on C only; Lhat = 1_{{Z_0=0}} + L 1_{[0,zeta)} extends it globally.
struct MultDecomp {
    Proc L;      // values valid on C only; use L_at for guarded access
    Proc D;      // redefined version, used downstream
    Proc D_raw;
    Proc Lhat;
    StochasticInterval C_set;
    std::vector<std::pair<long, RTime>> S_family;  // (n, S_n): 1/gamma <= n on (0,S_n]

    const Rat& L_at(const FilteredSpace& s, int t, int w) const;
};

// The eta / eta_tilde compensator martingales:
//   d_comp = predictable dual projection of 1_{{0<eta}} 1_{[eta,oo)}
//   n      = E(-d_comp)^{-1} 1_{[0,eta)}
// and likewise (d_tilde, n_tilde) for eta_tilde.
struct EtaMartingales {
    Proc d_comp, n;
    Proc d_tilde, n_tilde;
};

struct Da1Report {
    RTime sigma_prime;
    bool graph_in_tau = true;
    bool z_zero_at_sigma = true;
    bool z_left_one_at_sigma = true;
    bool holds() const { return graph_in_tau && z_zero_at_sigma && z_left_one_at_sigma; }
};

AzemaBundle azema_bundle(const FilteredSpace& s, const RTime& tau);
VanishingTimes vanishing_times(const FilteredSpace& s, const AzemaBundle& b);
StochasticInterval set_C(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt);
MultDecomp mult_decomp(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt);
EtaMartingales eta_martingales(const FilteredSpace& s, const AzemaBundle& b,
                               const VanishingTimes& vt);

// E(-1_{[0,zeta]} (1/Z_-).a): the multiplicative drift normalized by Z_0,
// frozen beyond zeta where 1/Z_- loses meaning.
Proc drift_exponential(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt);

// X + X_- (1/Z_-).a with the increment guard 1_{[0,zeta]}; the left side of
// the drift equation characterizing the processes E(-(1/Z_-).a) M.
Proc yyam_equation_lhs(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt,
                       const Proc& x);

// Measure-change invariance of the vanishing structure: recomputes the bundle
// under the changed measure and compares the positivity sets of Z, Z_-, gamma
// and the times zeta, eta, eta_ddot pointwise.
bool check_chgpas(const FilteredSpace& s, const RTime& tau, const MeasureChange& mc);

// sigma' = sigma restricted to {da_sigma = 1, 0 < sigma < oo}: its graph sits
// inside [tau] with Z vanishing at sigma' and Z_- equal to one there.
Da1Report check_Da1(const FilteredSpace& s, const RTime& tau, const RTime& sigma);

// Everything derived from one (space, tau) pair, built once and shared.
struct Analysis {
    FilteredSpace F;
    RTime tau;
    AzemaBundle bundle;
    VanishingTimes vt;
    MultDecomp md;
    EtaMartingales em;
};

Analysis analyze(const FilteredSpace& s, const RTime& tau);

}  // namespace deflab
