#include "deflab/azema.hpp"

#include <algorithm>
#include <set>

namespace deflab {

namespace {

void internal_check(bool cond, const char* what) {
    require(cond, ErrorKind::Internal, what);
}

// Largest integer n >= 1 with v <= 1/n, for 0 < v <= 1.
long level_floor(const Rat& v) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), v.get_den().get_mpz_t(), v.get_num().get_mpz_t());
    long out = q.get_si();
    return out < 1 ? 1 : out;
}

// Effective thresholds for a hitting-time family indexed by n: the distinct
// positive values of x contribute the n where "x <= 1/n" flips.
std::vector<long> effective_levels(const Proc& x) {
    std::set<Rat> values;
    for (int t = 0; t <= x.T(); ++t)
        for (int w = 0; w < x.n(); ++w)
            if (sgn(x.v[t][w]) > 0) values.insert(x.v[t][w]);
    std::set<long> ns{1};
    for (const Rat& v : values) {
        long f = level_floor(v);
        ns.insert(f);
        ns.insert(f + 1);
    }
    return {ns.begin(), ns.end()};
}

}  // namespace

AzemaBundle azema_bundle(const FilteredSpace& s, const RTime& tau) {
    require(tau.t.size() == static_cast<size_t>(s.n()), ErrorKind::BadInput, "tau size mismatch");
    for (int w = 0; w < s.n(); ++w)
        require(tau.t[w] == kInf || (tau.t[w] >= 0 && tau.t[w] <= s.T()), ErrorKind::BadInput,
                "tau value out of grid");

    AzemaBundle b;
    b.Z = optional_projection(s, indicator_open(s, tau));
    b.Ztilde = optional_projection(s, indicator_closed(s, tau));
    Proc jump = indicator_from(s, tau, /*strict_pos=*/true);
    b.a = dual_predictable(s, jump);
    b.A = dual_optional(s, jump);
    b.mdot = proc_add(b.Z, b.a);
    b.m = proc_add(b.Z, b.A);
    b.gamma = predictable_projection(s, b.Z);

    internal_check(martingale_test(s, b.mdot), "mdot must be a martingale");
    internal_check(martingale_test(s, b.m), "m must be a martingale");
    for (int t = 1; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w) {
            internal_check(b.Ztilde.v[t][w] == b.Z.v[t - 1][w] + b.m.delta(t, w),
                           "Ztilde = Z_- + dm");
            internal_check(b.Ztilde.v[t][w] == b.Z.v[t][w] + b.A.delta(t, w), "Ztilde = Z + dA");
            internal_check(b.gamma.v[t][w] == b.Z.v[t - 1][w] - b.a.delta(t, w),
                           "gamma = Z_- - da");
        }
    return b;
}

StochasticInterval VanishingTimes::union_zeta_n(const FilteredSpace&) const {
    StochasticInterval set;
    set.bound = zeta;
    set.inclusive = true;
    for (const auto& [n, zn] : zeta_family) set.family.push_back(zn);
    return set;
}

VanishingTimes vanishing_times(const FilteredSpace& s, const AzemaBundle& b) {
    VanishingTimes vt;
    const int T = s.T();
    vt.zeta = const_time(s, kInf);
    for (int w = 0; w < s.n(); ++w)
        for (int t = 0; t <= T; ++t)
            if (sgn(b.Z.v[t][w]) == 0 || sgn(b.Z.left(t, w)) == 0) {
                vt.zeta.t[w] = t;
                break;
            }

    for (long n : effective_levels(b.Z)) {
        RTime zn = const_time(s, kInf);
        for (int w = 0; w < s.n(); ++w)
            for (int t = 0; t <= T; ++t)
                if (b.Z.v[t][w] * n <= 1) {
                    zn.t[w] = t;
                    break;
                }
        if (vt.zeta_family.empty() || vt.zeta_family.back().second.t != zn.t)
            vt.zeta_family.emplace_back(n, zn);
    }
    internal_check(!vt.zeta_family.empty() && vt.zeta_family.back().second.t == vt.zeta.t,
                   "zeta = sup zeta_n must be attained");

    vt.eta = const_time(s, kInf);
    vt.eta_dot = const_time(s, kInf);
    vt.eta_ddot = const_time(s, kInf);
    vt.eta_tilde = const_time(s, kInf);
    for (int w = 0; w < s.n(); ++w) {
        Time z = vt.zeta.t[w];
        if (z == kInf || z == 0) continue;
        bool left_pos = sgn(b.Z.left(z, w)) > 0;
        bool gamma_pos = sgn(b.gamma.v[z][w]) > 0;
        if (!left_pos)
            vt.eta_dot.t[w] = z;
        else if (gamma_pos)
            vt.eta.t[w] = z;
        else
            vt.eta_ddot.t[w] = z;
        if (left_pos && sgn(b.Ztilde.v[z][w]) == 0) vt.eta_tilde.t[w] = z;
    }
    return vt;
}

// Exhausting family of C(1/gamma): 1/gamma <= n on (0,S_n], S_n up to C.
static std::vector<std::pair<long, RTime>> s_family(const FilteredSpace& s, const AzemaBundle& b) {
    std::vector<std::pair<long, RTime>> fam;
    for (long n : effective_levels(b.gamma)) {
        RTime sn = const_time(s, 0);
        for (int w = 0; w < s.n(); ++w) {
            int t = 0;
            while (t < s.T() && sgn(b.gamma.v[t + 1][w]) > 0 && b.gamma.v[t + 1][w] * n >= 1) ++t;
            sn.t[w] = t;
        }
        if (fam.empty() || fam.back().second.t != sn.t) fam.emplace_back(n, sn);
    }
    return fam;
}

StochasticInterval set_C(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt) {
    StochasticInterval c;
    c.inclusive = true;
    c.bound = vt.zeta;
    for (int w = 0; w < s.n(); ++w) {
        if (vt.eta_ddot.t[w] != kInf) c.bound.t[w] = vt.eta_ddot.t[w] - 1;
        if (vt.eta_dot.t[w] != kInf) c.bound.t[w] = std::min(c.bound.t[w], vt.eta_dot.t[w] - 1);
    }
    for (const auto& [n, sn] : s_family(s, b)) c.family.push_back(sn);
    // The S_n are grid-capped while the bound may be infinite; on the grid
    // the two descriptions must carve out the same set.
    for (int w = 0; w < s.n(); ++w)
        for (int t = 0; t <= s.T(); ++t) {
            bool via_family = t <= c.family.back().t[w];
            internal_check(via_family == (t <= c.bound.t[w]),
                           "C(1/gamma) must be exhausted by the S_n");
        }
    return c;
}

Proc drift_exponential(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt) {
    Proc e = const_proc(s, Rat(1));
    for (int w = 0; w < s.n(); ++w)
        for (int t = 1; t <= s.T(); ++t) {
            Rat factor(1);
            if (t <= vt.zeta.t[w]) factor = Rat(1) - b.a.delta(t, w) / b.Z.left(t, w);
            e.v[t][w] = e.v[t - 1][w] * factor;
        }
    return e;
}

Proc yyam_equation_lhs(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt,
                       const Proc& x) {
    Proc out = x;
    for (int t = 1; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w) {
            Rat inc = x.delta(t, w);
            if (t <= vt.zeta.t[w]) inc += x.left(t, w) * b.a.delta(t, w) / b.Z.left(t, w);
            out.v[t][w] = out.v[t - 1][w] + inc;
        }
    return out;
}

const Rat& MultDecomp::L_at(const FilteredSpace&, int t, int w) const {
    require(C_set.contains(t, w), ErrorKind::DecompositionDomainViolation,
            "L is undefined outside C(1/gamma)");
    return L.v[t][w];
}

MultDecomp mult_decomp(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt) {
    MultDecomp md;
    md.C_set = set_C(s, b, vt);
    md.S_family = s_family(s, b);

    Proc e = drift_exponential(s, b, vt);
    md.D_raw = e;
    for (int t = 0; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w) md.D_raw.v[t][w] = b.Z.v[0][w] * e.v[t][w];

    md.D = stop_before(md.D_raw, vt.eta_dot);
    for (int w = 0; w < s.n(); ++w)
        if (vt.eta_ddot.t[w] != kInf)
            for (int t = vt.eta_ddot.t[w]; t <= s.T(); ++t) md.D.v[t][w] = 0;

    md.L = zero_proc(s);
    md.Lhat = zero_proc(s);
    for (int w = 0; w < s.n(); ++w) {
        bool z0_zero = sgn(b.Z.v[0][w]) == 0;
        for (int t = 0; t <= s.T(); ++t) {
            if (md.C_set.contains(t, w))
                md.L.v[t][w] = z0_zero ? Rat(1) : Rat(b.Z.v[t][w] / md.D.v[t][w]);
            if (z0_zero)
                md.Lhat.v[t][w] = 1;
            else if (t < vt.zeta.t[w])
                md.Lhat.v[t][w] = md.L.v[t][w];
        }
    }

    // Decomposition identities, asserted at construction.
    for (int w = 0; w < s.n(); ++w) {
        for (int t = 0; t <= s.T(); ++t) {
            internal_check(b.Z.v[t][w] == md.Lhat.v[t][w] * md.D.v[t][w], "Z = Lhat D");
            if (md.C_set.contains(t, w))
                internal_check(b.Z.v[t][w] == md.L.v[t][w] * md.D.v[t][w], "Z = L D on C");
            Rat in_zeta = t <= vt.zeta.t[w] ? Rat(1) : Rat(0);
            internal_check(b.Z.left(t, w) == md.Lhat.left(t, w) * md.D.left(t, w) * in_zeta,
                           "Z_- = L_- D_- on [0,zeta]");
            Rat on_c = md.C_set.contains(t, w) ? Rat(1) : Rat(0);
            internal_check(b.gamma.v[t][w] == md.Lhat.left(t, w) * on_c * md.D.v[t][w],
                           "gamma = L_- 1_C D");
            if (t >= 1 && t <= vt.zeta.t[w])
                internal_check(b.a.delta(t, w) == -md.Lhat.left(t, w) * md.D.delta(t, w),
                               "da = -L_- dD on [0,zeta]");
        }
        Time dd = vt.eta_ddot.t[w];
        if (dd != kInf && dd > 0) {
            internal_check(b.a.delta(dd, w) == b.Z.left(dd, w), "da_{eta_ddot} = Z_{eta_ddot-}");
            internal_check(b.Z.left(dd, w) == -md.Lhat.left(dd, w) * md.D.delta(dd, w),
                           "Z_{eta_ddot-} = -L_- dD at eta_ddot");
        }
    }

    // Closed forms on each [0,S_n], and the reciprocal-exponential identity.
    for (const auto& [n, sn] : md.S_family) {
        for (int w = 0; w < s.n(); ++w) {
            Rat l(1), g(1);
            for (int t = 1; t <= sn.t[w]; ++t) {
                l *= Rat(1) + b.mdot.delta(t, w) / b.gamma.v[t][w];
                g *= Rat(1) + b.a.delta(t, w) / b.gamma.v[t][w];
                internal_check(md.L.v[t][w] == l, "L^{S_n} = E((1/gamma) 1_{(0,S_n]} . mdot)");
                internal_check(md.D.v[t][w] * g == b.Z.v[0][w],
                               "D^{S_n} = Z_0 / E((1/gamma) 1_{(0,S_n]} . a)");
                internal_check(e.v[t][w] * g == 1, "E(-(1/Z_-).a) E((1/gamma).a) = 1 on C");
            }
        }
    }

    // L = 1 + 1_{{Z_0>0}} (1/Z_0) E(-(1/Z_-).a)^{-1} . mdot on C.
    for (int w = 0; w < s.n(); ++w) {
        if (sgn(b.Z.v[0][w]) == 0) continue;
        Rat acc(1);
        for (int t = 1; t <= s.T(); ++t) {
            if (!md.C_set.contains(t, w)) break;
            acc += b.mdot.delta(t, w) / (b.Z.v[0][w] * e.v[t][w]);
            internal_check(md.L.v[t][w] == acc, "L integral form on C");
        }
    }
    return md;
}

EtaMartingales eta_martingales(const FilteredSpace& s, const AzemaBundle& b,
                               const VanishingTimes& vt) {
    EtaMartingales em;
    auto build = [&](const RTime& eta, Proc& d_out, Proc& n_out) {
        d_out = dual_predictable(s, indicator_from(s, eta, /*strict_pos=*/true));
        for (int t = 1; t <= s.T(); ++t)
            for (int w = 0; w < s.n(); ++w)
                internal_check(d_out.delta(t, w) < 1, "compensator jump must stay below 1");
        Proc inv = stoch_exp(proc_scale(d_out, Rat(-1)));
        n_out = zero_proc(s);
        for (int w = 0; w < s.n(); ++w)
            for (int t = 0; t <= s.T(); ++t)
                if (t < eta.t[w]) n_out.v[t][w] = Rat(1) / inv.v[t][w];
        internal_check(martingale_test(s, n_out), "compensator exponential must be a martingale");
    };
    build(vt.eta, em.d_comp, em.n);
    build(vt.eta_tilde, em.d_tilde, em.n_tilde);

    for (int w = 0; w < s.n(); ++w)
        for (int t = 0; t <= s.T(); ++t) {
            internal_check((sgn(em.n_tilde.v[t][w]) > 0) == (t < vt.eta_tilde.t[w]),
                           "{ntilde > 0} = [0, eta_tilde)");
            internal_check((sgn(em.n_tilde.left(t, w)) > 0) == (t <= vt.eta_tilde.t[w]),
                           "{ntilde_- > 0} = [0, eta_tilde]");
        }
    return em;
}

bool check_chgpas(const FilteredSpace& s, const RTime& tau, const MeasureChange& mc) {
    FilteredSpace s2 = apply_measure_change(s, mc);
    AzemaBundle b1 = azema_bundle(s, tau), b2 = azema_bundle(s2, tau);
    VanishingTimes v1 = vanishing_times(s, b1), v2 = vanishing_times(s2, b2);
    for (int t = 0; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w) {
            if ((sgn(b1.Z.v[t][w]) > 0) != (sgn(b2.Z.v[t][w]) > 0)) return false;
            if ((sgn(b1.Z.left(t, w)) > 0) != (sgn(b2.Z.left(t, w)) > 0)) return false;
            if ((sgn(b1.gamma.v[t][w]) > 0) != (sgn(b2.gamma.v[t][w]) > 0)) return false;
        }
    return v1.zeta.t == v2.zeta.t && v1.eta.t == v2.eta.t && v1.eta_ddot.t == v2.eta_ddot.t;
}

Da1Report check_Da1(const FilteredSpace& s, const RTime& tau, const RTime& sigma) {
    require(is_predictable_time(s, sigma), ErrorKind::NotPredictable, "check_Da1 needs sigma predictable");
    AzemaBundle b = azema_bundle(s, tau);
    Da1Report rep;
    rep.sigma_prime = const_time(s, kInf);
    for (int w = 0; w < s.n(); ++w) {
        Time sg = sigma.t[w];
        if (sg == kInf || sg == 0) continue;
        if (b.a.delta(sg, w) == 1) rep.sigma_prime.t[w] = sg;
    }
    for (int w = 0; w < s.n(); ++w) {
        Time sp = rep.sigma_prime.t[w];
        if (sp == kInf) continue;
        if (tau.t[w] != sp) rep.graph_in_tau = false;
        if (sgn(b.Z.v[sp][w]) != 0) rep.z_zero_at_sigma = false;
        if (b.Z.left(sp, w) != 1) rep.z_left_one_at_sigma = false;
    }
    return rep;
}

Analysis analyze(const FilteredSpace& s, const RTime& tau) {
    Analysis a;
    a.F = s;
    a.tau = tau;
    a.bundle = azema_bundle(s, tau);
    a.vt = vanishing_times(s, a.bundle);
    a.md = mult_decomp(s, a.bundle, a.vt);
    a.em = eta_martingales(s, a.bundle, a.vt);
    return a;
}

}  // namespace deflab
