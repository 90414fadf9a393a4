#include "deflab/suite.hpp"

#include <chrono>
#include <functional>
#include <json.hpp>
#include <set>

#include "deflab/azema.hpp"
#include "deflab/deflator.hpp"
#include "deflab/enlargement.hpp"
#include "deflab/inference.hpp"
#include "deflab/jump_stop.hpp"
#include "deflab/model_io.hpp"

namespace deflab {

namespace {

enum class Outcome { Pass, Fail, Skip };

struct Eval {
    Outcome outcome = Outcome::Pass;
    std::string detail;
};

Eval pass() { return {}; }
Eval fail_with(std::string detail) { return {Outcome::Fail, std::move(detail)}; }
Eval skip() { return {Outcome::Skip, {}}; }

// Everything most properties need from one model, built once.
struct Ctx {
    Model m;
    EnlargedPair pair;
    Analysis an;
};

Ctx build_ctx(const Model& m) {
    Ctx c{m, enlarge_progressively(m.space, m.tau), analyze(m.space, m.tau)};
    return c;
}

using PropertyFn = std::function<Eval(const Ctx&, gen::Rng&)>;

struct PropertyDef {
    std::string id;
    PropertyFn fn;
};

bool check(std::vector<std::string>& errs, bool cond, const std::string& what) {
    if (!cond) errs.push_back(what);
    return cond;
}

Eval from_errors(const std::vector<std::string>& errs) {
    if (errs.empty()) return pass();
    std::string joined;
    for (const auto& e : errs) {
        if (!joined.empty()) joined += "; ";
        joined += e;
    }
    return fail_with(joined);
}

// ---------------------------------------------------------------------------
// azema suite: core space, projections, calculus, and the survival analysis
// ---------------------------------------------------------------------------

Eval prop_space_roundtrip(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    const FilteredSpace& f = c.m.space;
    MeasureChange mc = gen::random_measure_change(f, rng);
    FilteredSpace changed = apply_measure_change(f, mc);
    MeasureChange inverse;
    inverse.density.assign(f.n(), Rat(1));
    for (int w = 0; w < f.n(); ++w) inverse.density[w] = Rat(1) / mc.density[w];
    Rat mean(0);
    for (int w = 0; w < f.n(); ++w) mean += inverse.density[w] * changed.prob[w];
    check(errs, mean == 1, "inverse density must renormalize");
    FilteredSpace back = apply_measure_change(changed, inverse);
    check(errs, back.prob == f.prob, "inverse measure change must restore the measure");

    RTime pt = gen::random_predictable_time(f, rng);
    check(errs, is_stopping_time(f, pt), "predictable times are stopping times");
    return from_errors(errs);
}

Eval prop_projection_identities(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    const FilteredSpace& f = c.m.space;
    Proc raw = zero_proc(f);
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w) raw.v[t][w] = rng.small_rat(3, 3);

    Proc once = optional_projection(f, raw);
    check(errs, proc_equal(optional_projection(f, once), once), "optional projection idempotent");
    check(errs, is_adapted(f, once), "optional projection lands adapted");

    // Dual predictable projection: the compensated increments have zero
    // conditional mean even for raw V, and the compensator is predictable.
    Proc vp = dual_predictable(f, raw);
    check(errs, is_predictable_proc(f, vp), "compensator is predictable");
    for (int t = 1; t <= f.T(); ++t) {
        std::vector<Rat> dv(f.n());
        for (int w = 0; w < f.n(); ++w) dv[w] = raw.delta(t, w) - vp.delta(t, w);
        std::vector<Rat> mean = cond_expect(f, dv, t - 1);
        for (int w = 0; w < f.n(); ++w)
            check(errs, sgn(mean[w]) == 0, "V - V^p must have centered increments");
    }

    // p(1_{[0,tau]}) = 1_{[0]} + 1_{(0,oo)} Z_-.
    Proc pp = predictable_projection(f, indicator_closed(f, c.m.tau));
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w) {
            Rat expect = t == 0 ? Rat(1) : c.an.bundle.Z.left(t, w);
            check(errs, pp.v[t][w] == expect, "p(1_{[0,tau]}) = 1_{[0]} + Z_- past zero");
        }

    // Doob-Meyer of the supermartingale Z: drift = a, exact and monotone.
    DoobMeyer dm = doob_meyer(f, c.an.bundle.Z);
    check(errs, proc_equal(dm.drift, c.an.bundle.a), "doob_meyer(Z).drift = a");
    check(errs, proc_equal(dm.martingale, c.an.bundle.mdot), "doob_meyer(Z).martingale = mdot");
    for (int t = 1; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w)
            check(errs, dm.drift.delta(t, w) >= 0, "supermartingale drift nondecreasing");
    return from_errors(errs);
}

Eval prop_calculus_identities(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    const FilteredSpace& f = c.m.space;
    Proc x = gen::random_adapted(f, rng);
    Proc y = gen::random_adapted(f, rng);

    // Integration by parts.
    Proc lhs = proc_mul(x, y);
    Proc rhs = proc_add(proc_add(integrate(shift_left(x), y), integrate(shift_left(y), x)),
                        bracket(x, y));
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w)
            check(errs, lhs.v[t][w] == x.v[0][w] * y.v[0][w] + rhs.v[t][w],
                  "integration by parts");

    // E(X)E(Y) = E(X + Y + [X,Y]).
    Proc ee = proc_mul(stoch_exp(x), stoch_exp(y));
    Proc e2 = stoch_exp(proc_add(proc_add(x, y), bracket(x, y)));
    check(errs, proc_equal(ee, e2), "exponential product rule");

    // Yoeurp: [B, N] is a martingale for predictable B and martingale N.
    Proc n = gen::random_martingale(f, rng);
    Proc b = zero_proc(f);
    for (int t = 1; t <= f.T(); ++t)
        for (const Block& blk : f.partitions[t - 1]) {
            Rat inc = rng.small_rat(2, 2);
            for (int w : blk) b.v[t][w] = b.v[t - 1][w] + inc;
        }
    check(errs, martingale_test(f, bracket(b, n)), "Yoeurp bracket martingale");

    // Stopping idempotence and the exact log/exp inversion.
    RTime r = gen::random_stopping_time(f, rng);
    Proc sb = stop_before(x, r);
    check(errs, proc_equal(stop_before(sb, r), sb), "stop_before idempotent");
    Proc pos = gen::random_positive_martingale(f, rng);
    Proc back = stoch_exp(stoch_log(pos));
    check(errs, proc_equal(back, pos), "stoch_exp(stoch_log(Y)) = Y");
    return from_errors(errs);
}

Eval prop_azema_structure(const Ctx& c, gen::Rng&) {
    std::vector<std::string> errs;
    const FilteredSpace& f = c.m.space;
    const AzemaBundle& b = c.an.bundle;
    const VanishingTimes& vt = c.an.vt;
    const MultDecomp& md = c.an.md;
    StochasticInterval uz = vt.union_zeta_n(f);

    for (int w = 0; w < f.n(); ++w) {
        // Disjoint graphs inside [zeta].
        int hits = (vt.eta.t[w] != kInf) + (vt.eta_dot.t[w] != kInf) + (vt.eta_ddot.t[w] != kInf);
        check(errs, hits <= 1, "eta / eta_dot / eta_ddot have disjoint graphs");
        for (const RTime* r : {&vt.eta, &vt.eta_dot, &vt.eta_ddot, &vt.eta_tilde})
            if (r->t[w] != kInf)
                check(errs, r->t[w] == vt.zeta.t[w], "vanishing refinements live on [zeta]");
        // Positivity of the left limit and the union identity.
        for (int t = 0; t <= f.T(); ++t) {
            bool zm_pos = sgn(b.Z.left(t, w)) > 0;
            bool in_union = uz.contains(t, w);
            bool z0_pos = sgn(b.Z.v[0][w]) > 0;
            check(errs, zm_pos == (z0_pos && in_union), "{Z_->0} = {Z_0>0} n U[0,zeta_n]");
            bool in_ttc = t <= vt.zeta.t[w] && t != vt.eta_dot.t[w];
            check(errs, in_union == in_ttc, "U[0,zeta_n] = [0,zeta] minus [eta_dot]");
            bool in_c = md.C_set.contains(t, w);
            bool expected_c = t <= vt.zeta.t[w] && t != vt.eta_dot.t[w] && t != vt.eta_ddot.t[w];
            check(errs, in_c == expected_c, "C = [0,zeta] minus the predictable graphs");
            check(errs, (z0_pos && in_c) == (sgn(b.gamma.v[t][w]) > 0), "{Z_0>0} n C = {gamma>0}");
        }
    }
    check(errs, is_predictable_time(f, vt.eta_dot), "eta_dot predictable");
    check(errs, is_predictable_time(f, vt.eta_ddot), "eta_ddot predictable");

    // S_n family: 1/gamma <= n on (0,S_n].
    for (const auto& [n, sn] : md.S_family)
        for (int w = 0; w < f.n(); ++w)
            for (int t = 1; t <= std::min<Time>(sn.t[w], f.T()); ++t)
                check(errs, b.gamma.v[t][w] * n >= 1, "1/gamma <= n on (0,S_n]");

    // Support of the compensator measure and positivity before tau.
    for (int w = 0; w < f.n(); ++w) {
        Time ed = vt.eta_dot.t[w];
        if (ed != kInf && ed > 0) {
            check(errs, b.mdot.delta(ed, w) == 0, "dmdot vanishes at eta_dot");
            check(errs, b.a.delta(ed, w) == 0, "da vanishes at eta_dot");
        }
        Time dd = vt.eta_ddot.t[w];
        if (dd != kInf && dd > 0)
            check(errs, b.a.delta(dd, w) == b.Z.left(dd, w) && sgn(b.a.delta(dd, w)) > 0,
                  "da_{eta_ddot} = Z_{eta_ddot-} > 0");
        for (int t = 1; t <= f.T(); ++t)
            if (!uz.contains(t, w))
                check(errs, b.a.delta(t, w) == 0, "da is carried by U[0,zeta_n]");
        Time tau = c.m.tau.t[w];
        if (tau != kInf) {
            check(errs, uz.contains(tau, w), "tau lands in U[0,zeta_n]");
            check(errs, sgn(md.Lhat.left(tau, w)) > 0, "L_{tau-} > 0 on {tau<oo}");
            if (sgn(b.Z.v[0][w]) > 0) {
                check(errs, sgn(b.Z.left(tau, w)) > 0, "Z_{tau-} > 0 on {tau<oo, Z_0>0}");
                check(errs, sgn(md.D.left(tau, w)) > 0, "D_{tau-} > 0 on {tau<oo, Z_0>0}");
            }
        }
    }

    // Lhat is a supermartingale; the published D is the redefined version.
    check(errs, supermartingale_test(f, md.Lhat), "Lhat supermartingale");
    Proc redef = stop_before(md.D_raw, vt.eta_dot);
    for (int w = 0; w < f.n(); ++w)
        for (int t = 0; t <= f.T(); ++t) {
            Rat expect = t < vt.eta_ddot.t[w] ? redef.v[t][w] : Rat(0);
            check(errs, md.D.v[t][w] == expect, "D = D_raw^{eta_dot-} 1_{[0,eta_ddot)}");
        }

    // eta lands inside C on {0<eta<oo}; n and ntilde survive their tests in
    // construction; eta-dot is empty on a finite grid (recorded, not assumed).
    for (int w = 0; w < f.n(); ++w)
        if (vt.eta.t[w] != kInf && vt.eta.t[w] > 0)
            check(errs, md.C_set.contains(vt.eta.t[w], w), "eta in C on {0<eta<oo}");

    // Positivity sets of the factors on C: {L>0} = {0} u {Z>0} and
    // {D>0} = {Z_0>0}.
    for (int w = 0; w < f.n(); ++w)
        for (int t = 0; t <= f.T(); ++t) {
            if (!md.C_set.contains(t, w)) continue;
            bool l_pos = sgn(md.L.v[t][w]) > 0;
            check(errs, l_pos == (t == 0 || sgn(b.Z.v[t][w]) > 0), "{L>0} = {0} u {Z>0} on C");
            bool d_pos = sgn(md.D.v[t][w]) > 0;
            check(errs, d_pos == (sgn(b.Z.v[0][w]) > 0), "{D>0} = {Z_0>0} on C");
        }
    return from_errors(errs);
}

Eval prop_chgpas(const Ctx& c, gen::Rng& rng) {
    MeasureChange mc = gen::random_measure_change(c.m.space, rng);
    if (!check_chgpas(c.m.space, c.m.tau, mc))
        return fail_with("vanishing structure must be measure-change invariant");
    return pass();
}

Eval prop_da1(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    RTime sigma = gen::random_predictable_time(c.m.space, rng);
    check(errs, check_Da1(c.m.space, c.m.tau, sigma).holds(),
          "Da=1 restriction must sit on [tau] with Z_-=1, Z=0");
    // Deterministic sigmas aimed at every time where the compensator jumps
    // by one, so the restriction is nonempty whenever the model allows it.
    for (int t = 1; t <= c.m.space.T(); ++t) {
        bool unit = false;
        for (int w = 0; w < c.m.space.n(); ++w)
            if (c.an.bundle.a.delta(t, w) == 1) unit = true;
        if (!unit) continue;
        Da1Report rep = check_Da1(c.m.space, c.m.tau, const_time(c.m.space, t));
        check(errs, rep.holds(), "deterministic Da=1 restriction");
        bool charged = false;
        for (int w = 0; w < c.m.space.n(); ++w)
            if (rep.sigma_prime.t[w] != kInf) charged = true;
        check(errs, charged, "unit compensator jumps must charge sigma'");
    }
    return from_errors(errs);
}

// ---------------------------------------------------------------------------
// jumpstop suite
// ---------------------------------------------------------------------------

Eval prop_jump_comp(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    const FilteredSpace& f = c.m.space;
    RTime r = gen::random_stopping_time(f, rng);
    JumpComp jc = jump_comp(f, r);
    check(errs, martingale_test(f, jc.u), "compensated jump process is a martingale");

    // Any predictable time with graph inside [R] sits inside [R_natural]:
    // build the maximal such time and compare.
    RTime sigma = const_time(f, kInf);
    for (int t = 1; t <= f.T(); ++t)
        for (const Block& blk : f.partitions[t - 1]) {
            bool all_r = true;
            for (int w : blk) all_r &= r.t[w] == t;
            if (all_r)
                for (int w : blk)
                    if (sigma.t[w] == kInf) sigma.t[w] = t;
        }
    for (int w = 0; w < f.n(); ++w)
        if (sigma.t[w] != kInf)
            check(errs, jc.R_natural.t[w] == sigma.t[w],
                  "predictable graphs inside [R] land in [R_natural]");
    return from_errors(errs);
}

Eval prop_ortho_iff(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    const FilteredSpace& f = c.m.space;
    RTime r = gen::random_stopping_time(f, rng);
    JumpComp jc = jump_comp(f, r);

    Proc x = gen::random_martingale(f, rng);
    bool stopped_mart = martingale_test(f, stop_before(x, r));
    bool orthogonal = orthogonality_test(f, x, jc.u);
    check(errs, stopped_mart == orthogonal, "X^{R-} martingale iff X orthogonal to u");

    // The orthogonalized residual hits the positive branch of the iff.
    OrthoDecomp od = ortho_decomp(f, x, r);
    Proc residual = proc_sub(x, integrate(od.H, jc.u));
    check(errs, martingale_test(f, stop_before(residual, r)),
          "orthogonal residual stays a martingale when stopped before R");
    check(errs, orthogonality_test(f, residual, jc.u), "residual orthogonal to u");
    check(errs, is_predictable_proc(f, od.K), "K predictable");
    return from_errors(errs);
}

Eval prop_ddotxi(const Ctx& c, gen::Rng& rng) {
    const FilteredSpace& f = c.m.space;
    RTime r = gen::random_stopping_time(f, rng);
    Proc y = gen::random_positive_martingale(f, rng);
    Proc v = gen::random_deflated_stopped(f, y, r, rng);
    NoJumpDeflators out = nojump_deflator_from(f, {v}, r, y);
    // Construction-time assertions carry the content; double-check the jump.
    for (int w = 0; w < f.n(); ++w)
        if (r.t[w] != kInf && r.t[w] > 0 && out.nojump.delta(r.t[w], w) != 0)
            return fail_with("no-jump deflator must have zero jump at R");
    return pass();
}

// ---------------------------------------------------------------------------
// reduction suite
// ---------------------------------------------------------------------------

Eval prop_rdps(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    const FilteredSpace& g = c.pair.G;
    Proc h = zero_proc(g);
    for (int t = 0; t <= g.T(); ++t)
        for (const Block& blk : g.partitions[t]) {
            Rat v = rat(rng.int_in(1, 5), rng.int_in(1, 3));
            for (int w : blk) h.v[t][w] = v;
        }
    Proc k = reduce_optional(c.pair, h);
    for (int t = 0; t <= g.T(); ++t)
        for (int w = 0; w < g.n(); ++w)
            if (t < c.an.vt.zeta.t[w])
                check(errs, sgn(k.v[t][w]) > 0, "optional reduction positive on [0,zeta)");

    Proc hp = zero_proc(g);
    for (int t = 0; t <= g.T(); ++t)
        for (const Block& blk : g.partitions[g.level_minus(t)]) {
            Rat v = rat(rng.int_in(1, 5), rng.int_in(1, 3));
            for (int w : blk) hp.v[t][w] = v;
        }
    Proc kp = reduce_predictable(c.pair, hp);
    for (int t = 1; t <= g.T(); ++t)
        for (int w = 0; w < g.n(); ++w)
            if (t <= c.an.vt.zeta.t[w])
                check(errs, sgn(kp.v[t][w]) > 0,
                      "predictable reduction positive on the union set minus 0");
    return from_errors(errs);
}

Eval prop_reduce_times(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    RTime u = gen::random_stopping_time(c.pair.G, rng);
    RTime t1 = reduce_stopping_time(c.pair, u);
    check(errs, is_stopping_time(c.pair.F, t1), "reduced time is an F stopping time");
    for (int w = 0; w < c.pair.F.n(); ++w)
        check(errs,
              std::min(t1.t[w], c.m.tau.t[w]) == std::min(u.t[w], c.m.tau.t[w]),
              "T ^ tau = U ^ tau");

    RTime up = gen::random_predictable_time(c.pair.G, rng);
    RTime t2 = reduce_predictable_time(c.pair, up);
    check(errs, is_predictable_time(c.pair.F, t2), "reduced time is F predictable");
    for (int w = 0; w < c.pair.F.n(); ++w)
        check(errs,
              std::min(t2.t[w], c.m.tau.t[w]) == std::min(up.t[w], c.m.tau.t[w]),
              "predictable T ^ tau = U ^ tau");
    return from_errors(errs);
}

Eval prop_redreg(const Ctx& c, gen::Rng& rng) {
    Proc x = gen::random_adapted(c.pair.G, rng);
    if (!check_redreg(c.pair, x)) return fail_with("Y_- 1_{Z_->0} must reduce X_-");
    return pass();
}

// F-side solutions of the drift equation: X = e M / Z on {Z>0} with M a
// union-set martingale vanishing at eta (built as n times an eta-compatible
// martingale).
Proc random_equation_solution(const Ctx& c, gen::Rng& rng) {
    const FilteredSpace& f = c.m.space;
    Proc base = gen::random_martingale_stopped_compatible(f, c.an.vt.eta, rng);
    Proc m = proc_mul(c.an.em.n, base);
    Proc e = drift_exponential(f, c.an.bundle, c.an.vt);
    Proc x = zero_proc(f);
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w)
            if (sgn(c.an.bundle.Z.v[t][w]) > 0)
                x.v[t][w] = e.v[t][w] * m.v[t][w] / c.an.bundle.Z.v[t][w];
    return x;
}

Eval prop_rdm_csinv_roundtrip(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    // G to F and back.
    Proc xg = gen::random_martingale_vanishing_at(c.pair.G, c.m.tau, rng);
    RdmResult rr = rdm_check(c.pair, xg);
    check(errs, rr.holds, "reduction must satisfy the drift equation");
    Proc lifted = csinv_lift(c.pair, rr.reduction);
    Proc stopped = stop_before(xg, c.m.tau);
    // On {tau = 0} the matching set [0,tau) is empty, so the reduction is
    // unconstrained there; the lift is pinned everywhere else.
    for (int w = 0; w < c.pair.F.n(); ++w) {
        if (c.m.tau.t[w] == 0) continue;
        for (int t = 0; t <= c.pair.F.T(); ++t)
            check(errs, lifted.v[t][w] == stopped.v[t][w], "lift recovers X^{tau-}");
    }

    // F to G and back.
    Proc xf = random_equation_solution(c, rng);
    Proc xg2 = csinv_lift(c.pair, xf);
    RdmResult rr2 = rdm_check(c.pair, xg2);
    check(errs, rr2.holds, "lifted process reduces back into the equation");
    for (int t = 0; t <= c.pair.F.T(); ++t)
        for (int w = 0; w < c.pair.F.n(); ++w)
            if (t < c.an.vt.zeta.t[w])
                check(errs, rr2.reduction.v[t][w] == xf.v[t][w],
                      "round trip is the identity on [0,zeta)");
    return from_errors(errs);
}

Eval prop_yyam_roundtrip(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    const FilteredSpace& f = c.m.space;
    Proc base = gen::random_martingale_stopped_compatible(f, c.an.vt.eta, rng);
    Proc m = proc_mul(c.an.em.n, base);
    Proc x = yyam_solve(f, c.an.bundle, c.an.vt, YyamDirection::Forward, m);
    Proc m2 = yyam_solve(f, c.an.bundle, c.an.vt, YyamDirection::Backward, x);
    StochasticInterval uz = c.an.vt.union_zeta_n(f);
    // The forward map multiplies by an exponential that vanishes exactly at
    // eta_ddot, so the witness is recoverable everywhere on the union set
    // except on the graph [eta_ddot] (the X-level round trip, asserted
    // inside the backward solver, is exact everywhere).
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w)
            if (uz.contains(t, w) && t != c.an.vt.eta_ddot.t[w])
                check(errs, m2.v[t][w] == m.v[t][w] - m.v[0][w],
                      "backward(forward(M)) = M - M_0 off [eta_ddot]");
    return from_errors(errs);
}

Eval prop_key_lemma(const Ctx& c, gen::Rng& rng) {
    RTime T = gen::random_predictable_time(c.pair.F, rng);
    std::vector<Rat> xi = gen::random_f_T_measurable(c.pair.F, T, rng);
    if (!key_lemma_check(c.pair, T, xi)) return fail_with("key lemma identity broken");
    return pass();
}

Eval prop_rdi(const Ctx& c, gen::Rng& rng) {
    const FilteredSpace& g = c.pair.G;
    Proc a = zero_proc(g);
    for (int t = 1; t <= g.T(); ++t)
        for (const Block& blk : g.partitions[t - 1]) {
            Rat inc = rat(rng.int_in(0, 3), rng.int_in(1, 2));
            for (int w : blk) a.v[t][w] = a.v[t - 1][w] + inc;
        }
    if (!rdi_check(c.pair, a)) return fail_with("monotone reduction of a monotone compensator");
    return pass();
}

Eval prop_jeulin_yor(const Ctx& c, gen::Rng& rng) {
    Proc x = gen::random_martingale(c.pair.F, rng);
    jeulin_yor(c.pair, x);  // asserts the compensated martingale internally
    return pass();
}

// ---------------------------------------------------------------------------
// deflator-minus suite
// ---------------------------------------------------------------------------

Eval prop_dfet(const Ctx& c, gen::Rng& rng) {
    Proc x = gen::random_martingale_stopped_compatible(c.pair.F, c.an.vt.eta, rng);
    deflator_dfet(c.pair, c.an, x);  // asserts the deflator property
    Proc m = gen::random_positive_martingale(c.pair.F, rng);
    if (!ratio_supermartingale_check(c.pair, c.an, m))
        return fail_with("M^{tau-}/L^{tau-} must be a G supermartingale");
    return pass();
}

Eval prop_arbitrage(const Ctx& c, gen::Rng&) {
    auto wit = arbitrage_witness(c.pair, c.an);
    bool eta_charged = false;
    for (int w = 0; w < c.pair.F.n(); ++w) {
        Time e = c.an.vt.eta.t[w];
        if (e != kInf && e > 0) eta_charged = true;
    }
    if (wit.has_value() != eta_charged)
        return fail_with("witness exists iff P(0<eta<oo) > 0");
    if (!wit) return pass();
    Certificate cert = g_deflator_search(c.pair, {wit->M_stopped});
    if (cert.feasible) return fail_with("the arbitrage witness must have no G deflator");
    return pass();
}

Eval prop_iff_certificate(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    std::vector<Proc> X;
    X.push_back(gen::random_martingale(c.pair.F, rng));
    if (rng.chance(1, 2)) X.push_back(gen::random_martingale(c.pair.F, rng));
    if (rng.chance(1, 3)) {
        auto wit = arbitrage_witness(c.pair, c.an);
        if (wit) X.push_back(wit->M);
    }
    Certificate f_side = certificate_search(c.pair, c.an, X);
    std::vector<Proc> stopped;
    for (const Proc& x : X) stopped.push_back(stop_before(x, c.m.tau));
    Certificate g_side = g_deflator_search(c.pair, stopped);
    check(errs, f_side.feasible == g_side.feasible,
          std::string("feasibility verdicts must agree (F-side ") +
              (f_side.feasible ? "feasible" : "infeasible") + ", G-side " +
              (g_side.feasible ? "feasible" : "infeasible") + ")");
    return from_errors(errs);
}

Eval prop_iff_whenS(const Ctx& c, gen::Rng& rng) {
    std::vector<std::string> errs;
    const FilteredSpace& f = c.pair.F;
    Proc y = gen::random_positive_martingale(f, rng);
    std::vector<Proc> S;
    Proc n1 = gen::random_martingale(f, rng);
    Proc s1 = n1;
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w) s1.v[t][w] = n1.v[t][w] / y.v[t][w];
    S.push_back(s1);
    Certificate f_side = whenS_search(c.pair, c.an, S, y);
    std::vector<Proc> stopped;
    for (const Proc& s : S) stopped.push_back(stop_before(s, c.m.tau));
    Certificate g_side = g_deflator_search(c.pair, stopped);
    check(errs, f_side.feasible == g_side.feasible, "whenS verdict must match the direct search");

    // Corollary: when S has no jump at eta the triplet (S, Y, n) qualifies.
    Proc y2 = gen::random_positive_martingale_vanishing_at(f, c.an.vt.eta, rng);
    Proc n2 = gen::random_martingale_vanishing_at(f, c.an.vt.eta, rng);
    Proc s2 = n2;
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w) s2.v[t][w] = n2.v[t][w] / y2.v[t][w];
    StochasticInterval uz = c.an.vt.union_zeta_n(f);
    check(errs, martingale_on_set_test(f, proc_mul(y2, c.an.em.n), uz),
          "Y n martingale on the union set");
    check(errs,
          martingale_on_set_test(
              f, proc_mul(stop_before(s2, c.an.vt.eta_ddot), proc_mul(y2, c.an.em.n)), uz),
          "S^{eta_ddot-} Y n martingale on the union set");
    Certificate nojump_side = whenS_search(c.pair, c.an, {s2}, y2);
    check(errs, nojump_side.feasible, "no-jump-at-eta semimartingales always deflate");
    return from_errors(errs);
}

// ---------------------------------------------------------------------------
// deflator-tau suite
// ---------------------------------------------------------------------------

Eval prop_frak_m(const Ctx& c, gen::Rng&) {
    FrakM fm = frak_m(c.pair, c.an);  // construction asserts the projections
    if (!martingale_test(c.pair.G, fm.m_frak)) return fail_with("frak_m must be a G martingale");
    return pass();
}

Eval prop_deflator_at_tau(const Ctx& c, gen::Rng& rng) {
    const FilteredSpace& f = c.pair.F;
    Proc y = gen::random_positive_martingale_vanishing_at(f, c.an.vt.eta_tilde, rng);
    Proc n = gen::random_martingale_vanishing_at(f, c.an.vt.eta_tilde, rng);
    Proc s = n;
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w) s.v[t][w] = n.v[t][w] / y.v[t][w];
    deflator_at_tau(c.pair, c.an, {s}, y);  // asserts the deflator property

    // mdist2 directly: E(frak_m) M^tau is a G martingale for martingales with
    // no jump at eta_tilde.
    FrakM fm = frak_m(c.pair, c.an);
    Proc m = gen::random_martingale_vanishing_at(f, c.an.vt.eta_tilde, rng);
    if (!martingale_test(c.pair.G, proc_mul(fm.exp_m, stop_at(m, c.m.tau))))
        return fail_with("E(frak_m) M^tau must be a G martingale");
    return pass();
}

Eval prop_puredisc(const Ctx& c, gen::Rng& rng) {
    Proc x = gen::random_martingale(c.pair.F, rng);
    PureDiscReport rep = puredisc_note(c.pair, x);
    if (!rep.continuous_part_zero) return fail_with("continuous parts must vanish");
    return pass();
}

// ---------------------------------------------------------------------------
// inference suite
// ---------------------------------------------------------------------------

Eval prop_kernel(const Ctx& c, gen::Rng&) {
    conditional_kernel(c.m.space, c.m.tau);  // asserts the disintegration
    return pass();
}

Eval prop_saturation(const Ctx& c, gen::Rng&) {
    SigmaAlg h{c.pair.F.partitions[c.pair.F.T()]};
    if (!saturation_check(c.pair.G, c.m.tau, h))
        return fail_with("F_oo must saturate under progressive enlargement");
    return pass();
}

Eval prop_findF(const Ctx& c, gen::Rng&) {
    SigmaAlg h{c.pair.F.partitions[c.pair.F.T()]};
    Kernel k = conditional_kernel(c.m.space, c.m.tau);
    bool any = false;
    for (const auto& [t, p] : k.kappa) {
        if (!condB1_check(c.pair.G, c.m.tau, h, p)) continue;
        any = true;
        InferResult res = infer_filtration(c.pair.G, c.m.tau, h, p, &c.pair.F.partitions);
        if (!res.matches_reference)
            return fail_with("recovered filtration must equal F when condB1 holds");
    }
    if (!any) return skip();
    return pass();
}

std::vector<PropertyDef> azema_properties() {
    return {
        {"space.measure_roundtrip", prop_space_roundtrip},
        {"projections.identities", prop_projection_identities},
        {"calculus.identities", prop_calculus_identities},
        {"azema.structure", prop_azema_structure},
        {"azema.chgpas", prop_chgpas},
        {"azema.Da1", prop_da1},
    };
}

std::vector<PropertyDef> jumpstop_properties() {
    return {
        {"jumpstop.compensation", prop_jump_comp},
        {"jumpstop.ortho_iff", prop_ortho_iff},
        {"jumpstop.nojump_deflator", prop_ddotxi},
    };
}

std::vector<PropertyDef> reduction_properties() {
    return {
        {"reduction.positivity", prop_rdps},
        {"reduction.times", prop_reduce_times},
        {"reduction.left_limits", prop_redreg},
        {"reduction.rdm_csinv", prop_rdm_csinv_roundtrip},
        {"reduction.yyam", prop_yyam_roundtrip},
        {"reduction.key_lemma", prop_key_lemma},
        {"reduction.rdi", prop_rdi},
        {"reduction.jeulin_yor", prop_jeulin_yor},
    };
}

std::vector<PropertyDef> deflator_minus_properties() {
    return {
        {"deflator.dfet", prop_dfet},
        {"deflator.arbitrage", prop_arbitrage},
        {"deflator.iff_certificate", prop_iff_certificate},
        {"deflator.iff_whenS", prop_iff_whenS},
    };
}

std::vector<PropertyDef> deflator_tau_properties() {
    return {
        {"deflator.frak_m", prop_frak_m},
        {"deflator.at_tau", prop_deflator_at_tau},
        {"deflator.puredisc", prop_puredisc},
    };
}

std::vector<PropertyDef> inference_properties() {
    return {
        {"inference.kernel", prop_kernel},
        {"inference.saturation", prop_saturation},
        {"inference.findF", prop_findF},
    };
}

std::vector<PropertyDef> properties_for(const std::string& suite) {
    std::vector<PropertyDef> out;
    auto extend = [&](std::vector<PropertyDef> v) {
        for (auto& p : v) out.push_back(std::move(p));
    };
    if (suite == "azema" || suite == "all") extend(azema_properties());
    if (suite == "jumpstop" || suite == "all") extend(jumpstop_properties());
    if (suite == "reduction" || suite == "all") extend(reduction_properties());
    if (suite == "deflator-minus" || suite == "all") extend(deflator_minus_properties());
    if (suite == "deflator-tau" || suite == "all") extend(deflator_tau_properties());
    if (suite == "inference" || suite == "all") extend(inference_properties());
    return out;
}

Model model_for_index(const SuiteConfig& cfg, int k) {
    if (k == 0) return fixture_m1();
    if (k == 1) return fixture_m2();
    if (k == 2) return fixture_m3();
    gen::Rng rng(cfg.seed ^ (static_cast<std::uint64_t>(k + 1) * 0x9E3779B97F4A7C15ULL));
    switch (k % 4) {
        case 0: return gen::gen_random_model(rng, cfg.sizes);
        case 1: return gen::gen_density_model(rng, cfg.sizes);
        case 2: return gen::gen_cox_model(rng, cfg.sizes).model;
        default: {
            static const gen::PathologyClass classes[] = {
                gen::PathologyClass::EtaFinite, gen::PathologyClass::EtaDdotFinite,
                gen::PathologyClass::EtaTildeFinite, gen::PathologyClass::DaEqualsOne};
            return gen::gen_pathological(rng, cfg.sizes, classes[(k / 4) % 4]);
        }
    }
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"azema", "jumpstop", "reduction", "deflator-minus", "deflator-tau", "inference",
            "all"};
}

bool is_suite_name(const std::string& name) {
    for (const auto& s : suite_names())
        if (s == name) return true;
    return false;
}

SuiteReport run_suite(const SuiteConfig& config) {
    require(is_suite_name(config.suite), ErrorKind::BadInput,
            "unknown suite: " + config.suite);
    auto start = std::chrono::steady_clock::now();
    std::vector<PropertyDef> props = properties_for(config.suite);

    SuiteReport report;
    report.suite = config.suite;
    report.seed = config.seed;
    report.models = config.fixtures_only ? 3 : config.models;
    report.properties.resize(props.size());
    for (size_t i = 0; i < props.size(); ++i) report.properties[i].property = props[i].id;

    for (int k = 0; k < report.models; ++k) {
        Model m = model_for_index(config, k);
        Ctx ctx = build_ctx(m);
        for (size_t i = 0; i < props.size(); ++i) {
            gen::Rng prop_rng(config.seed ^ (static_cast<std::uint64_t>(k) << 20) ^
                              (static_cast<std::uint64_t>(i + 1) * 0xD1B54A32D192ED03ULL));
            PropertyResult& pr = report.properties[i];
            pr.tested += 1;
            Eval ev;
            try {
                ev = props[i].fn(ctx, prop_rng);
            } catch (const std::exception& e) {
                ev = fail_with(std::string("exception: ") + e.what());
            }
            switch (ev.outcome) {
                case Outcome::Pass: pr.passed += 1; break;
                case Outcome::Skip:
                    pr.skipped += 1;
                    pr.tested -= 1;
                    break;
                case Outcome::Fail:
                    pr.failed += 1;
                    if (pr.first_counterexample.empty()) {
                        ModelFile mf;
                        mf.model = m;
                        pr.first_counterexample = ev.detail + " | model: " + model_to_json(mf, -1);
                    }
                    break;
            }
        }
    }
    report.wall_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                           std::chrono::steady_clock::now() - start)
                                           .count());
    return report;
}

std::string report_to_json(const SuiteReport& report, int indent) {
    nlohmann::json j;
    j["suite"] = report.suite;
    j["seed"] = report.seed;
    j["models"] = report.models;
    j["wall_ms"] = report.wall_ms;
    j["all_passed"] = report.all_passed();
    nlohmann::json props = nlohmann::json::array();
    for (const auto& p : report.properties) {
        nlohmann::json pj;
        pj["property"] = p.property;
        pj["tested"] = p.tested;
        pj["passed"] = p.passed;
        pj["failed"] = p.failed;
        pj["skipped_preconditions"] = p.skipped;
        pj["counterexample"] =
            p.first_counterexample.empty() ? nlohmann::json(nullptr)
                                           : nlohmann::json(p.first_counterexample);
        props.push_back(std::move(pj));
    }
    j["properties"] = std::move(props);
    return j.dump(indent);
}

}  // namespace deflab
