#include "deflab/jump_stop.hpp"

namespace deflab {

namespace {

void internal_check(bool cond, const char* what) { require(cond, ErrorKind::Internal, what); }

bool is_deflator_of(const FilteredSpace& s, const Proc& y, const std::vector<Proc>& S) {
    for (int t = 0; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w)
            if (sgn(y.v[t][w]) <= 0) return false;
    if (!martingale_test(s, y)) return false;
    for (const Proc& comp : S)
        if (!martingale_test(s, proc_mul(y, comp))) return false;
    return true;
}

}  // namespace

JumpComp jump_comp(const FilteredSpace& s, const RTime& r) {
    require(is_stopping_time(s, r), ErrorKind::NotAStoppingTime, "jump_comp");
    JumpComp jc;
    Proc ind = indicator_from(s, r, /*strict_pos=*/true);
    jc.v = dual_predictable(s, ind);
    jc.u = proc_sub(ind, jc.v);

    jc.R_natural = const_time(s, kInf);
    jc.R_flat = const_time(s, kInf);
    jc.kappa = zero_proc(s);
    for (int w = 0; w < s.n(); ++w) {
        for (int t = 1; t <= s.T(); ++t) {
            Rat dv = jc.v.delta(t, w);
            internal_check(dv <= 1, "dv must stay <= 1");
            if (dv == 1)
                internal_check(r.t[w] == t, "[R_natural] = {dv = 1}");
            else
                jc.kappa.v[t][w] = dv;
        }
        if (r.t[w] != kInf && r.t[w] > 0) {
            if (jc.v.delta(r.t[w], w) == 1)
                jc.R_natural.t[w] = r.t[w];
            else
                jc.R_flat.t[w] = r.t[w];
        }
    }
    internal_check(is_predictable_time(s, jc.R_natural), "R_natural must be predictable");

    // Compensator of the flat part charges only {dv < 1}.
    Proc flat_comp = dual_predictable(s, indicator_from(s, jc.R_flat, true));
    for (int t = 1; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w) {
            Rat dv = jc.v.delta(t, w);
            Rat expected = dv == 1 ? Rat(0) : dv;
            internal_check(flat_comp.delta(t, w) == expected,
                           "flat-part compensator = 1_{dv<1} . v");
        }
    return jc;
}

Proc K_coefficient(const FilteredSpace& s, const Proc& x, const RTime& r) {
    require_adapted(s, x, "K_coefficient input");
    Proc k = zero_proc(s);
    for (int t = 1; t <= s.T(); ++t) {
        for (const Block& blk : s.partitions[t - 1]) {
            Rat num(0), den(0);
            for (int w : blk) {
                if (r.t[w] == t) {
                    num += s.prob[w] * x.delta(t, w);
                    den += s.prob[w];
                }
            }
            if (sgn(den) > 0) {
                Rat val = num / den;
                for (int w : blk) k.v[t][w] = val;
            }
        }
    }
    return k;
}

OrthoDecomp ortho_decomp(const FilteredSpace& s, const Proc& x, const RTime& r) {
    require(martingale_test(s, x), ErrorKind::NotAMartingale, "ortho_decomp input");
    JumpComp jc = jump_comp(s, r);
    OrthoDecomp od;
    od.K = K_coefficient(s, x, r);
    od.H = od.K;
    for (int t = 0; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w)
            od.H.v[t][w] = od.K.v[t][w] / (Rat(1) - jc.kappa.v[t][w]);

    Proc residual = proc_sub(x, integrate(od.H, jc.u));
    od.Xbar = stop_before(residual, r);
    od.jump_mart = zero_proc(s);
    for (int w = 0; w < s.n(); ++w) {
        if (r.t[w] == kInf || r.t[w] == 0) continue;
        Rat jump = residual.delta(r.t[w], w);
        for (int t = r.t[w]; t <= s.T(); ++t) od.jump_mart.v[t][w] = jump;
    }

    // Exact recomposition and the orthogonality statements.
    Proc hu = integrate(od.H, jc.u);
    Proc lhs = stop_at(x, r);
    Proc rhs = proc_add(proc_add(od.Xbar, od.jump_mart), hu);
    internal_check(proc_equal(lhs, rhs), "X^R = Xbar + jump + H.u");
    internal_check(martingale_test(s, od.Xbar), "Xbar must be a martingale");
    internal_check(martingale_test(s, od.jump_mart), "jump part must be a martingale");
    internal_check(orthogonality_test(s, residual, jc.u), "X - H.u must be orthogonal to u");
    return od;
}

NoJumpDeflators nojump_deflator(const FilteredSpace& s, const std::vector<Proc>& S, const RTime& r,
                                const Proc& xi) {
    Proc y = stoch_exp(xi);
    std::vector<Proc> stopped;
    stopped.reserve(S.size());
    for (const Proc& comp : S) stopped.push_back(stop_before(comp, r));
    require(is_deflator_of(s, y, stopped), ErrorKind::NotADeflator,
            "E(xi) must deflate S^{R-}");

    JumpComp jc = jump_comp(s, r);
    Proc k = K_coefficient(s, xi, r);
    Proc h = k;
    for (int t = 0; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w) h.v[t][w] = k.v[t][w] / (Rat(1) - jc.kappa.v[t][w]);

    Proc hu = integrate(h, jc.u);
    Proc xibar = stop_before(proc_sub(xi, hu), r);

    // The drift of xi^{R-} cannot have too negative jumps: H dv < 1 throughout,
    // and the residual jumps stay above -1.
    Proc first_log = proc_add(xibar, hu);
    for (int t = 1; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w) {
            internal_check(h.v[t][w] * jc.v.delta(t, w) < 1, "H dv < 1");
            internal_check(first_log.delta(t, w) > -1, "d(xibar + H.u) > -1");
            if (r.t[w] == t)
                internal_check(h.v[t][w] * jc.u.delta(t, w) > -1, "H_R du_R > -1");
        }

    NoJumpDeflators out;
    out.first = stoch_exp(first_log);
    Proc scaled = zero_proc(s);
    for (int t = 1; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w)
            scaled.v[t][w] = scaled.v[t - 1][w] +
                             xibar.delta(t, w) / (Rat(1) - h.v[t][w] * jc.v.delta(t, w));
    out.nojump = stoch_exp(scaled);

    internal_check(is_deflator_of(s, out.first, stopped), "first construction must deflate S^{R-}");
    internal_check(is_deflator_of(s, out.nojump, stopped),
                   "no-jump construction must deflate S^{R-}");
    for (int w = 0; w < s.n(); ++w)
        if (r.t[w] != kInf && r.t[w] > 0)
            internal_check(out.nojump.delta(r.t[w], w) == 0, "dY_R = 0 for the no-jump deflator");
    return out;
}

NoJumpDeflators nojump_deflator_from(const FilteredSpace& s, const std::vector<Proc>& S,
                                     const RTime& r, const Proc& y) {
    return nojump_deflator(s, S, r, stoch_log(y));
}

}  // namespace deflab
