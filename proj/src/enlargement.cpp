#include "deflab/enlargement.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace deflab {

namespace {

void internal_check(bool cond, const char* what) { require(cond, ErrorKind::Internal, what); }

bool refines(const Partition& fine, const std::vector<int>& coarse_block_of) {
    for (const Block& blk : fine) {
        int parent = coarse_block_of[blk[0]];
        for (int w : blk)
            if (coarse_block_of[w] != parent) return false;
    }
    return true;
}

// Canonical optional reduction table before the matching check.
Proc canonical_optional(const EnlargedPair& pair, const Proc& h, const Proc& z) {
    const FilteredSpace& f = pair.F;
    Proc k = zero_proc(f);
    for (int t = 0; t <= f.T(); ++t) {
        std::vector<Rat> masked(f.n());
        for (int w = 0; w < f.n(); ++w)
            masked[w] = t < pair.tau.t[w] ? h.v[t][w] : Rat(0);
        std::vector<Rat> avg = cond_expect(f, masked, t);
        for (int w = 0; w < f.n(); ++w)
            if (sgn(z.v[t][w]) > 0) k.v[t][w] = avg[w] / z.v[t][w];
    }
    return k;
}

Proc canonical_predictable(const EnlargedPair& pair, const Proc& h, const Proc& z) {
    const FilteredSpace& f = pair.F;
    Proc k = zero_proc(f);
    for (int t = 0; t <= f.T(); ++t) {
        std::vector<Rat> masked(f.n());
        for (int w = 0; w < f.n(); ++w) {
            bool alive = t == 0 ? (pair.tau.t[w] > 0) : (t <= pair.tau.t[w]);
            masked[w] = alive ? h.v[t][w] : Rat(0);
        }
        std::vector<Rat> avg = cond_expect(f, masked, f.level_minus(t));
        for (int w = 0; w < f.n(); ++w) {
            const Rat& zm = t == 0 ? z.v[0][w] : z.v[t - 1][w];
            if (sgn(zm) > 0) k.v[t][w] = avg[w] / zm;
        }
    }
    return k;
}

void check_reduction_basis(const EnlargedPair& pair, const Proc& z) {
    const FilteredSpace& g = pair.G;
    // Optional side: each G_t-atom indicator must reduce on [0,tau).
    for (int t = 0; t <= g.T(); ++t) {
        for (const Block& blk : g.partitions[t]) {
            Proc h = zero_proc(g);
            for (int w : blk) h.v[t][w] = 1;
            Proc k = canonical_optional(pair, h, z);
            for (int w = 0; w < g.n(); ++w)
                if (t < pair.tau.t[w])
                    require(k.v[t][w] == h.v[t][w], ErrorKind::ReductionImpossible,
                            "optional reduction property fails on an atom");
        }
        // Predictable side on (0,tau].
        int level = g.level_minus(t);
        for (const Block& blk : g.partitions[level]) {
            Proc h = zero_proc(g);
            for (int w : blk) h.v[t][w] = 1;
            Proc k = canonical_predictable(pair, h, z);
            for (int w = 0; w < g.n(); ++w)
                if (t >= 1 && t <= pair.tau.t[w])
                    require(k.v[t][w] == h.v[t][w], ErrorKind::ReductionImpossible,
                            "predictable reduction property fails on an atom");
        }
    }
}

Proc survival(const EnlargedPair& pair) {
    return optional_projection(pair.F, indicator_open(pair.F, pair.tau));
}

}  // namespace

EnlargedPair enlarge_progressively(const FilteredSpace& f, const RTime& tau) {
    require(tau.t.size() == static_cast<size_t>(f.n()), ErrorKind::BadInput, "tau size mismatch");
    FilteredSpace g = f;
    for (int t = 0; t <= f.T(); ++t) {
        Partition refined;
        for (const Block& blk : f.partitions[t]) {
            std::map<Time, Block> cells;
            for (int w : blk) {
                Time level = tau.t[w] <= t ? tau.t[w] : kInf;  // {tau>t} is one cell
                cells[level].push_back(w);
            }
            for (auto& [lvl, cell] : cells) refined.push_back(std::move(cell));
        }
        g.partitions[t] = std::move(refined);
    }
    g.block_of.assign(g.partitions.size(), {});
    for (int t = 0; t <= g.T(); ++t) {
        g.block_of[t].assign(g.n(), -1);
        for (size_t b = 0; b < g.partitions[t].size(); ++b)
            for (int w : g.partitions[t][b]) g.block_of[t][w] = static_cast<int>(b);
    }
    return make_enlarged_pair(f, std::move(g), tau);
}

EnlargedPair make_enlarged_pair(FilteredSpace f, FilteredSpace g, RTime tau) {
    require(f.outcomes == g.outcomes && f.prob == g.prob && f.horizon == g.horizon,
            ErrorKind::BadInput, "enlarged pair must share outcomes, measure, and horizon");
    for (int t = 0; t <= f.T(); ++t)
        require(refines(g.partitions[t], f.block_of[t]), ErrorKind::NonRefiningFiltration,
                "G must refine F at every time");
    require(is_stopping_time(g, tau), ErrorKind::NotAStoppingTime,
            "tau must be a G stopping time");
    EnlargedPair pair{std::move(f), std::move(g), std::move(tau)};
    check_reduction_basis(pair, survival(pair));
    return pair;
}

Proc reduce_optional(const EnlargedPair& pair, const Proc& h) {
    require_adapted(pair.G, h, "reduce_optional input");
    Proc k = canonical_optional(pair, h, survival(pair));
    for (int t = 0; t <= pair.F.T(); ++t)
        for (int w = 0; w < pair.F.n(); ++w)
            if (t < pair.tau.t[w])
                require(k.v[t][w] == h.v[t][w], ErrorKind::ReductionImpossible,
                        "no F-optional reduction matches on [0,tau)");
    return k;
}

Proc reduce_predictable(const EnlargedPair& pair, const Proc& h) {
    require(is_predictable_proc(pair.G, h), ErrorKind::NotAdapted,
            "reduce_predictable needs a G-predictable input");
    Proc k = canonical_predictable(pair, h, survival(pair));
    for (int t = 1; t <= pair.F.T(); ++t)
        for (int w = 0; w < pair.F.n(); ++w)
            if (t <= pair.tau.t[w])
                require(k.v[t][w] == h.v[t][w], ErrorKind::ReductionImpossible,
                        "no F-predictable reduction matches on (0,tau]");
    return k;
}

namespace {

bool matches_on_min(const RTime& a, const RTime& b, const RTime& tau, int n) {
    for (int w = 0; w < n; ++w)
        if (std::min(a.t[w], tau.t[w]) != std::min(b.t[w], tau.t[w])) return false;
    return true;
}

// Exhaustive fallback: depth-first over stop decisions per (t, block), kept
// for hand-built pairs where the canonical construction could miss.
bool search_stopping_time(const FilteredSpace& f, const RTime& tau, const RTime& u,
                          bool predictable, RTime& out) {
    const int T = f.T();
    std::vector<Time> assigned(f.n(), kInf);
    std::function<bool(int)> go = [&](int t) -> bool {
        if (t > T) {
            RTime cand{assigned};
            if (!matches_on_min(cand, u, tau, f.n())) return false;
            if (predictable && !is_predictable_time(f, cand)) return false;
            out = cand;
            return true;
        }
        int level = predictable ? f.level_minus(t) : t;
        std::vector<int> free_blocks;
        for (size_t b = 0; b < f.partitions[level].size(); ++b) {
            const Block& blk = f.partitions[level][b];
            bool stopped = false;
            for (int w : blk)
                if (assigned[w] != kInf) stopped = true;
            if (!stopped) free_blocks.push_back(static_cast<int>(b));
        }
        std::function<bool(size_t)> choose = [&](size_t i) -> bool {
            if (i == free_blocks.size()) return go(t + 1);
            const Block& blk = f.partitions[level][free_blocks[i]];
            for (bool stop_here : {false, true}) {
                if (stop_here)
                    for (int w : blk) assigned[w] = t;
                if (choose(i + 1)) return true;
                if (stop_here)
                    for (int w : blk) assigned[w] = kInf;
            }
            return false;
        };
        return choose(0);
    };
    return go(0);
}

}  // namespace

RTime reduce_stopping_time(const EnlargedPair& pair, const RTime& u) {
    require(is_stopping_time(pair.G, u), ErrorKind::NotAStoppingTime, "reduce_stopping_time");
    const FilteredSpace& f = pair.F;
    // Canonical route: reduce the G-adapted indicator 1_{{U <= t}} and take the
    // first time its reduction equals one.
    Proc h = zero_proc(f);
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w)
            if (u.t[w] <= t) h.v[t][w] = 1;
    Proc k = canonical_optional(pair, h, survival(pair));
    RTime cand = const_time(f, kInf);
    for (int w = 0; w < f.n(); ++w)
        for (int t = 0; t <= f.T(); ++t)
            if (k.v[t][w] == 1) {
                cand.t[w] = t;
                break;
            }
    if (is_stopping_time(f, cand) && matches_on_min(cand, u, pair.tau, f.n())) return cand;
    RTime found;
    if (search_stopping_time(f, pair.tau, u, /*predictable=*/false, found)) return found;
    fail(ErrorKind::ReductionImpossible, "no F stopping time matches U up to tau");
}

RTime reduce_predictable_time(const EnlargedPair& pair, const RTime& u) {
    require(is_predictable_time(pair.G, u), ErrorKind::NotPredictable, "reduce_predictable_time");
    const FilteredSpace& f = pair.F;
    Proc h = zero_proc(f);
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w)
            if (u.t[w] <= t) h.v[t][w] = 1;
    Proc k = canonical_predictable(pair, h, survival(pair));
    RTime cand = const_time(f, kInf);
    for (int w = 0; w < f.n(); ++w) {
        // t = 0 from the F_0 blocks meeting {U=0, tau>0}; later via K.
        const Block& blk0 = f.block_at(0, w);
        bool stop0 = false;
        for (int w2 : blk0)
            if (u.t[w2] == 0 && pair.tau.t[w2] > 0) stop0 = true;
        if (stop0) {
            cand.t[w] = 0;
            continue;
        }
        for (int t = 1; t <= f.T(); ++t)
            if (k.v[t][w] == 1) {
                cand.t[w] = t;
                break;
            }
    }
    bool ok = is_stopping_time(f, cand) && is_predictable_time(f, cand) &&
              matches_on_min(cand, u, pair.tau, f.n());
    if (ok) return cand;
    RTime found;
    if (search_stopping_time(f, pair.tau, u, /*predictable=*/true, found)) return found;
    fail(ErrorKind::ReductionImpossible, "no F predictable time matches U up to tau");
}

bool check_redreg(const EnlargedPair& pair, const Proc& x) {
    require_adapted(pair.G, x, "check_redreg input");
    Proc z = survival(pair);
    Proc y = reduce_optional(pair, x);
    for (int t = 1; t <= pair.F.T(); ++t)
        for (int w = 0; w < pair.F.n(); ++w)
            if (t <= pair.tau.t[w]) {
                Rat lhs = sgn(z.left(t, w)) > 0 ? y.left(t, w) : Rat(0);
                if (lhs != x.left(t, w)) return false;
            }
    return true;
}

RdmResult rdm_check(const EnlargedPair& pair, const Proc& x) {
    require(martingale_test(pair.G, x), ErrorKind::NotAMartingale, "rdm_check input");
    for (int w = 0; w < pair.G.n(); ++w) {
        Time tw = pair.tau.t[w];
        if (tw != kInf && tw > 0)
            require(x.delta(tw, w) == 0, ErrorKind::JumpAtTau, "rdm_check needs no jump at tau");
    }
    AzemaBundle b = azema_bundle(pair.F, pair.tau);
    VanishingTimes vt = vanishing_times(pair.F, b);
    StochasticInterval set = vt.union_zeta_n(pair.F);

    RdmResult res;
    res.reduction = reduce_optional(pair, x);
    const Proc& y = res.reduction;
    Proc lhs1 = proc_add(proc_mul(y, b.Z), integrate(shift_left(y), b.a));
    Proc lhs2 = proc_add(integrate(shift_left(b.Z), y), bracket(y, b.Z));
    res.holds = martingale_on_set_test(pair.F, lhs1, set) &&
                martingale_on_set_test(pair.F, lhs2, set);
    return res;
}

Proc yyam_solve(const FilteredSpace& s, const AzemaBundle& b, const VanishingTimes& vt,
                YyamDirection direction, const Proc& input) {
    Proc e = drift_exponential(s, b, vt);
    StochasticInterval set = vt.union_zeta_n(s);

    if (direction == YyamDirection::Forward) {
        require(martingale_on_set_test(s, input, set), ErrorKind::EquationNotSatisfied,
                "forward input must be a martingale on the union set");
        Proc x = proc_mul(e, input);
        // The drift equation holds with M' = M_0 + E(-(1/Z_-).a) . M on the set.
        Proc residual = yyam_equation_lhs(s, b, vt, x);
        internal_check(martingale_on_set_test(s, residual, set), "yyam forward equation");
        return x;
    }

    const Proc& x = input;
    Proc mprime = yyam_equation_lhs(s, b, vt, x);
    require(martingale_on_set_test(s, mprime, set), ErrorKind::EquationNotSatisfied,
            "backward input must satisfy the drift equation");
    for (int w = 0; w < s.n(); ++w) {
        Time dd = vt.eta_ddot.t[w];
        if (dd != kInf) {
            require(sgn(x.v[dd][w]) == 0, ErrorKind::NonVanishingAtEtaDdot,
                    "backward input must vanish at eta_ddot");
            internal_check(mprime.delta(dd, w) == 0, "dM'_{eta_ddot} = 0");
        }
    }
    // M = E(-1_{[0,eta_ddot)} (1/Z_-).a)^{-1} . M'
    Proc m = zero_proc(s);
    for (int w = 0; w < s.n(); ++w) {
        Rat acc(1);
        for (int t = 1; t <= s.T(); ++t) {
            if (t <= vt.zeta.t[w] && t < vt.eta_ddot.t[w])
                acc *= Rat(1) - b.a.delta(t, w) / b.Z.left(t, w);
            m.v[t][w] = m.v[t - 1][w] + mprime.delta(t, w) / acc;
        }
    }
    internal_check(martingale_on_set_test(s, m, set), "recovered M must be a martingale");
    // X = E(-(1/Z_-).a) (M'_0 + M) on the union set.
    for (int w = 0; w < s.n(); ++w)
        for (int t = 0; t <= s.T(); ++t)
            if (set.contains(t, w))
                internal_check(x.v[t][w] == e.v[t][w] * (mprime.v[0][w] + m.v[t][w]),
                               "yyam backward reconstruction");
    return m;
}

Proc csinv_lift(const EnlargedPair& pair, const Proc& x) {
    AzemaBundle b = azema_bundle(pair.F, pair.tau);
    VanishingTimes vt = vanishing_times(pair.F, b);
    StochasticInterval set = vt.union_zeta_n(pair.F);
    Proc eq = proc_add(proc_mul(x, b.Z), integrate(shift_left(x), b.a));
    require(martingale_on_set_test(pair.F, eq, set), ErrorKind::EquationNotSatisfied,
            "csinv_lift input must satisfy the drift equation");
    Proc out = stop_before(x, pair.tau);
    internal_check(martingale_test(pair.G, out), "X^{tau-} must be a G martingale");
    return out;
}

Proc jeulin_yor(const EnlargedPair& pair, const Proc& x) {
    require(martingale_test(pair.F, x), ErrorKind::NotAMartingale, "jeulin_yor input");
    AzemaBundle b = azema_bundle(pair.F, pair.tau);
    Proc drift = zero_proc(pair.F);
    for (int t = 1; t <= pair.F.T(); ++t) {
        std::vector<Rat> dxm(pair.F.n());
        for (int w = 0; w < pair.F.n(); ++w) dxm[w] = x.delta(t, w) * b.m.delta(t, w);
        std::vector<Rat> mean = cond_expect(pair.F, dxm, t - 1);
        for (int w = 0; w < pair.F.n(); ++w) {
            Rat inc(0);
            if (t <= pair.tau.t[w]) inc = mean[w] / b.Z.left(t, w);
            drift.v[t][w] = drift.v[t - 1][w] + inc;
        }
    }
    internal_check(martingale_test(pair.G, proc_sub(stop_at(x, pair.tau), drift)),
                   "compensated X^tau must be a G martingale");
    return drift;
}

bool key_lemma_check(const EnlargedPair& pair, const RTime& T, const std::vector<Rat>& xi) {
    require(is_predictable_time(pair.F, T), ErrorKind::NotPredictable, "key_lemma_check");
    const FilteredSpace& f = pair.F;
    // xi must be F_T measurable: constant on F_t blocks inside {T = t}.
    for (int w = 0; w < f.n(); ++w) {
        int level = T.t[w] == kInf ? f.T() : T.t[w];
        for (int w2 : f.block_at(level, w))
            if (T.t[w2] == T.t[w])
                require(xi[w2] == xi[w], ErrorKind::BadInput, "xi must be F_T measurable");
    }
    AzemaBundle b = azema_bundle(f, pair.tau);
    for (int w = 0; w < f.n(); ++w) {
        Time tw = T.t[w];
        if (tw == kInf || pair.tau.t[w] < tw || pair.tau.t[w] <= 0) continue;
        Rat lhs;
        {
            // E[xi | G_{T-}] on {T = t}: G_{t-1}-block average.
            int level = pair.G.level_minus(tw);
            Rat num(0), den(0);
            for (int w2 : pair.G.block_at(level, w)) {
                num += xi[w2] * f.prob[w2];
                den += f.prob[w2];
            }
            lhs = num / den;
        }
        Rat rhs;
        if (tw == 0) {
            rhs = xi[w];
        } else {
            int level = f.level_minus(tw);
            Rat num(0), den(0);
            for (int w2 : f.block_at(level, w)) {
                num += xi[w2] * b.Ztilde.v[tw][w2] * f.prob[w2];
                den += f.prob[w2];
            }
            rhs = (num / den) / b.Z.left(tw, w);
        }
        if (lhs != rhs) return false;
    }
    return true;
}

bool rdi_check(const EnlargedPair& pair, const Proc& a) {
    require(is_predictable_proc(pair.G, a), ErrorKind::NotAdapted, "rdi_check input");
    for (int w = 0; w < pair.G.n(); ++w)
        require(sgn(a.v[0][w]) == 0, ErrorKind::BadInput, "rdi_check needs A_0 = 0");
    bool nondecreasing = true;
    for (int t = 1; t <= pair.G.T() && nondecreasing; ++t)
        for (int w = 0; w < pair.G.n(); ++w)
            if (a.delta(t, w) < 0) nondecreasing = false;

    Proc bproc = reduce_predictable(pair, a);
    AzemaBundle bz = azema_bundle(pair.F, pair.tau);
    VanishingTimes vt = vanishing_times(pair.F, bz);
    if (!nondecreasing) return true;  // finite variation is automatic on a finite grid
    for (int w = 0; w < pair.F.n(); ++w)
        for (int t = 1; t <= pair.F.T(); ++t)
            if (t <= vt.zeta.t[w] && bproc.delta(t, w) < 0) return false;
    return true;
}

}  // namespace deflab
