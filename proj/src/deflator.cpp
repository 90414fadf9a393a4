#include "deflab/deflator.hpp"

#include <map>
#include <utility>

namespace deflab {

namespace {

void internal_check(bool cond, const char* what) { require(cond, ErrorKind::Internal, what); }

// Lazily numbered LP variables, one per (time, block) cell of a filtration.
struct CellVars {
    LinearProgram* lp;
    const FilteredSpace* space;
    std::map<std::pair<int, int>, int> index;

    int get(int t, int block) {
        auto key = std::make_pair(t, block);
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        int v = lp->add_var();
        index.emplace(key, v);
        return v;
    }
    int at_outcome(int t, int w) { return get(t, space->block_of[t][w]); }
};

LinRow row_from_map(const std::map<int, Rat>& terms, const Rat& rhs) {
    LinRow row;
    row.rhs = rhs;
    for (const auto& [v, c] : terms)
        if (sgn(c) != 0) row.terms.emplace_back(v, c);
    return row;
}

// Shared skeleton of the F-side searches: weight = Y for the S-with-deflator
// variant, identically one otherwise. Unknown M lives on F cells.
struct FSideProgram {
    LinearProgram lp;
    CellVars vars;
    int slack = -1;
};

FSideProgram build_f_side(const EnlargedPair& pair, const Analysis& an,
                          const std::vector<Proc>& coupled, const Proc& weight) {
    const FilteredSpace& f = pair.F;
    FSideProgram prog;
    prog.vars.lp = &prog.lp;
    prog.vars.space = &f;
    prog.slack = prog.lp.add_var();
    prog.lp.objective[prog.slack] = 1;
    prog.lp.ge.push_back({{{prog.slack, Rat(-1)}}, Rat(-1)});  // slack <= 1

    const RTime& zeta = an.vt.zeta;
    auto block_in = [](const Block& blk, auto pred) {
        for (int w : blk)
            if (!pred(w)) return false;
        return true;
    };

    // Normalization M_0 = 1 per F_0 block.
    for (size_t b = 0; b < f.partitions[0].size(); ++b)
        prog.lp.eq.push_back({{{prog.vars.get(0, static_cast<int>(b)), Rat(1)}}, Rat(1)});

    // M_eta = 0 on {eta = t}.
    for (int t = 0; t <= f.T(); ++t)
        for (size_t b = 0; b < f.partitions[t].size(); ++b) {
            const Block& blk = f.partitions[t][b];
            if (block_in(blk, [&](int w) { return an.vt.eta.t[w] == t; }))
                prog.lp.eq.push_back({{{prog.vars.get(t, static_cast<int>(b)), Rat(1)}}, Rat(0)});
        }

    // weight*M and coupled_i * weight * M martingales on U_n [0, zeta_n].
    std::vector<const Proc*> factors;
    factors.push_back(nullptr);  // the weight*M equation itself
    for (const Proc& c : coupled) factors.push_back(&c);
    for (const Proc* extra : factors) {
        for (int t = 1; t <= f.T(); ++t) {
            for (const Block& blk : f.partitions[t - 1]) {
                if (!block_in(blk, [&](int w) { return zeta.t[w] >= t; })) continue;
                std::map<int, Rat> terms;
                for (int w : blk) {
                    Rat now = weight.v[t][w];
                    Rat prev = weight.v[t - 1][w];
                    if (extra) {
                        now *= extra->v[t][w];
                        prev *= extra->v[t - 1][w];
                    }
                    terms[prog.vars.at_outcome(t, w)] += f.prob[w] * now;
                    terms[prog.vars.at_outcome(t - 1, w)] -= f.prob[w] * prev;
                }
                prog.lp.eq.push_back(row_from_map(terms, Rat(0)));
            }
        }
    }

    // Strict positivity: M >= slack on every cell inside {zeta > t}; this one
    // family carries both "M > 0 on [0,zeta)" and "M_- > 0 on the union set".
    for (int t = 0; t <= f.T(); ++t)
        for (size_t b = 0; b < f.partitions[t].size(); ++b) {
            const Block& blk = f.partitions[t][b];
            if (block_in(blk, [&](int w) { return zeta.t[w] > t; }))
                prog.lp.ge.push_back({{{prog.vars.get(t, static_cast<int>(b)), Rat(1)},
                                       {prog.slack, Rat(-1)}},
                                      Rat(0)});
        }
    return prog;
}

Proc extract_cells(const FilteredSpace& s, CellVars& vars, const std::vector<Rat>& x,
                   const Rat& fallback) {
    Proc out = const_proc(s, fallback);
    for (const auto& [key, v] : vars.index) {
        auto [t, b] = key;
        for (int w : s.partitions[t][b]) out.v[t][w] = x[v];
    }
    return out;
}

// Post-processing of a feasible witness: freeze before eta_ddot on [0,zeta],
// one outside, so that {M = 0} = [eta].
Proc normalize_witness(const FilteredSpace& f, const Analysis& an, const Proc& m) {
    Proc out = stop_before(m, an.vt.eta_ddot);
    for (int w = 0; w < f.n(); ++w)
        for (int t = 0; t <= f.T(); ++t)
            if (t > an.vt.zeta.t[w]) out.v[t][w] = 1;
    for (int w = 0; w < f.n(); ++w)
        for (int t = 0; t <= f.T(); ++t)
            internal_check((sgn(out.v[t][w]) == 0) == (t == an.vt.eta.t[w]),
                           "normalized witness must vanish exactly on [eta]");
    return out;
}

Proc l_tau_minus(const EnlargedPair& pair, const Analysis& an) {
    return stop_before(an.md.Lhat, pair.tau);
}

// z = 1_{{Z_0=0}} + 1_{{Z_0>0}} E(-(1/Z_-).a)^{eta_ddot-} (M/Z)^{(eta ^ eta_ddot)-}.
Proc z_from_witness(const EnlargedPair& pair, const Analysis& an, const Proc& m) {
    const FilteredSpace& f = pair.F;
    Proc e = drift_exponential(f, an.bundle, an.vt);
    Proc z = const_proc(f, Rat(1));
    for (int w = 0; w < f.n(); ++w) {
        if (sgn(an.bundle.Z.v[0][w]) == 0) continue;
        Time cut = std::min(an.vt.eta.t[w], an.vt.eta_ddot.t[w]);
        Time cut_e = an.vt.eta_ddot.t[w];
        for (int t = 0; t <= f.T(); ++t) {
            int te = t < cut_e ? t : (cut_e > 0 ? cut_e - 1 : 0);
            int tm = t < cut ? t : (cut > 0 ? cut - 1 : 0);
            z.v[t][w] = e.v[te][w] * m.v[tm][w] / an.bundle.Z.v[tm][w];
        }
    }
    return z;
}

void verify_two_equations(const EnlargedPair& pair, const Analysis& an, const Proc& z,
                          const std::vector<Proc>& X) {
    const FilteredSpace& f = pair.F;
    StochasticInterval set = an.vt.union_zeta_n(f);
    Proc zZ = proc_mul(z, an.bundle.Z);
    Proc eq1 = proc_add(zZ, integrate(shift_left(z), an.bundle.a));
    internal_check(martingale_on_set_test(f, eq1, set), "zZ + z_-.a martingale on the union set");
    for (const Proc& x : X)
        internal_check(martingale_on_set_test(f, bracket(x, zZ), set),
                       "[X, zZ] martingale on the union set");
    for (int w = 0; w < f.n(); ++w)
        for (int t = 0; t <= f.T(); ++t) {
            if (t < an.vt.zeta.t[w])
                internal_check(sgn(z.v[t][w]) > 0, "z > 0 on [0,zeta)");
            if (t <= an.vt.zeta.t[w])
                internal_check(sgn(z.left(t, w)) > 0, "z_- > 0 on the union set");
        }
}

}  // namespace

bool is_deflator(const FilteredSpace& s, const Proc& y, const std::vector<Proc>& S) {
    for (int t = 0; t <= s.T(); ++t)
        for (int w = 0; w < s.n(); ++w)
            if (sgn(y.v[t][w]) <= 0) return false;
    if (!martingale_test(s, y)) return false;
    for (const Proc& comp : S)
        if (!martingale_test(s, proc_mul(y, comp))) return false;
    return true;
}

Proc deflator_dfet(const EnlargedPair& pair, const Analysis& an, const Proc& x) {
    require(martingale_test(pair.F, x), ErrorKind::NotAMartingale, "deflator_dfet input");
    require(martingale_test(pair.F, stop_before(x, an.vt.eta)), ErrorKind::EtaStopFails,
            "X^{eta-} must remain a martingale");
    Proc n_stop = stop_before(an.em.n, pair.tau);
    Proc l_stop = l_tau_minus(pair, an);
    Proc out = n_stop;
    for (int t = 0; t <= pair.F.T(); ++t)
        for (int w = 0; w < pair.F.n(); ++w) out.v[t][w] = n_stop.v[t][w] / l_stop.v[t][w];
    internal_check(is_deflator(pair.G, out, {stop_before(x, pair.tau)}),
                   "n^{tau-}/L^{tau-} must deflate X^{tau-}");
    return out;
}

std::optional<ArbitrageWitness> arbitrage_witness(const EnlargedPair& pair, const Analysis& an) {
    const FilteredSpace& f = pair.F;
    bool eta_charged = false;
    for (int w = 0; w < f.n(); ++w)
        if (an.vt.eta.t[w] != kInf && an.vt.eta.t[w] > 0) eta_charged = true;
    if (!eta_charged) return std::nullopt;

    ArbitrageWitness wit;
    wit.M = proc_sub(indicator_from(f, an.vt.eta, true), an.em.d_comp);
    internal_check(martingale_test(f, wit.M), "witness must be an F martingale");
    wit.M_stopped = stop_before(wit.M, pair.tau);

    Rat expected(0);
    for (int w = 0; w < f.n(); ++w) {
        Time e = an.vt.eta.t[w];
        if (e != kInf && e > 0) expected -= f.prob[w] * an.bundle.gamma.v[e][w];
    }
    wit.terminal_mean = expectation(f, wit.M_stopped.v[f.T()]);
    internal_check(wit.terminal_mean == expected,
                   "E[M^{tau-}_T] = -E[gamma_eta 1_{{0<eta<oo}}]");
    internal_check(sgn(wit.terminal_mean) < 0, "witness terminal mean must be negative");
    for (int t = 1; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w)
            internal_check(wit.M_stopped.delta(t, w) <= 0, "witness must be nonincreasing");
    internal_check(is_adapted(pair.G, wit.M_stopped), "witness must be G adapted");
    return wit;
}

bool ratio_supermartingale_check(const EnlargedPair& pair, const Analysis& an, const Proc& m) {
    require(martingale_test(pair.F, m), ErrorKind::NotAMartingale,
            "ratio_supermartingale_check input");
    for (int t = 0; t <= pair.F.T(); ++t)
        for (int w = 0; w < pair.F.n(); ++w)
            require(sgn(m.v[t][w]) >= 0, ErrorKind::BadInput, "input must be nonnegative");
    Proc num = stop_before(m, pair.tau);
    Proc den = l_tau_minus(pair, an);
    Proc ratio = num;
    for (int t = 0; t <= pair.F.T(); ++t)
        for (int w = 0; w < pair.F.n(); ++w) ratio.v[t][w] = num.v[t][w] / den.v[t][w];
    return supermartingale_test(pair.G, ratio);
}

Certificate certificate_search(const EnlargedPair& pair, const Analysis& an,
                               const std::vector<Proc>& X) {
    for (const Proc& x : X)
        require(martingale_test(pair.F, x), ErrorKind::NotAMartingale, "certificate_search input");

    std::vector<Proc> coupled;
    coupled.reserve(X.size());
    for (const Proc& x : X) coupled.push_back(stop_before(x, an.vt.eta_ddot));

    FSideProgram prog = build_f_side(pair, an, coupled, const_proc(pair.F, Rat(1)));
    LpSolution sol = solve_lp(prog.lp);

    Certificate cert;
    if (sol.status != LpStatus::Optimal) return cert;
    cert.slack = sol.value;
    cert.feasible = sgn(sol.value) > 0;
    if (!cert.feasible) return cert;

    Proc m_raw = extract_cells(pair.F, prog.vars, sol.x, Rat(1));
    cert.M = normalize_witness(pair.F, an, m_raw);
    cert.z = z_from_witness(pair, an, cert.M);
    verify_two_equations(pair, an, cert.z, X);

    cert.Phi = stop_before(cert.z, pair.tau);
    // The closed form of the deflator must agree with z^{tau-} cell by cell.
    Proc l_stop = l_tau_minus(pair, an);
    Proc m_stop = stop_before(cert.M, pair.tau);
    std::vector<Proc> x_stopped;
    for (const Proc& x : X) x_stopped.push_back(stop_before(x, pair.tau));
    for (int t = 0; t <= pair.F.T(); ++t)
        for (int w = 0; w < pair.F.n(); ++w) {
            const Rat& z0 = an.bundle.Z.v[0][w];
            Rat closed = sgn(z0) == 0 ? Rat(1)
                                      : Rat(m_stop.v[t][w] / (z0 * l_stop.v[t][w]));
            internal_check(cert.Phi.v[t][w] == closed, "Phi = M^{tau-}/(Z_0 L^{tau-})");
        }
    internal_check(is_deflator(pair.G, cert.Phi, x_stopped), "Phi must deflate X^{tau-}");
    return cert;
}

Certificate g_deflator_search(const EnlargedPair& pair, const std::vector<Proc>& S_G) {
    const FilteredSpace& g = pair.G;
    for (const Proc& s : S_G) require_adapted(g, s, "g_deflator_search input");

    LinearProgram lp;
    CellVars vars{&lp, &g, {}};
    int slack = lp.add_var();
    lp.objective[slack] = 1;
    lp.ge.push_back({{{slack, Rat(-1)}}, Rat(-1)});

    for (size_t b = 0; b < g.partitions[0].size(); ++b)
        lp.eq.push_back({{{vars.get(0, static_cast<int>(b)), Rat(1)}}, Rat(1)});

    std::vector<const Proc*> factors;
    factors.push_back(nullptr);
    for (const Proc& s : S_G) factors.push_back(&s);
    for (const Proc* extra : factors)
        for (int t = 1; t <= g.T(); ++t)
            for (const Block& blk : g.partitions[t - 1]) {
                std::map<int, Rat> terms;
                for (int w : blk) {
                    Rat now(1), prev(1);
                    if (extra) {
                        now = extra->v[t][w];
                        prev = extra->v[t - 1][w];
                    }
                    terms[vars.at_outcome(t, w)] += g.prob[w] * now;
                    terms[vars.at_outcome(t - 1, w)] -= g.prob[w] * prev;
                }
                lp.eq.push_back(row_from_map(terms, Rat(0)));
            }

    for (int t = 0; t <= g.T(); ++t)
        for (size_t b = 0; b < g.partitions[t].size(); ++b)
            lp.ge.push_back(
                {{{vars.get(t, static_cast<int>(b)), Rat(1)}, {slack, Rat(-1)}}, Rat(0)});

    LpSolution sol = solve_lp(lp);
    Certificate cert;
    if (sol.status != LpStatus::Optimal) return cert;
    cert.slack = sol.value;
    cert.feasible = sgn(sol.value) > 0;
    if (cert.feasible) {
        cert.Phi = extract_cells(g, vars, sol.x, Rat(1));
        internal_check(is_deflator(g, cert.Phi, S_G), "search output must be a deflator");
    }
    return cert;
}

Certificate whenS_search(const EnlargedPair& pair, const Analysis& an, const std::vector<Proc>& S,
                         const Proc& y) {
    require(is_deflator(pair.F, y, S), ErrorKind::NotADeflator, "whenS_search needs an F deflator");

    std::vector<Proc> coupled;
    coupled.reserve(S.size());
    for (const Proc& s : S) coupled.push_back(stop_before(s, an.vt.eta_ddot));

    FSideProgram prog = build_f_side(pair, an, coupled, y);
    LpSolution sol = solve_lp(prog.lp);

    Certificate cert;
    if (sol.status != LpStatus::Optimal) return cert;
    cert.slack = sol.value;
    cert.feasible = sgn(sol.value) > 0;
    if (!cert.feasible) return cert;

    Proc m_raw = extract_cells(pair.F, prog.vars, sol.x, Rat(1));
    cert.M = normalize_witness(pair.F, an, m_raw);
    Proc ym = proc_mul(y, cert.M);
    cert.z = z_from_witness(pair, an, ym);

    cert.Phi = stop_before(cert.z, pair.tau);
    std::vector<Proc> s_stopped;
    for (const Proc& s : S) s_stopped.push_back(stop_before(s, pair.tau));
    internal_check(is_deflator(pair.G, cert.Phi, s_stopped), "Phi must deflate S^{tau-}");
    return cert;
}

FrakM frak_m(const EnlargedPair& pair, const Analysis& an) {
    const FilteredSpace& f = pair.F;
    FrakM fm;
    fm.m_frak = zero_proc(f);
    for (int t = 1; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w) {
            Rat jump(0);
            if (t <= pair.tau.t[w]) {
                const Rat& zl = an.bundle.Z.left(t, w);
                const Rat& nt = an.em.n_tilde.v[t][w];
                const Rat& nl = an.em.n_tilde.left(t, w);
                const Rat& ztl = an.bundle.Ztilde.v[t][w];
                jump = zl * nt / (nl * ztl) - 1;
                internal_check(jump > -1, "frak_m jumps must stay above -1");
            }
            fm.m_frak.v[t][w] = fm.m_frak.v[t - 1][w] + jump;
        }

    // The G-predictable projection of the jump process vanishes block by
    // block; that is exactly the G martingale property here.
    for (int t = 1; t <= f.T(); ++t)
        for (const Block& blk : pair.G.partitions[t - 1]) {
            Rat mean(0);
            for (int w : blk) mean += f.prob[w] * fm.m_frak.delta(t, w);
            internal_check(sgn(mean) == 0, "G-predictable projection of frak_m jumps must vanish");
        }
    fm.exp_m = stoch_exp(fm.m_frak);
    for (int t = 0; t <= f.T(); ++t)
        for (int w = 0; w < f.n(); ++w)
            internal_check(sgn(fm.exp_m.v[t][w]) > 0, "E(frak_m) must be strictly positive");
    return fm;
}

Proc deflator_at_tau(const EnlargedPair& pair, const Analysis& an, const std::vector<Proc>& S,
                     const Proc& y) {
    require(is_deflator(pair.F, y, S), ErrorKind::NotADeflator, "deflator_at_tau needs an F deflator");
    for (int w = 0; w < pair.F.n(); ++w) {
        Time e = an.vt.eta_tilde.t[w];
        if (e == kInf || e == 0) continue;
        require(y.delta(e, w) == 0, ErrorKind::JumpAtEtaTilde, "Y must not jump at eta_tilde");
        for (const Proc& s : S)
            require(s.delta(e, w) == 0, ErrorKind::JumpAtEtaTilde, "S must not jump at eta_tilde");
    }
    FrakM fm = frak_m(pair, an);
    Proc out = proc_mul(stop_at(y, pair.tau), fm.exp_m);
    std::vector<Proc> s_stopped;
    for (const Proc& s : S) s_stopped.push_back(stop_at(s, pair.tau));
    internal_check(is_deflator(pair.G, out, s_stopped), "Y^tau E(frak_m) must deflate S^tau");
    return out;
}

PureDiscReport puredisc_note(const EnlargedPair& pair, const Proc& x) {
    require(martingale_test(pair.F, x), ErrorKind::NotAMartingale, "puredisc_note input");
    PureDiscReport rep;
    // On a finite grid every martingale equals its initial value plus the sum
    // of its jumps, so the continuous part of the G martingale part of X^tau
    // is identically zero; asserted for traceability.
    DoobMeyer dm = doob_meyer(pair.G, stop_at(x, pair.tau));
    Proc jumps = zero_proc(pair.G);
    for (int t = 1; t <= pair.G.T(); ++t)
        for (int w = 0; w < pair.G.n(); ++w)
            jumps.v[t][w] = jumps.v[t - 1][w] + dm.martingale.delta(t, w);
    for (int t = 0; t <= pair.G.T(); ++t)
        for (int w = 0; w < pair.G.n(); ++w)
            rep.continuous_part_zero &=
                dm.martingale.v[t][w] == dm.martingale.v[0][w] + jumps.v[t][w];
    rep.note = "discrete-grid martingales are purely discontinuous; continuous part is zero";
    return rep;
}

}  // namespace deflab
