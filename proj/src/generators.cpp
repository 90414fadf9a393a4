#include "deflab/generators.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "deflab/azema.hpp"

namespace deflab::gen {

namespace {

// Random refining partition sequence on {0..n-1}: F_0 trivial, each step
// splits some blocks.
std::vector<Partition> random_tree(Rng& rng, int n, int T) {
    std::vector<Partition> parts;
    Partition cur{Block{}};
    for (int w = 0; w < n; ++w) cur[0].push_back(w);
    parts.push_back(cur);
    for (int t = 1; t <= T; ++t) {
        Partition next;
        for (const Block& blk : cur) {
            if (blk.size() == 1 || rng.chance(1, 3)) {
                next.push_back(blk);
                continue;
            }
            long pieces = rng.int_in(2, static_cast<long>(blk.size()));
            std::map<long, Block> cells;
            for (size_t i = 0; i < blk.size(); ++i) cells[i < static_cast<size_t>(pieces) ? static_cast<long>(i) : rng.below(pieces)].push_back(blk[i]);
            for (auto& [k, cell] : cells) {
                std::sort(cell.begin(), cell.end());
                next.push_back(std::move(cell));
            }
        }
        parts.push_back(next);
        cur = parts.back();
    }
    return parts;
}

std::vector<Rat> random_probs(Rng& rng, int n) {
    std::vector<Rat> probs(n);
    Rat total(0);
    for (int w = 0; w < n; ++w) {
        probs[w] = rat(rng.int_in(1, 9));
        total += probs[w];
    }
    for (int w = 0; w < n; ++w) probs[w] /= total;
    return probs;
}

RTime random_time(Rng& rng, const FilteredSpace& s) {
    RTime tau;
    tau.t.assign(s.n(), kInf);
    for (int w = 0; w < s.n(); ++w) {
        long pick = rng.below(s.T() + 3);  // two extra slots for infinity
        tau.t[w] = pick <= s.T() ? static_cast<Time>(pick) : kInf;
    }
    return tau;
}

// Random exact solution of the homogeneous system rows * x = 0: Gauss over
// the rationals, free coordinates drawn small.
std::vector<Rat> nullspace_sample(std::vector<std::vector<Rat>> rows, int ncols, Rng& rng) {
    int nrows = static_cast<int>(rows.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
        int sel = -1;
        for (int i = r; i < nrows; ++i)
            if (sgn(rows[i][c]) != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[r], rows[sel]);
        Rat piv = rows[r][c];
        for (int j = c; j < ncols; ++j) rows[r][j] /= piv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || sgn(rows[i][c]) == 0) continue;
            Rat f = rows[i][c];
            for (int j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<Rat> x(ncols, Rat(0));
    for (int c = 0; c < ncols; ++c)
        if (!is_pivot[c]) x[c] = rng.small_rat(2, 3);
    for (int i = static_cast<int>(pivot_col.size()) - 1; i >= 0; --i) {
        int c = pivot_col[i];
        Rat acc(0);
        for (int j = c + 1; j < ncols; ++j) acc += rows[i][j] * x[j];
        x[c] = -acc;
    }
    return x;
}

// Martingale increments per parent block subject to extra per-child linear
// constraints: each constraint row is a vector of weights over the children.
Proc constrained_martingale(const FilteredSpace& s, Rng& rng,
                            const std::function<std::vector<std::vector<Rat>>(
                                int t, const std::vector<int>& child_blocks)>& extra_rows,
                            bool multiplicative) {
    Proc x = zero_proc(s);
    for (const Block& blk : s.partitions[0]) {
        Rat v0 = multiplicative ? Rat(1) : rng.small_rat(2, 2);
        for (int w : blk) x.v[0][w] = v0;
    }
    for (int t = 1; t <= s.T(); ++t) {
        for (const Block& parent : s.partitions[t - 1]) {
            std::vector<int> children;
            {
                std::set<int> seen;
                for (int w : parent) seen.insert(s.block_of[t][w]);
                children.assign(seen.begin(), seen.end());
            }
            int k = static_cast<int>(children.size());
            std::vector<std::vector<Rat>> rows;
            std::vector<Rat> mean_row(k);
            for (int i = 0; i < k; ++i) mean_row[i] = s.block_mass(t, children[i]);
            rows.push_back(mean_row);
            for (auto& row : extra_rows(t, children)) rows.push_back(std::move(row));
            std::vector<Rat> delta = nullspace_sample(std::move(rows), k, rng);
            if (multiplicative) {
                // Scale into (-1/2, 1/2) so 1 + delta stays positive.
                Rat max_abs(0);
                for (const Rat& d : delta)
                    if (abs(d) > max_abs) max_abs = abs(d);
                if (max_abs >= Rat(1, 2)) {
                    Rat scale = Rat(1, 3) / max_abs;
                    for (Rat& d : delta) d *= scale;
                }
            }
            for (int i = 0; i < k; ++i)
                for (int w : s.partitions[t][children[i]]) {
                    Rat prev = x.v[t - 1][w];
                    x.v[t][w] = multiplicative ? Rat(prev * (Rat(1) + delta[i]))
                                               : Rat(prev + delta[i]);
                }
        }
    }
    return x;
}

std::vector<std::vector<Rat>> no_extra_rows(int, const std::vector<int>&) { return {}; }

}  // namespace

const char* pathology_name(PathologyClass c) {
    switch (c) {
        case PathologyClass::EtaFinite: return "eta_finite";
        case PathologyClass::EtaDdotFinite: return "eta_ddot_finite";
        case PathologyClass::EtaDotFinite: return "eta_dot_finite";
        case PathologyClass::EtaTildeFinite: return "eta_tilde_finite";
        case PathologyClass::DaEqualsOne: return "Da_equals_1";
    }
    return "unknown";
}

PathologyClass pathology_from_name(const std::string& name) {
    if (name == "eta_finite") return PathologyClass::EtaFinite;
    if (name == "eta_ddot_finite") return PathologyClass::EtaDdotFinite;
    if (name == "eta_dot_finite") return PathologyClass::EtaDotFinite;
    if (name == "eta_tilde_finite") return PathologyClass::EtaTildeFinite;
    if (name == "Da_equals_1") return PathologyClass::DaEqualsOne;
    fail(ErrorKind::BadInput, "unknown pathology class: " + name);
}

Model gen_random_model(Rng& rng, const GenSizes& sizes) {
    int n = static_cast<int>(rng.int_in(2, sizes.max_outcomes));
    int T = static_cast<int>(rng.int_in(1, sizes.max_horizon));
    std::vector<std::string> names;
    for (int w = 0; w < n; ++w) names.push_back("w" + std::to_string(w));
    FilteredSpace s = build_space(std::move(names), random_probs(rng, n), T, random_tree(rng, n, T));
    RTime tau = random_time(rng, s);
    return {std::move(s), std::move(tau), "random"};
}

Model gen_density_model(Rng& rng, const GenSizes& sizes) {
    int levels = static_cast<int>(rng.int_in(2, 3));
    int branches = std::max(2, sizes.max_outcomes / levels);
    branches = static_cast<int>(rng.int_in(2, branches));
    int T = static_cast<int>(rng.int_in(1, sizes.max_horizon));

    // Level values: distinct times, possibly including infinity.
    std::vector<Time> level_time;
    {
        std::set<Time> chosen;
        while (static_cast<int>(chosen.size()) < levels) {
            long pick = rng.below(T + 2);
            chosen.insert(pick <= T ? static_cast<Time>(pick) : kInf);
        }
        level_time.assign(chosen.begin(), chosen.end());
    }

    std::vector<Partition> branch_tree = random_tree(rng, branches, T);
    int n = branches * levels;
    auto outcome = [&](int a, int j) { return a * levels + j; };

    std::vector<Partition> parts;
    for (const Partition& bp : branch_tree) {
        Partition p;
        for (const Block& blk : bp) {
            Block big;
            for (int a : blk)
                for (int j = 0; j < levels; ++j) big.push_back(outcome(a, j));
            std::sort(big.begin(), big.end());
            p.push_back(std::move(big));
        }
        parts.push_back(std::move(p));
    }

    std::vector<std::string> names(n);
    for (int a = 0; a < branches; ++a)
        for (int j = 0; j < levels; ++j)
            names[outcome(a, j)] = "b" + std::to_string(a) + "s" + std::to_string(j);
    FilteredSpace s = build_space(std::move(names), random_probs(rng, n), T, std::move(parts));
    RTime tau;
    tau.t.assign(n, kInf);
    for (int a = 0; a < branches; ++a)
        for (int j = 0; j < levels; ++j) tau.t[outcome(a, j)] = level_time[j];
    return {std::move(s), std::move(tau), "density"};
}

CoxModel gen_cox_model(Rng& rng, const GenSizes& sizes) {
    int thresholds = static_cast<int>(rng.int_in(2, 3));
    int branches = std::max(2, sizes.max_outcomes / thresholds);
    branches = static_cast<int>(rng.int_in(2, branches));
    int T = static_cast<int>(rng.int_in(1, sizes.max_horizon));

    std::vector<Partition> branch_tree = random_tree(rng, branches, T);
    // Adapted nondecreasing integer barrier on the branch space.
    std::vector<std::vector<Rat>> bar(T + 1, std::vector<Rat>(branches, Rat(0)));
    for (int t = 1; t <= T; ++t)
        for (const Block& blk : branch_tree[t]) {
            Rat inc = rat(rng.int_in(0, 2));
            for (int a : blk) bar[t][a] = bar[t - 1][a] + inc;
        }

    std::vector<Rat> thr_values;
    for (int j = 0; j < thresholds; ++j) thr_values.push_back(rat(rng.int_in(0, 2 * T)));
    std::sort(thr_values.begin(), thr_values.end());
    thr_values.erase(std::unique(thr_values.begin(), thr_values.end()), thr_values.end());
    thresholds = static_cast<int>(thr_values.size());

    int n = branches * thresholds;
    auto outcome = [&](int a, int j) { return a * thresholds + j; };
    std::vector<Partition> parts;
    for (const Partition& bp : branch_tree) {
        Partition p;
        for (const Block& blk : bp) {
            Block big;
            for (int a : blk)
                for (int j = 0; j < thresholds; ++j) big.push_back(outcome(a, j));
            std::sort(big.begin(), big.end());
            p.push_back(std::move(big));
        }
        parts.push_back(std::move(p));
    }
    std::vector<std::string> names(n);
    for (int a = 0; a < branches; ++a)
        for (int j = 0; j < thresholds; ++j)
            names[outcome(a, j)] = "b" + std::to_string(a) + "x" + std::to_string(j);

    // The threshold must be independent of F_oo: product probabilities.
    std::vector<Rat> branch_p = random_probs(rng, branches);
    std::vector<Rat> thr_p = random_probs(rng, thresholds);
    std::vector<Rat> probs(n);
    for (int a = 0; a < branches; ++a)
        for (int j = 0; j < thresholds; ++j) probs[outcome(a, j)] = branch_p[a] * thr_p[j];

    CoxModel cm;
    FilteredSpace s = build_space(std::move(names), std::move(probs), T, std::move(parts));
    cm.model.space = std::move(s);
    cm.model.id = "cox";
    cm.model.tau.t.assign(n, kInf);
    cm.barrier = zero_proc(cm.model.space);
    cm.threshold.assign(n, Rat(0));
    for (int a = 0; a < branches; ++a)
        for (int j = 0; j < thresholds; ++j) {
            int w = outcome(a, j);
            cm.threshold[w] = thr_values[j];
            for (int t = 0; t <= T; ++t) cm.barrier.v[t][w] = bar[t][a];
            for (int t = 1; t <= T; ++t)
                if (bar[t][a] > thr_values[j]) {
                    cm.model.tau.t[w] = t;
                    break;
                }
        }
    for (int j = 0; j < thresholds; ++j) {
        Rat mass(0);
        for (int a = 0; a < branches; ++a) mass += cm.model.space.prob[outcome(a, j)];
        cm.threshold_law.emplace_back(thr_values[j], mass);
    }
    return cm;
}

namespace {

bool realizes(const Model& m, PathologyClass cls) {
    AzemaBundle b = azema_bundle(m.space, m.tau);
    VanishingTimes vt = vanishing_times(m.space, b);
    auto charged = [&](const RTime& r) {
        for (int w = 0; w < m.space.n(); ++w)
            if (r.t[w] != kInf && r.t[w] > 0) return true;
        return false;
    };
    switch (cls) {
        case PathologyClass::EtaFinite: return charged(vt.eta);
        case PathologyClass::EtaDdotFinite: return charged(vt.eta_ddot);
        case PathologyClass::EtaDotFinite: return charged(vt.eta_dot);
        case PathologyClass::EtaTildeFinite: return charged(vt.eta_tilde);
        case PathologyClass::DaEqualsOne: {
            for (int t = 1; t <= m.space.T(); ++t)
                for (int w = 0; w < m.space.n(); ++w)
                    if (b.a.delta(t, w) == 1) return true;
            return false;
        }
    }
    return false;
}

// Surgery biasing a random model toward the requested class; certification
// stays with the vanishing-time classification.
Model biased_candidate(Rng& rng, const GenSizes& sizes, PathologyClass cls) {
    Model m = gen_random_model(rng, sizes);
    FilteredSpace& s = m.space;
    int T = s.T();
    int t0 = static_cast<int>(rng.int_in(1, T));
    switch (cls) {
        case PathologyClass::EtaFinite: {
            // Kill one child of a multi-child block, keep a sibling alive.
            for (const Block& parent : s.partitions[t0 - 1]) {
                std::set<int> kids;
                for (int w : parent) kids.insert(s.block_of[t0][w]);
                if (kids.size() < 2) continue;
                auto it = kids.begin();
                for (int w : s.partitions[t0][*it]) m.tau.t[w] = t0;
                ++it;
                for (int w : s.partitions[t0][*it]) m.tau.t[w] = kInf;
                break;
            }
            break;
        }
        case PathologyClass::EtaDdotFinite:
        case PathologyClass::DaEqualsOne: {
            const Block& parent = s.partitions[t0 - 1][rng.below(
                static_cast<long>(s.partitions[t0 - 1].size()))];
            for (int w : parent) m.tau.t[w] = t0;
            break;
        }
        case PathologyClass::EtaTildeFinite: {
            // Reveal an already-dead child at t0: tau < t0 on one child of a
            // mixed block, alive sibling, filtration refined by the death set.
            for (const Block& parent : s.partitions[t0 - 1]) {
                std::set<int> kids;
                for (int w : parent) kids.insert(s.block_of[t0][w]);
                if (kids.size() < 2) continue;
                auto it = kids.begin();
                for (int w : s.partitions[t0][*it]) m.tau.t[w] = t0 - 1;
                ++it;
                for (int w : s.partitions[t0][*it]) m.tau.t[w] = kInf;
                break;
            }
            break;
        }
        case PathologyClass::EtaDotFinite:
            break;
    }
    return m;
}

}  // namespace

Model gen_pathological(Rng& rng, const GenSizes& sizes, PathologyClass cls) {
    GenSizes cur = sizes;
    for (int round = 0; round < 3; ++round) {
        for (int attempt = 0; attempt < 200; ++attempt) {
            Model m = biased_candidate(rng, cur, cls);
            if (realizes(m, cls)) {
                m.id = std::string("pathological:") + pathology_name(cls);
                return m;
            }
        }
        cur.max_outcomes = std::min(cur.max_outcomes + 2, 12);
        cur.max_horizon = std::min(cur.max_horizon + 1, 6);
    }
    fail(ErrorKind::UnrealizableClass,
         std::string(pathology_name(cls)) +
             " not realized within the size budget (the continuous-vanishing class is empty on "
             "a finite grid)");
}

Model gen_density_model(std::uint64_t seed, const GenSizes& sizes) {
    Rng rng(seed);
    return gen_density_model(rng, sizes);
}
CoxModel gen_cox_model(std::uint64_t seed, const GenSizes& sizes) {
    Rng rng(seed);
    return gen_cox_model(rng, sizes);
}
Model gen_pathological(std::uint64_t seed, const GenSizes& sizes, PathologyClass cls) {
    Rng rng(seed);
    return gen_pathological(rng, sizes, cls);
}

Proc random_adapted(const FilteredSpace& s, Rng& rng) {
    Proc x = zero_proc(s);
    for (int t = 0; t <= s.T(); ++t)
        for (const Block& blk : s.partitions[t]) {
            Rat v = rng.small_rat(3, 3);
            for (int w : blk) x.v[t][w] = v;
        }
    return x;
}

Proc random_martingale(const FilteredSpace& s, Rng& rng) {
    return constrained_martingale(s, rng, no_extra_rows, /*multiplicative=*/false);
}

Proc random_positive_martingale(const FilteredSpace& s, Rng& rng) {
    return constrained_martingale(s, rng, no_extra_rows, /*multiplicative=*/true);
}

namespace {

std::function<std::vector<std::vector<Rat>>(int, const std::vector<int>&)> vanish_rows(
    const FilteredSpace& s, const RTime& r) {
    return [&s, r](int t, const std::vector<int>& children) {
        std::vector<std::vector<Rat>> rows;
        for (size_t i = 0; i < children.size(); ++i) {
            int w0 = s.partitions[t][children[i]][0];
            if (r.t[w0] == t) {
                std::vector<Rat> row(children.size(), Rat(0));
                row[i] = 1;
                rows.push_back(std::move(row));
            }
        }
        return rows;
    };
}

}  // namespace

Proc random_martingale_vanishing_at(const FilteredSpace& s, const RTime& r, Rng& rng) {
    return constrained_martingale(s, rng, vanish_rows(s, r), false);
}

Proc random_positive_martingale_vanishing_at(const FilteredSpace& s, const RTime& r, Rng& rng) {
    return constrained_martingale(s, rng, vanish_rows(s, r), true);
}

Proc random_martingale_stopped_compatible(const FilteredSpace& s, const RTime& bound, Rng& rng) {
    auto rows = [&s, bound](int t, const std::vector<int>& children) {
        std::vector<std::vector<Rat>> out;
        std::vector<Rat> masked(children.size(), Rat(0));
        bool mixed = false;
        for (size_t i = 0; i < children.size(); ++i) {
            int w0 = s.partitions[t][children[i]][0];
            if (bound.t[w0] > t)
                masked[i] = s.block_mass(t, children[i]);
            else
                mixed = true;
        }
        if (mixed) out.push_back(std::move(masked));
        return out;
    };
    return constrained_martingale(s, rng, rows, false);
}

RTime random_stopping_time(const FilteredSpace& s, Rng& rng) {
    RTime r = const_time(s, kInf);
    for (int t = 0; t <= s.T(); ++t)
        for (const Block& blk : s.partitions[t]) {
            if (r.t[blk[0]] != kInf) continue;
            if (rng.chance(1, 4))
                for (int w : blk) r.t[w] = t;
        }
    return r;
}

RTime random_predictable_time(const FilteredSpace& s, Rng& rng) {
    RTime r = const_time(s, kInf);
    for (int t = 0; t <= s.T(); ++t) {
        int level = s.level_minus(t);
        for (const Block& blk : s.partitions[level]) {
            if (r.t[blk[0]] != kInf) continue;
            if (rng.chance(1, 4))
                for (int w : blk) r.t[w] = t;
        }
    }
    return r;
}

MeasureChange random_measure_change(const FilteredSpace& s, Rng& rng) {
    MeasureChange mc;
    mc.density.assign(s.n(), Rat(1));
    Rat mean(0);
    for (int w = 0; w < s.n(); ++w) {
        mc.density[w] = rat(rng.int_in(1, 5));
        mean += mc.density[w] * s.prob[w];
    }
    for (int w = 0; w < s.n(); ++w) mc.density[w] /= mean;
    return mc;
}

std::vector<Rat> random_f_T_measurable(const FilteredSpace& s, const RTime& T, Rng& rng) {
    std::vector<Rat> xi(s.n());
    std::vector<bool> done(s.n(), false);
    for (int w = 0; w < s.n(); ++w) {
        if (done[w]) continue;
        int level = T.t[w] == kInf ? s.T() : T.t[w];
        Rat v = rng.small_rat(3, 2);
        for (int w2 : s.block_at(level, w))
            if (T.t[w2] == T.t[w] && !done[w2]) {
                xi[w2] = v;
                done[w2] = true;
            }
    }
    return xi;
}

Proc random_deflated_stopped(const FilteredSpace& s, const Proc& y, const RTime& r, Rng& rng) {
    Proc v = zero_proc(s);
    for (const Block& blk : s.partitions[0]) {
        Rat v0 = rng.small_rat(2, 2);
        for (int w : blk) v.v[0][w] = v0;
    }
    for (int t = 1; t <= s.T(); ++t) {
        for (const Block& parent : s.partitions[t - 1]) {
            std::vector<int> children;
            {
                std::set<int> seen;
                for (int w : parent) seen.insert(s.block_of[t][w]);
                children.assign(seen.begin(), seen.end());
            }
            // Target: sum p Y_t V_t = p(parent) (Y V)_{t-1}(parent).
            int w0 = parent[0];
            Rat target = y.v[t - 1][w0] * v.v[t - 1][w0];
            {
                Rat mass(0);
                for (int w : parent) mass += s.prob[w];
                target *= mass;
            }
            std::vector<int> free_kids;
            for (int c : children) {
                int wc = s.partitions[t][c][0];
                if (r.t[wc] <= t) {
                    for (int w : s.partitions[t][c]) v.v[t][w] = v.v[t - 1][w];
                    Rat mass(0);
                    for (int w : s.partitions[t][c]) mass += s.prob[w] * y.v[t][w];
                    target -= mass * v.v[t - 1][s.partitions[t][c][0]];
                } else {
                    free_kids.push_back(c);
                }
            }
            for (size_t i = 0; i + 1 < free_kids.size(); ++i) {
                int c = free_kids[i];
                Rat val = rng.small_rat(2, 2);
                for (int w : s.partitions[t][c]) v.v[t][w] = val;
                Rat mass(0);
                for (int w : s.partitions[t][c]) mass += s.prob[w] * y.v[t][w];
                target -= mass * val;
            }
            if (!free_kids.empty()) {
                int c = free_kids.back();
                Rat mass(0);
                for (int w : s.partitions[t][c]) mass += s.prob[w] * y.v[t][w];
                Rat val = target / mass;
                for (int w : s.partitions[t][c]) v.v[t][w] = val;
            }
        }
    }
    return v;
}

}  // namespace deflab::gen
