#include "deflab/space.hpp"

#include <algorithm>
#include <set>

namespace deflab {

Rat FilteredSpace::block_mass(int t, int block_index) const {
    Rat m(0);
    for (int w : partitions[t][block_index]) m += prob[w];
    return m;
}

static std::vector<std::vector<int>> index_blocks(int n, const std::vector<Partition>& parts) {
    std::vector<std::vector<int>> block_of(parts.size(), std::vector<int>(n, -1));
    for (size_t t = 0; t < parts.size(); ++t) {
        for (size_t b = 0; b < parts[t].size(); ++b) {
            for (int w : parts[t][b]) {
                require(w >= 0 && w < n, ErrorKind::BadInput, "partition index out of range");
                require(block_of[t][w] == -1, ErrorKind::BadInput, "partition blocks overlap");
                block_of[t][w] = static_cast<int>(b);
            }
        }
        for (int w = 0; w < n; ++w)
            require(block_of[t][w] != -1, ErrorKind::BadInput, "partition does not cover all outcomes");
    }
    return block_of;
}

FilteredSpace build_space(std::vector<std::string> outcomes, std::vector<Rat> probs, int horizon,
                          std::vector<Partition> partitions) {
    require(!outcomes.empty(), ErrorKind::BadInput, "no outcomes");
    require(probs.size() == outcomes.size(), ErrorKind::BadInput, "probs/outcomes size mismatch");
    require(horizon >= 1, ErrorKind::BadInput, "horizon must be >= 1");
    require(partitions.size() == static_cast<size_t>(horizon) + 1, ErrorKind::BadInput,
            "need one partition per time 0..T");

    Rat total(0);
    for (const Rat& p : probs) {
        require(sgn(p) > 0, ErrorKind::BadMeasure, "probabilities must be strictly positive");
        total += p;
    }
    require(total == 1, ErrorKind::BadMeasure, "probabilities must sum to 1 exactly");

    FilteredSpace s;
    s.outcomes = std::move(outcomes);
    s.prob = std::move(probs);
    s.horizon = horizon;
    for (auto& part : partitions)
        for (auto& blk : part) std::sort(blk.begin(), blk.end());
    s.partitions = std::move(partitions);
    s.block_of = index_blocks(s.n(), s.partitions);

    // partitions[t+1] must refine partitions[t]: outcomes sharing a block at
    // t+1 must share a block at t.
    for (int t = 0; t + 1 <= s.horizon; ++t) {
        for (const Block& blk : s.partitions[t + 1]) {
            int parent = s.block_of[t][blk[0]];
            for (int w : blk)
                require(s.block_of[t][w] == parent, ErrorKind::NonRefiningFiltration,
                        "partitions[" + std::to_string(t + 1) + "] does not refine partitions[" +
                            std::to_string(t) + "]");
        }
    }
    return s;
}

Proc zero_proc(const FilteredSpace& s) { return const_proc(s, Rat(0)); }

Proc const_proc(const FilteredSpace& s, const Rat& value) {
    Proc p;
    p.v.assign(s.T() + 1, std::vector<Rat>(s.n(), value));
    return p;
}

bool proc_equal(const Proc& a, const Proc& b) { return a.v == b.v; }

Proc proc_add(const Proc& a, const Proc& b) {
    Proc r = a;
    for (int t = 0; t <= a.T(); ++t)
        for (int w = 0; w < a.n(); ++w) r.v[t][w] += b.v[t][w];
    return r;
}

Proc proc_sub(const Proc& a, const Proc& b) {
    Proc r = a;
    for (int t = 0; t <= a.T(); ++t)
        for (int w = 0; w < a.n(); ++w) r.v[t][w] -= b.v[t][w];
    return r;
}

Proc proc_mul(const Proc& a, const Proc& b) {
    Proc r = a;
    for (int t = 0; t <= a.T(); ++t)
        for (int w = 0; w < a.n(); ++w) r.v[t][w] *= b.v[t][w];
    return r;
}

Proc proc_scale(const Proc& a, const Rat& c) {
    Proc r = a;
    for (int t = 0; t <= a.T(); ++t)
        for (int w = 0; w < a.n(); ++w) r.v[t][w] *= c;
    return r;
}

RTime const_time(const FilteredSpace& s, Time value) {
    RTime r;
    r.t.assign(s.n(), value);
    return r;
}

Proc indicator_from(const FilteredSpace& s, const RTime& r, bool strict_pos) {
    Proc p = zero_proc(s);
    for (int w = 0; w < s.n(); ++w) {
        if (strict_pos && r.t[w] <= 0) continue;
        if (r.t[w] == kInf) continue;
        for (int t = r.t[w]; t <= s.T(); ++t) p.v[t][w] = 1;
    }
    return p;
}

Proc indicator_closed(const FilteredSpace& s, const RTime& r) {
    Proc p = zero_proc(s);
    for (int w = 0; w < s.n(); ++w)
        for (int t = 0; t <= s.T(); ++t)
            if (t <= r.t[w]) p.v[t][w] = 1;
    return p;
}

Proc indicator_open(const FilteredSpace& s, const RTime& r) {
    Proc p = zero_proc(s);
    for (int w = 0; w < s.n(); ++w)
        for (int t = 0; t <= s.T(); ++t)
            if (t < r.t[w]) p.v[t][w] = 1;
    return p;
}

bool is_adapted(const FilteredSpace& s, const Proc& x) {
    for (int t = 0; t <= s.T(); ++t)
        for (const Block& blk : s.partitions[t])
            for (int w : blk)
                if (x.v[t][w] != x.v[t][blk[0]]) return false;
    return true;
}

void require_adapted(const FilteredSpace& s, const Proc& x, const std::string& who) {
    require(is_adapted(s, x), ErrorKind::NotAdapted, who);
}

bool is_predictable_proc(const FilteredSpace& s, const Proc& x) {
    for (int t = 0; t <= s.T(); ++t) {
        int level = s.level_minus(t);
        for (const Block& blk : s.partitions[level])
            for (int w : blk)
                if (x.v[t][w] != x.v[t][blk[0]]) return false;
    }
    return true;
}

bool is_stopping_time(const FilteredSpace& s, const RTime& rt) {
    for (int t = 0; t <= s.T(); ++t) {
        for (const Block& blk : s.partitions[t]) {
            bool first = rt.t[blk[0]] <= t;
            for (int w : blk)
                if ((rt.t[w] <= t) != first) return false;
        }
    }
    return true;
}

bool is_predictable_time(const FilteredSpace& s, const RTime& rt) {
    require(is_stopping_time(s, rt), ErrorKind::NotAStoppingTime, "is_predictable_time");
    for (int t = 0; t <= s.T(); ++t) {
        int level = s.level_minus(t);
        for (const Block& blk : s.partitions[level]) {
            bool first = rt.t[blk[0]] == t;
            for (int w : blk)
                if ((rt.t[w] == t) != first) return false;
        }
    }
    return true;
}

void validate_measure_change(const FilteredSpace& s, const MeasureChange& mc) {
    require(mc.density.size() == static_cast<size_t>(s.n()), ErrorKind::BadMeasure,
            "density size mismatch");
    Rat e(0);
    for (int w = 0; w < s.n(); ++w) {
        require(sgn(mc.density[w]) > 0, ErrorKind::BadMeasure, "density must be strictly positive");
        e += mc.density[w] * s.prob[w];
    }
    require(e == 1, ErrorKind::BadMeasure, "density must have expectation 1 exactly");
}

FilteredSpace apply_measure_change(const FilteredSpace& s, const MeasureChange& mc) {
    validate_measure_change(s, mc);
    FilteredSpace out = s;
    for (int w = 0; w < s.n(); ++w) out.prob[w] = mc.density[w] * s.prob[w];
    return out;
}

std::vector<Rat> cond_expect(const FilteredSpace& s, const std::vector<Rat>& x, int t) {
    std::vector<Rat> out(s.n());
    for (size_t b = 0; b < s.partitions[t].size(); ++b) {
        const Block& blk = s.partitions[t][b];
        Rat num(0), den(0);
        for (int w : blk) {
            num += x[w] * s.prob[w];
            den += s.prob[w];
        }
        Rat avg = num / den;
        for (int w : blk) out[w] = avg;
    }
    return out;
}

Rat expectation(const FilteredSpace& s, const std::vector<Rat>& x) {
    Rat e(0);
    for (int w = 0; w < s.n(); ++w) e += x[w] * s.prob[w];
    return e;
}

Model fixture_m1() {
    Partition triv = {{0, 1}};
    FilteredSpace s = build_space({"w1", "w2"}, {rat(1, 2), rat(1, 2)}, 2, {triv, triv, triv});
    RTime tau;
    tau.t = {1, 2};
    return {std::move(s), std::move(tau), "m1"};
}

Model fixture_m2() {
    FilteredSpace s = build_space({"a", "b", "c"}, {rat(1, 3), rat(1, 3), rat(1, 3)}, 2,
                                  {{{0, 1, 2}}, {{0}, {1, 2}}, {{0}, {1}, {2}}});
    RTime tau;
    tau.t = {2, 1, kInf};
    return {std::move(s), std::move(tau), "m2"};
}

Model fixture_m3() {
    Partition triv = {{0, 1, 2}};
    FilteredSpace s = build_space({"x", "y", "z"}, {rat(1, 2), rat(1, 4), rat(1, 4)}, 3,
                                  {triv, triv, triv, triv});
    RTime tau;
    tau.t = {1, 2, 3};
    return {std::move(s), std::move(tau), "m3"};
}

}  // namespace deflab
