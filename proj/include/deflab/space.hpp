#pragma once

#include <limits>
#include <string>
#include <vector>

#include "deflab/errors.hpp"
#include "deflab/rational.hpp"

namespace deflab {

// Time grid is {0,...,T}; kInf is the explicit sentinel for random times that
// never occur.
using Time = int;
inline constexpr Time kInf = std::numeric_limits<Time>::max();

using Block = std::vector<int>;        // outcome indices, sorted
using Partition = std::vector<Block>;  // disjoint cover of {0..n-1}

// A finite filtered probability space: outcomes with strictly positive exact
// probabilities summing to one, and a refining sequence of partitions
// partitions[0..T] (the filtration).
struct FilteredSpace {
    std::vector<std::string> outcomes;
    std::vector<Rat> prob;
    int horizon = 0;
    std::vector<Partition> partitions;

    // block_of[t][w] = index of the partitions[t] block containing outcome w
    std::vector<std::vector<int>> block_of;

    int n() const { return static_cast<int>(outcomes.size()); }
    int T() const { return horizon; }

    const Block& block_at(int t, int w) const { return partitions[t][block_of[t][w]]; }

    Rat block_mass(int t, int block_index) const;

    // Left-limit filtration: F_{t-} = F_{t-1} for t >= 1, F_{0-} = F_0.
    int level_minus(int t) const { return t > 0 ? t - 1 : 0; }
};

// Time/outcome table of exact rationals. A Proc need not be adapted; every
// projection operator accepts raw tables.
struct Proc {
    std::vector<std::vector<Rat>> v;  // v[t][w], t in 0..T

    int T() const { return static_cast<int>(v.size()) - 1; }
    int n() const { return v.empty() ? 0 : static_cast<int>(v[0].size()); }

    const Rat& at(int t, int w) const { return v[t][w]; }
    Rat& at(int t, int w) { return v[t][w]; }

    // Left limit with the convention X_{0-} = X_0, so the jump at 0 vanishes.
    const Rat& left(int t, int w) const { return v[t > 0 ? t - 1 : 0][w]; }

    Rat delta(int t, int w) const { return t == 0 ? Rat(0) : Rat(v[t][w] - v[t - 1][w]); }
};

Proc zero_proc(const FilteredSpace& s);
Proc const_proc(const FilteredSpace& s, const Rat& value);
bool proc_equal(const Proc& a, const Proc& b);

Proc proc_add(const Proc& a, const Proc& b);
Proc proc_sub(const Proc& a, const Proc& b);
Proc proc_mul(const Proc& a, const Proc& b);
Proc proc_scale(const Proc& a, const Rat& c);

// A random time with values in {0..T} u {inf}.
struct RTime {
    std::vector<Time> t;  // per outcome

    Time at(int w) const { return t[w]; }
    bool finite(int w) const { return t[w] != kInf; }
};

RTime const_time(const FilteredSpace& s, Time value);

// Indicator processes of the usual random interval styluses.
Proc indicator_from(const FilteredSpace& s, const RTime& r, bool strict_pos);  // 1_{{0<R}} 1_{[R,oo)}
Proc indicator_closed(const FilteredSpace& s, const RTime& r);                 // 1_{[0,R]}
Proc indicator_open(const FilteredSpace& s, const RTime& r);                   // 1_{[0,R)}

// Equivalent measure change: strictly positive density with unit expectation.
struct MeasureChange {
    std::vector<Rat> density;  // per outcome
};

// Validating constructor for FilteredSpace. Rejects probabilities that are not
// strictly positive / do not sum to one (BadMeasure), malformed partitions
// (BadInput), and non-refining partition sequences (NonRefiningFiltration).
FilteredSpace build_space(std::vector<std::string> outcomes, std::vector<Rat> probs, int horizon,
                          std::vector<Partition> partitions);

bool is_adapted(const FilteredSpace& s, const Proc& x);
void require_adapted(const FilteredSpace& s, const Proc& x, const std::string& who);

// Predictable in the one-step sense: value[t] is F_{t-1} measurable for t >= 1
// (value[0] must be F_0 measurable).
bool is_predictable_proc(const FilteredSpace& s, const Proc& x);

// {rt <= t} is a union of partitions[t] blocks for every t.
bool is_stopping_time(const FilteredSpace& s, const RTime& rt);

// Discrete predictable time: a stopping time whose graph is announced one step
// ahead, {rt = t} in F_{t-1} for t >= 1; {rt = 0} is handled under F_{0-}=F_0.
// Throws NotAStoppingTime when rt is not even a stopping time.
bool is_predictable_time(const FilteredSpace& s, const RTime& rt);

void validate_measure_change(const FilteredSpace& s, const MeasureChange& mc);
FilteredSpace apply_measure_change(const FilteredSpace& s, const MeasureChange& mc);

// Conditional expectation of a per-outcome vector given partitions[t]
// (block average). This is the one primitive everything else is built on.
std::vector<Rat> cond_expect(const FilteredSpace& s, const std::vector<Rat>& x, int t);

Rat expectation(const FilteredSpace& s, const std::vector<Rat>& x);

// Canonical fixtures shipped with the library.
//
// m1: two outcomes, uniform, T=2, trivial filtration, tau=(1,2).
// m2: three outcomes a,b,c, uniform, T=2, F1={{a},{b,c}}, F2 discrete,
//     tau=(2,1,inf).
// m3: three outcomes, p=(1/2,1/4,1/4), T=3, trivial filtration, tau=(1,2,3);
//     its survival process decays geometrically to an exact zero at the
//     horizon.
struct Model {
    FilteredSpace space;
    RTime tau;
    std::string id;
};

Model fixture_m1();
Model fixture_m2();
Model fixture_m3();

}  // namespace deflab
