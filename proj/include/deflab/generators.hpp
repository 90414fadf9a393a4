#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "deflab/space.hpp"

namespace deflab::gen {

// Deterministic RNG: the engine is the standardized mt19937_64 and every
// distribution below is hand-rolled, so a seed reproduces the same stream on
// every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    long below(long n) {  // uniform in [0, n)
        std::uint64_t span = static_cast<std::uint64_t>(n);
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return static_cast<long>(x % span);
    }

    long int_in(long lo, long hi) { return lo + below(hi - lo + 1); }

    bool chance(long num, long den) { return below(den) < num; }

    // Small signed rational, nonzero denominators kept tiny to tame growth.
    Rat small_rat(long max_abs_num, long max_den) {
        return rat(int_in(-max_abs_num, max_abs_num), int_in(1, max_den));
    }

  private:
    std::mt19937_64 eng_;
};

struct GenSizes {
    int max_outcomes = 8;
    int max_horizon = 5;
};

enum class PathologyClass { EtaFinite, EtaDdotFinite, EtaDotFinite, EtaTildeFinite, DaEqualsOne };

const char* pathology_name(PathologyClass c);
PathologyClass pathology_from_name(const std::string& name);

// A random filtered space with a refining partition tree and a random time.
Model gen_random_model(Rng& rng, const GenSizes& sizes);

// Product model (branch x level): the conditional law of tau given F_oo has
// full support on the designated levels, the discrete strict-density setup.
Model gen_density_model(Rng& rng, const GenSizes& sizes);

// Cox model: adapted nondecreasing barrier crossed by an independent
// threshold. Exposes the barrier and the threshold survival data so the
// survival identity can be checked against the model.
struct CoxModel {
    Model model;
    Proc barrier;                       // F-adapted, nondecreasing
    std::vector<Rat> threshold;         // per outcome
    std::vector<std::pair<Rat, Rat>> threshold_law;  // (value, mass)

    Rat survival(const Rat& v) const {  // Q(threshold >= v)
        Rat s(0);
        for (const auto& [value, mass] : threshold_law)
            if (value >= v) s += mass;
        return s;
    }
};
CoxModel gen_cox_model(Rng& rng, const GenSizes& sizes);

// A model certified by the vanishing-time classification to realize the
// requested class with positive probability. Retries with escalating sizes
// and throws UnrealizableClass when the budget is exhausted (the
// continuous-vanishing class is empty on a finite grid and always throws).
Model gen_pathological(Rng& rng, const GenSizes& sizes, PathologyClass cls);

// Seed-based entry points.
Model gen_density_model(std::uint64_t seed, const GenSizes& sizes);
CoxModel gen_cox_model(std::uint64_t seed, const GenSizes& sizes);
Model gen_pathological(std::uint64_t seed, const GenSizes& sizes, PathologyClass cls);

// Random processes and times on a given space, all exact.
Proc random_adapted(const FilteredSpace& s, Rng& rng);
Proc random_martingale(const FilteredSpace& s, Rng& rng);
Proc random_positive_martingale(const FilteredSpace& s, Rng& rng);  // Y_0 = 1
Proc random_martingale_vanishing_at(const FilteredSpace& s, const RTime& r, Rng& rng);
Proc random_positive_martingale_vanishing_at(const FilteredSpace& s, const RTime& r, Rng& rng);
// X with both X and X^{bound-} martingales (increments orthogonal to the
// pre-bound indicator as well).
Proc random_martingale_stopped_compatible(const FilteredSpace& s, const RTime& bound, Rng& rng);
RTime random_stopping_time(const FilteredSpace& s, Rng& rng);
RTime random_predictable_time(const FilteredSpace& s, Rng& rng);
MeasureChange random_measure_change(const FilteredSpace& s, Rng& rng);
std::vector<Rat> random_f_T_measurable(const FilteredSpace& s, const RTime& T, Rng& rng);
// Adapted V frozen from R on with YV a martingale (Y a positive martingale):
// the stopped-price instances fed to the no-jump deflator surgery.
Proc random_deflated_stopped(const FilteredSpace& s, const Proc& y, const RTime& r, Rng& rng);

}  // namespace deflab::gen
