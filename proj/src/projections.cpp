#include "deflab/projections.hpp"

namespace deflab {

Proc optional_projection(const FilteredSpace& s, const Proc& x) {
    Proc y = x;
    for (int t = 0; t <= s.T(); ++t) y.v[t] = cond_expect(s, x.v[t], t);
    return y;
}

Proc predictable_projection(const FilteredSpace& s, const Proc& x) {
    Proc y = x;
    for (int t = 0; t <= s.T(); ++t) y.v[t] = cond_expect(s, x.v[t], s.level_minus(t));
    return y;
}

static Proc dual_projection(const FilteredSpace& s, const Proc& v, bool predictable) {
    Proc out = zero_proc(s);
    for (int t = 1; t <= s.T(); ++t) {
        std::vector<Rat> dv(s.n());
        for (int w = 0; w < s.n(); ++w) dv[w] = v.delta(t, w);
        std::vector<Rat> comp = cond_expect(s, dv, predictable ? t - 1 : t);
        for (int w = 0; w < s.n(); ++w) out.v[t][w] = out.v[t - 1][w] + comp[w];
    }
    return out;
}

Proc dual_optional(const FilteredSpace& s, const Proc& v) { return dual_projection(s, v, false); }

Proc dual_predictable(const FilteredSpace& s, const Proc& v) { return dual_projection(s, v, true); }

DoobMeyer doob_meyer(const FilteredSpace& s, const Proc& x) {
    require_adapted(s, x, "doob_meyer input");
    DoobMeyer dm;
    dm.drift = zero_proc(s);
    dm.martingale = x;
    for (int t = 1; t <= s.T(); ++t) {
        std::vector<Rat> dx(s.n());
        for (int w = 0; w < s.n(); ++w) dx[w] = x.delta(t, w);
        std::vector<Rat> mean = cond_expect(s, dx, t - 1);
        for (int w = 0; w < s.n(); ++w) {
            dm.drift.v[t][w] = dm.drift.v[t - 1][w] - mean[w];
            dm.martingale.v[t][w] = x.v[t][w] + dm.drift.v[t][w];
        }
    }
    return dm;
}

}  // namespace deflab
