#include "deflab/calculus.hpp"

namespace deflab {

Proc integrate(const Proc& h, const Proc& x) {
    Proc out = x;
    for (int w = 0; w < x.n(); ++w) out.v[0][w] = 0;
    for (int t = 1; t <= x.T(); ++t)
        for (int w = 0; w < x.n(); ++w)
            out.v[t][w] = out.v[t - 1][w] + h.v[t][w] * x.delta(t, w);
    return out;
}

Proc shift_left(const Proc& x) {
    Proc out = x;
    for (int t = x.T(); t >= 1; --t) out.v[t] = x.v[t - 1];
    return out;
}

Proc bracket(const Proc& x, const Proc& y) {
    Proc out = x;
    for (int w = 0; w < x.n(); ++w) out.v[0][w] = 0;
    for (int t = 1; t <= x.T(); ++t)
        for (int w = 0; w < x.n(); ++w)
            out.v[t][w] = out.v[t - 1][w] + x.delta(t, w) * y.delta(t, w);
    return out;
}

Proc stoch_exp(const Proc& x) {
    Proc out = x;
    for (int w = 0; w < x.n(); ++w) out.v[0][w] = 1;
    for (int t = 1; t <= x.T(); ++t)
        for (int w = 0; w < x.n(); ++w)
            out.v[t][w] = out.v[t - 1][w] * (Rat(1) + x.delta(t, w));
    return out;
}

Proc stoch_log(const Proc& y) {
    Proc out = y;
    for (int w = 0; w < y.n(); ++w) {
        require(y.v[0][w] == 1, ErrorKind::NonPositive, "stoch_log requires Y_0 = 1");
        out.v[0][w] = 0;
        for (int t = 1; t <= y.T(); ++t) {
            require(sgn(y.v[t][w]) > 0, ErrorKind::NonPositive, "stoch_log requires Y > 0");
            out.v[t][w] = out.v[t - 1][w] + y.delta(t, w) / y.v[t - 1][w];
        }
    }
    return out;
}

Proc stoch_log_absorbing(const Proc& y) {
    Proc out = y;
    for (int w = 0; w < y.n(); ++w) {
        require(y.v[0][w] == 1, ErrorKind::NonPositive, "stoch_log requires Y_0 = 1");
        out.v[0][w] = 0;
        bool absorbed = false;
        for (int t = 1; t <= y.T(); ++t) {
            int sg = sgn(y.v[t][w]);
            require(sg >= 0, ErrorKind::NonPositive, "negative value before absorption");
            if (absorbed)
                require(sg == 0, ErrorKind::NonPositive, "value revives after hitting zero");
            Rat jump = absorbed ? Rat(0) : Rat(y.delta(t, w) / y.v[t - 1][w]);
            out.v[t][w] = out.v[t - 1][w] + jump;
            if (sg == 0) absorbed = true;
        }
    }
    return out;
}

Proc stop_at(const Proc& x, const RTime& r) {
    Proc out = x;
    for (int w = 0; w < x.n(); ++w)
        for (int t = 0; t <= x.T(); ++t)
            out.v[t][w] = x.v[r.t[w] < t ? r.t[w] : t][w];
    return out;
}

Proc stop_before(const Proc& x, const RTime& r) {
    Proc out = x;
    for (int w = 0; w < x.n(); ++w)
        for (int t = 0; t <= x.T(); ++t) {
            if (t < r.t[w])
                out.v[t][w] = x.v[t][w];
            else
                out.v[t][w] = x.left(r.t[w], w);
        }
    return out;
}

static bool drift_sign_test(const FilteredSpace& s, const Proc& x, bool allow_negative_only) {
    require_adapted(s, x, "martingale_test input");
    for (int t = 1; t <= s.T(); ++t) {
        for (const Block& blk : s.partitions[t - 1]) {
            Rat mean(0);
            for (int w : blk) mean += s.prob[w] * x.delta(t, w);
            if (allow_negative_only) {
                if (sgn(mean) > 0) return false;
            } else {
                if (mean != 0) return false;
            }
        }
    }
    return true;
}

bool martingale_test(const FilteredSpace& s, const Proc& x) { return drift_sign_test(s, x, false); }

bool supermartingale_test(const FilteredSpace& s, const Proc& x) {
    return drift_sign_test(s, x, true);
}

bool martingale_on_set_test(const FilteredSpace& s, const Proc& x, const StochasticInterval& set) {
    std::vector<const RTime*> caps;
    if (!set.family.empty())
        for (const RTime& r : set.family) caps.push_back(&r);
    else
        caps.push_back(&set.bound);
    for (const RTime* r : caps) {
        require(is_stopping_time(s, *r), ErrorKind::NotAStoppingTime, "martingale_on_set_test");
        Proc capped = set.inclusive || !set.family.empty() ? stop_at(x, *r) : stop_before(x, *r);
        if (!martingale_test(s, capped)) return false;
    }
    return true;
}

bool orthogonality_test(const FilteredSpace& s, const Proc& x, const Proc& u) {
    return martingale_test(s, proc_mul(x, u));
}

}  // namespace deflab
