#include "deflab/inference.hpp"

#include <algorithm>
#include <set>

namespace deflab {

namespace {

void internal_check(bool cond, const char* what) { require(cond, ErrorKind::Internal, what); }

std::vector<int> atom_of(const FilteredSpace& s, const Partition& atoms) {
    std::vector<int> out(s.n(), -1);
    for (size_t a = 0; a < atoms.size(); ++a)
        for (int w : atoms[a]) {
            require(w >= 0 && w < s.n() && out[w] == -1, ErrorKind::BadInput,
                    "atoms must partition the outcomes");
            out[w] = static_cast<int>(a);
        }
    for (int w = 0; w < s.n(); ++w)
        require(out[w] != -1, ErrorKind::BadInput, "atoms must cover the outcomes");
    return out;
}

// sigma(tau) is P-trivial iff supp(P) sits inside one level set of tau.
bool tau_trivial_under(const RTime& tau, const std::vector<Rat>& p) {
    std::optional<Time> level;
    for (size_t w = 0; w < p.size(); ++w) {
        if (sgn(p[w]) == 0) continue;
        if (!level)
            level = tau.t[w];
        else if (*level != tau.t[w])
            return false;
    }
    return true;
}

}  // namespace

Kernel conditional_kernel(const FilteredSpace& s, const RTime& tau) {
    Kernel k;
    for (int w = 0; w < s.n(); ++w) k.nu[tau.t[w]] += s.prob[w];
    for (const auto& [t, mass] : k.nu) {
        std::vector<Rat> cond(s.n(), Rat(0));
        for (int w = 0; w < s.n(); ++w)
            if (tau.t[w] == t) cond[w] = s.prob[w] / mass;
        k.kappa[t] = std::move(cond);
    }
    // Disintegration: Q = sum_t nu(t) kappa(t), and kappa(t) charges {tau=t}.
    for (int w = 0; w < s.n(); ++w) {
        Rat total(0);
        for (const auto& [t, mass] : k.nu) {
            if (tau.t[w] != t)
                internal_check(sgn(k.kappa.at(t)[w]) == 0, "kernel must charge its level set only");
            total += mass * k.kappa.at(t)[w];
        }
        internal_check(total == s.prob[w], "kernel disintegration identity");
    }
    return k;
}

bool saturation_check(const FilteredSpace& g_space, const RTime& tau, const SigmaAlg& h) {
    std::vector<int> h_atom = atom_of(g_space, h.atoms);
    const Partition& g_atoms = g_space.partitions[g_space.T()];
    // Pre: H contained in G_oo (each G_oo atom sits inside one H atom).
    for (const Block& g : g_atoms) {
        for (int w : g)
            require(h_atom[w] == h_atom[g[0]], ErrorKind::BadInput,
                    "H must be a sub-sigma-algebra of G_oo");
    }
    // Point masses always saturate; the kernels K(t) carry the content: on
    // each level set the H-trace must refine the G_oo-trace.
    std::set<Time> levels;
    for (int w = 0; w < g_space.n(); ++w) levels.insert(tau.t[w]);
    std::vector<int> g_atom(g_space.n());
    for (size_t a = 0; a < g_atoms.size(); ++a)
        for (int w : g_atoms[a]) g_atom[w] = static_cast<int>(a);
    for (Time lvl : levels) {
        for (const Block& ha : h.atoms) {
            int seen = -1;
            for (int w : ha) {
                if (tau.t[w] != lvl) continue;
                if (seen == -1) seen = g_atom[w];
                if (g_atom[w] != seen) return false;
            }
        }
    }
    return true;
}

bool condB1_check(const FilteredSpace& g_space, const RTime& tau, const SigmaAlg& h,
                  const std::vector<Rat>& p) {
    require(p.size() == static_cast<size_t>(g_space.n()), ErrorKind::BadInput, "P size mismatch");
    Rat total(0);
    for (const Rat& q : p) {
        require(sgn(q) >= 0, ErrorKind::BadMeasure, "P must be nonnegative");
        total += q;
    }
    require(total == 1, ErrorKind::BadMeasure, "P must be a probability");

    if (!tau_trivial_under(tau, p)) return false;
    // Q << P on sigma(H): every H atom must be charged by P (Q has full
    // support, so a P-null nonempty atom breaks absolute continuity).
    for (const Block& atom : h.atoms) {
        Rat mass(0);
        for (int w : atom) mass += p[w];
        if (sgn(mass) == 0 && !atom.empty()) return false;
    }
    // A nontrivial tau cannot be H measurable under condition B1.
    bool tau_nontrivial = false;
    for (int w = 1; w < g_space.n(); ++w)
        if (tau.t[w] != tau.t[0]) tau_nontrivial = true;
    if (tau_nontrivial) {
        bool measurable = true;
        for (const Block& atom : h.atoms)
            for (int w : atom)
                if (tau.t[w] != tau.t[atom[0]]) measurable = false;
        internal_check(!measurable, "condB1 forbids an H-measurable nontrivial tau");
    }
    return true;
}

InferResult infer_filtration(const FilteredSpace& g_space, const RTime& tau, const SigmaAlg& h,
                             const std::vector<Rat>& p, const std::vector<Partition>* reference) {
    require(condB1_check(g_space, tau, h, p), ErrorKind::B1Violated,
            "infer_filtration needs condition B1");
    const int n = g_space.n();
    std::vector<int> support;
    for (int w = 0; w < n; ++w)
        if (sgn(p[w]) > 0) support.push_back(w);

    InferResult res;
    const size_t n_atoms = h.atoms.size();
    require(n_atoms <= 20, ErrorKind::BadInput, "H has too many atoms to enumerate");
    for (int t = 0; t <= g_space.T(); ++t) {
        // A in sigma(H) qualifies iff A n supp(P) is a union of
        // (G_t-block n supp(P)) pieces.
        std::vector<int> g_block(n);
        for (size_t b = 0; b < g_space.partitions[t].size(); ++b)
            for (int w : g_space.partitions[t][b]) g_block[w] = static_cast<int>(b);

        std::vector<std::vector<bool>> members;  // indicator per qualifying A
        for (size_t mask = 0; mask < (size_t(1) << n_atoms); ++mask) {
            std::vector<bool> in(n, false);
            for (size_t a = 0; a < n_atoms; ++a)
                if (mask & (size_t(1) << a))
                    for (int w : h.atoms[a]) in[w] = true;
            bool ok = true;
            for (size_t b = 0; b < g_space.partitions[t].size() && ok; ++b) {
                int seen = -1;
                for (int w : g_space.partitions[t][b]) {
                    if (sgn(p[w]) == 0) continue;
                    int flag = in[w] ? 1 : 0;
                    if (seen == -1) seen = flag;
                    if (flag != seen) ok = false;
                }
            }
            if (ok) members.push_back(std::move(in));
        }
        // Atoms of the qualifying collection by separation.
        std::vector<int> label(n, -1);
        Partition atoms;
        for (int w = 0; w < n; ++w) {
            if (label[w] != -1) continue;
            Block atom{w};
            label[w] = static_cast<int>(atoms.size());
            for (int w2 = w + 1; w2 < n; ++w2) {
                if (label[w2] != -1) continue;
                bool same = true;
                for (const auto& in : members)
                    if (in[w] != in[w2]) same = false;
                if (same) {
                    atom.push_back(w2);
                    label[w2] = label[w];
                }
            }
            atoms.push_back(std::move(atom));
        }
        res.h_s.push_back(std::move(atoms));
    }

    if (reference) {
        require(reference->size() == res.h_s.size(), ErrorKind::BadInput,
                "reference filtration length mismatch");
        for (size_t t = 0; t < res.h_s.size(); ++t) {
            auto canon = [](Partition p) {
                for (Block& b : p) std::sort(b.begin(), b.end());
                std::sort(p.begin(), p.end());
                return p;
            };
            if (canon(res.h_s[t]) != canon((*reference)[t])) res.matches_reference = false;
        }
    }
    return res;
}

}  // namespace deflab
