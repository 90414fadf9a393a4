#pragma once

#include <map>
#include <optional>
#include <vector>

#include "deflab/space.hpp"

namespace deflab {

// Regular conditional probability of the outcome given {tau = t}, plus the
// law of tau. Kernel(t) charges only {tau = t}; the nu-mixture of the kernels
// reproduces the base measure.
struct Kernel {
    std::map<Time, std::vector<Rat>> kappa;  // per t with nu(t) > 0
    std::map<Time, Rat> nu;
};

// A sub-sigma-algebra presented by its atoms.
struct SigmaAlg {
    Partition atoms;
};

Kernel conditional_kernel(const FilteredSpace& s, const RTime& tau);

// Saturation of H inside G_oo: for every probability making sigma(tau)
// trivial (finite case: supported inside one level set {tau=t}) and every
// A' in G_oo there is A in sigma(H) agreeing with A' up to a null set.
// Reduces to: the trace of H on each level set refines the trace of G_oo.
bool saturation_check(const FilteredSpace& g_space, const RTime& tau, const SigmaAlg& h);

// Condition B1 for (H, P): sigma(tau) is P-trivial and Q << P on sigma(H).
// When it passes and tau is Q-nontrivial, tau cannot be H measurable (checked
// and returned as part of the verdict).
bool condB1_check(const FilteredSpace& g_space, const RTime& tau, const SigmaAlg& h,
                  const std::vector<Rat>& p);

struct InferResult {
    std::vector<Partition> h_s;     // recovered filtration, one partition per time
    bool matches_reference = true;  // only meaningful when a reference was supplied
};

// H_s = { A in sigma(H) : exists A' in G_s with P[A delta A'] = 0 },
// materialized as a partition per time. Throws B1Violated unless condB1
// holds. When a reference filtration is supplied the verdict compares the
// recovered partitions against it exactly (null sets are empty here).
InferResult infer_filtration(const FilteredSpace& g_space, const RTime& tau, const SigmaAlg& h,
                             const std::vector<Rat>& p,
                             const std::vector<Partition>* reference = nullptr);

}  // namespace deflab
