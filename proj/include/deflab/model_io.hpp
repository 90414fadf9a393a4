#pragma once

#include <map>
#include <string>

#include "deflab/azema.hpp"
#include "deflab/deflator.hpp"
#include "deflab/space.hpp"

namespace deflab {

// Model JSON, rationals as "p/q" strings, times as integers or "inf":
// {
//   "outcomes": [...], "probs": ["1/3", ...], "horizon": T,
//   "filtration": [ [ [idx,...], ... ], ... ],
//   "times": { "tau": [t_or_"inf", ...] },
//   "processes": { name: [[row per t], ...] }
// }
struct ModelFile {
    Model model;
    std::map<std::string, RTime> extra_times;
    std::map<std::string, Proc> processes;
};

ModelFile model_from_json(const std::string& text);
std::string model_to_json(const ModelFile& mf, int indent = 2);

std::string certificate_to_json(const FilteredSpace& s, const Certificate& cert, int indent = 2);

// Bundle dump: process table with the canonical names, null outside the
// domain of L.
std::string bundle_to_json(const FilteredSpace& s, const Analysis& an, int indent = 2);

}  // namespace deflab
