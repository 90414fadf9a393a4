#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deflab/generators.hpp"
#include "deflab/space.hpp"

namespace deflab {

struct SuiteConfig {
    std::string suite = "all";  // azema | jumpstop | reduction | deflator-minus |
                                // deflator-tau | inference | all
    int models = 100;
    std::uint64_t seed = 1;
    gen::GenSizes sizes;
    bool fixtures_only = false;
};

struct PropertyResult {
    std::string property;
    int tested = 0;
    int passed = 0;
    int failed = 0;
    int skipped = 0;  // precondition not realizable on the model, counted apart
    std::string first_counterexample;  // replayable model JSON + detail
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    int models = 0;
    long wall_ms = 0;
    std::vector<PropertyResult> properties;

    bool all_passed() const {
        for (const auto& p : properties)
            if (p.failed > 0) return false;
        return true;
    }
};

std::vector<std::string> suite_names();
bool is_suite_name(const std::string& name);

SuiteReport run_suite(const SuiteConfig& config);

std::string report_to_json(const SuiteReport& report, int indent = 2);

}  // namespace deflab
