#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pickspace/numlin.hpp"

namespace pickspace::suite {

struct CheckResult {
    std::string id;
    std::string module;
    std::string metric;
    double value = 0.0;
    std::string comparison;  // "<=" or ">="
    double threshold = 0.0;
    int cases = 0;
    bool passed = false;
    std::string note;
};

struct SuiteConfig {
    std::uint64_t seed = 42;
    int cases = 20;
    Tolerances tol;
};

/// Runs every theorem check on seeded random instances. Results are sorted
/// by id; the content depends only on the configuration.
std::vector<CheckResult> run(const SuiteConfig& cfg);

/// {"schema": 1, "seed", "cases", "tolerances", "checks": [...], "passed"}.
/// No timestamp; callers add one if they want it.
nlohmann::json report(const SuiteConfig& cfg, const std::vector<CheckResult>& results);

nlohmann::json to_json(const CheckResult& r);

} // namespace pickspace::suite
