#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ghp/ghp.hpp"
#include "ghp/io.hpp"

namespace ghp {

struct RunConfig {
    std::uint64_t seed = 7;
    double exhaustive_budget = 2e4;
    Tolerances tol;
};

struct CaseResult {
    std::string id;
    bool pass = false;
    double value = 0.0;  // measured quantity
    double bound = 0.0;  // what it was compared against
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;
    std::string summary;
    std::vector<CaseResult> cases;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::string generator;
    std::vector<CriterionResult> criteria;

    bool pass() const;
    std::string to_json() const;
};

inline constexpr int kCriterionCount = 10;

const std::vector<std::string>& suite_names();

/// Criterion ids a suite runs. Throws InputError listing the valid names.
std::vector<int> suite_criteria(const std::string& name);

/// Runs one acceptance criterion. A criterion fails when any case fails or it overruns its time limit.
CriterionResult run_criterion(int id, const RunConfig& cfg);

SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

/// The search configuration the suites use for compact bounds.
SearchConfig suite_search(const RunConfig& cfg);

}  // namespace ghp
