#pragma once

#include "json_codec.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qb {

struct CheckResult {
    std::string name;
    std::string anchor; // source identity the check exercises
    std::string status; // pass | fail | inconclusive
    std::string detail;
    double seconds = 0;

    bool ok() const { return status != "fail"; }
    bool passed() const { return status == "pass"; }
};

struct SuiteOptions {
    long long order = -1;    // q-order override (-1: per-check defaults)
    int jet_order = -1;      // jet order override
    long long margin = 10;   // certification margin
    std::uint64_t seed = 1;  // randomized sampling seed
    bool parallel = true;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 1;
    std::vector<CheckResult> checks;

    bool all_ok() const;
    json to_json(bool with_timing = true) const;
};

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& id, const SuiteOptions& opt);

// acceptance criterion -> the suite checks that realize it
struct CriterionStatus {
    int number;
    std::string title;
    bool passed;
    double seconds;
};
std::vector<CriterionStatus> run_acceptance(const SuiteOptions& opt, std::vector<SuiteReport>* reports);

} // namespace qb
