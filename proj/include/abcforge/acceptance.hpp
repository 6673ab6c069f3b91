#pragma once

// Acceptance property checks. Each criterion runs against the library only, so
// the test binary and `abc_forge selftest` print the same verdicts.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace abcforge {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceConfig {
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    std::vector<int> only;  // empty runs all twelve
};

inline constexpr int kCriterionCount = 12;

std::vector<CriterionResult> run_acceptance(const AcceptanceConfig& cfg,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

// "PASS  3  title: detail"
std::string format_result(const CriterionResult& r);

}  // namespace abcforge
