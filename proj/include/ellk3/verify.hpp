#pragma once

#include <string>
#include <vector>

namespace ellk3 {

// One acceptance criterion, re-derived from scratch on every run.
struct CheckResult {
    int number;          // criterion number, 1-based
    std::string suite;   // fmt | cce | charges | regions | walls
    std::string name;
    bool pass;
    double seconds;
    double budget_seconds;  // 0 = untimed
    std::string detail;     // populated on failure
};

// suite: all | fmt | cce | charges | regions | walls.  Unknown suites throw
// std::invalid_argument.
std::vector<CheckResult> run_acceptance(const std::string& suite, unsigned seed);

}  // namespace ellk3
