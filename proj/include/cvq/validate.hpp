#pragma once

#include <string>
#include <vector>

#include "cvq/sweep.hpp"

namespace cvq {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;  // worst deviation seen by the check
    double tolerance = 0.0;
};

// Cross-checks every closed-form expression in the library against an
// independent numerical route (and a few structural invariants). Returns one
// result per check; a check never throws for a plain tolerance miss.
std::vector<CheckResult> run_validation(const RunConfig& config);

} // namespace cvq
