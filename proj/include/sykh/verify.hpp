#pragma once

#include <string>
#include <vector>

namespace sykh {

struct CheckResult {
    std::string module;
    std::string name;
    bool pass;
    double measured;
    double tolerance;
};

/// Runs a fixed, deterministic set of invariant checks from every module.
/// Exceptions inside a check are recorded as failures (measured = NaN).
std::vector<CheckResult> run_invariants();

}  // namespace sykh
