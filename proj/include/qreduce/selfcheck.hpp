#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qreduce/config.hpp"

namespace qreduce {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;  ///< worst observed deviation or the failure message
};

/// Names of the built-in invariant suites, in execution order.
std::vector<std::string> selfcheck_suites();

/// Runs every suite (or those listed in `only`) at fixed small parameters.
/// Exceptions inside a suite are reported as failures of that suite.
std::vector<SuiteResult> run_selfcheck(const Tolerances& tol, std::uint64_t seed,
                                       const std::vector<std::string>& only = {});

}  // namespace qreduce
