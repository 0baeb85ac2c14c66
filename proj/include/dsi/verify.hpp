// Oracle-vs-closed-form comparison suites behind the CLI verify command.
// Each check measures an error and compares it against the active tolerance
// profile; failures are collected, never short-circuited.
#pragma once

#include <string>
#include <vector>

namespace dsi {

struct CheckResult {
    std::string name;
    double measured;
    double tolerance;
    bool pass;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass;  // all checks passed
};

struct VerifyOptions {
    std::string profile = "default";
    // Test hook: evaluates the S-matrix with nu scaled by (1 + eps) while
    // the discrete-scale period check keeps the unscaled nu. Unitarity is
    // insensitive (|S| = 1 for any real nu); log-periodicity breaks, which
    // is exactly the discrimination the check must have.
    double inject_nu_scale = 0.0;
};

// {"special", "angular", "radial", "orthogonality"}
const std::vector<std::string>& verify_suite_names();

// Runs the named suites (empty selector = all); throws
// std::invalid_argument on an unknown suite name.
std::vector<SuiteResult> run_verify(const std::vector<std::string>& suites,
                                    const VerifyOptions& options);

}  // namespace dsi
