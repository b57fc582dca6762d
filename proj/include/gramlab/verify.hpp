#ifndef GRAMLAB_VERIFY_HPP
#define GRAMLAB_VERIFY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace gramlab {

struct VerifyOptions {
    std::uint64_t seed = 7;
    /// Random instances per suite.
    std::size_t instances = 200;
    /// Caps the matrix orders drawn by the suites (each suite also has its
    /// own structural cap).
    std::size_t max_order = 8;
    /// Feasible probes per constrained-minimum instance.
    std::size_t min_probes = 1000;
    /// Instances for the constrained-minimum suite.
    std::size_t min_instances = 50;
};

struct SuiteResult {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    std::size_t total_checks = 0;
    std::size_t total_failures = 0;
    double seconds = 0;

    bool ok() const { return total_failures == 0; }
};

/// Runs the seeded exact-arithmetic identity suites: distance ratio vs
/// normal equations, Cramer minimizer vs solve, charpoly subset expansion,
/// explicit lambda-inverse and quadratic form, the delta identity, the
/// Cauchy-Binet identity, and the constrained-minimum closed forms.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace gramlab

#endif
