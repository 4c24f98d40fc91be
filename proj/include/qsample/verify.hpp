#pragma once

// Randomized property suites for the sampling bound and the inequalities it is
// built from. Instance i of a suite draws from its own substream of the
// seed, so any reported violation can be regenerated from (seed, index).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qsample {

inline constexpr double kPropertyTolerance = 1e-9;

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::size_t trials = 1000;
    /// Test hook: added to the ideal-state bound before comparing.
    double bound_offset = 0.0;
    /// Largest N for the exact-vs-bound sampling grid.
    std::size_t sampling_max_length = 32;
};

struct SuiteReport {
    std::string name;
    std::size_t instances = 0;
    std::size_t violations = 0;
    /// min over instances of lhs - rhs (or bound - exact).
    double worst_slack = 0.0;
    /// JSON text of the first violating instance.
    std::optional<std::string> first_violation;

    bool passed() const noexcept { return violations == 0; }
};

/// Superposition vs mixture min-entropy, trivial side system, up to 6 qubits.
SuiteReport run_superposition_suite(const SuiteConfig& cfg);
/// Same with orthonormal branch labels in the side system, up to 4 qubits.
SuiteReport run_superposition_branch_suite(const SuiteConfig& cfg);
/// Random span(B) states, measured subsets, bound on the remainder.
SuiteReport run_ideal_state_suite(const SuiteConfig& cfg);
/// H(M) + H(N) >= -log2 c on random qubit states.
SuiteReport run_maassen_uffink_suite(const SuiteConfig& cfg);
/// Exact failure probability vs the analytic bound, k <= N/2.
SuiteReport run_sampling_suite(const SuiteConfig& cfg);

/// Suite names accepted by run_suite: superposition, superposition-branch,
/// ideal-state, uncertainty, sampling-bound.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace qsample
