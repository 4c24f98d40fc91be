#pragma once

// Closed-form min-entropy bound for the unmeasured part of an n+m qubit
// system after m qubits were sampled in one basis, plus the privacy
// amplification relations that consume it.

#include <cstddef>

#include "qsample/entropy.hpp"

namespace qsample {

struct BoundParams {
    std::size_t m = 0;  ///< sampled (test) qubits
    std::size_t n = 0;  ///< remaining qubits
    double epsilon = 0.0;
    double epsilon_hat = 0.0;  ///< >= epsilon; failure scale
    double beta = 0.0;         ///< in (0, 1/2)
    unsigned a = 0;            ///< reference symbol, 0 or 1
    double c = 0.5;            ///< basis overlap in [1/2, 1]
    double w_obs = 0.0;        ///< observed relative a-weight of the sample

    /// Throws std::invalid_argument naming the first violated constraint.
    void validate() const;
};

struct BoundResult {
    double delta;
    double smoothing;  ///< 2 eps + 2 eps^beta
    Bits entropy_lower_bound;
    double failure_prob;  ///< eps_hat^(1 - 2 beta)

    /// A nonpositive bound certifies nothing.
    bool vacuous() const noexcept { return entropy_lower_bound <= 0.0; }
};

/// -n log2 c - n Hbar(w_obs + delta), with delta from the sample sizes and
/// epsilon. Negative values are returned unclamped.
BoundResult theorem_bound(const BoundParams& p);

/// Ideal-state form without the sampling error: -n log2 c - n Hbar(w + delta).
Bits ideal_state_bound(std::size_t n, double c, double w, double delta);

/// eps_hat^(1 - 2 beta), evaluated in log space.
double failure_probability(double epsilon_hat, double beta);

/// 2 eps + 2 eps^beta.
double smoothing_parameter(double epsilon, double beta);

/// 2^{-(h_min - ell)/2} + 2 eps_smooth.
double pa_distance(Bits h_min, double ell, double eps_smooth);

/// h_min - 2 log2(1 / (eps_pa - 2 eps_smooth)). Requires eps_pa > 2 eps_smooth.
double extractable_length(Bits h_min, double eps_pa, double eps_smooth);

}  // namespace qsample
