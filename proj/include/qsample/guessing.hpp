#pragma once

// Optimal probability of guessing a classical label from a quantum side
// system: max over POVMs {Pi_j} of sum_j tr(Pi_j rho_j), for subnormalized
// states rho_j summing to a density operator.

#include <cstddef>
#include <span>

#include "qsample/hermitian.hpp"

namespace qsample {

struct GuessingProbability {
    double lower;  ///< achieved by an explicit POVM
    double upper;  ///< trace of a dual-feasible Y >= rho_j for every j
    std::size_t iterations;
};

/// Starts from the pretty-good measurement and iterates
/// Pi_j <- G^{-1/2} rho_j Pi_j rho_j G^{-1/2}, G = sum_j rho_j Pi_j rho_j.
/// The certificate is Y = herm(sum_j rho_j Pi_j) shifted by the largest
/// eigenvalue of rho_j - Y. Stops once upper - lower <= gap, or once
/// upper <= stop_below when only an upper bound below a threshold is needed.
GuessingProbability guessing_probability(std::span<const CMatrix> states, double gap = 1e-11,
                                         std::size_t max_iterations = 4000, double stop_below = 0.0);

}  // namespace qsample
