#pragma once

// Scalar information-theoretic helpers. All entropies are in bits.

#include <cstdint>
#include <span>
#include <vector>

namespace qsample {

/// Entropy values, always base 2. May be negative when it carries a bound.
using Bits = double;

/// Tolerance on the sum of a probability vector.
inline constexpr double kDistributionTolerance = 1e-9;

/// A finite probability vector. Construction validates nonnegativity and
/// that the entries sum to one within kDistributionTolerance.
class Distribution {
public:
    explicit Distribution(std::vector<double> probs);

    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }
    double max() const noexcept;

private:
    std::vector<double> probs_;
};

/// h(x) = -x log x - (1-x) log(1-x) with 0 log 0 = 0. Throws
/// std::domain_error outside [0, 1].
Bits binary_entropy(double x);

/// Binary entropy on [0, 1/2], 0 below zero and 1 above one half.
Bits extended_binary_entropy(double x) noexcept;

Bits shannon_entropy(const Distribution& dist);

/// -log2 max_i p_i.
Bits min_entropy_classical(const Distribution& dist);

/// log2 C(N, m). Direct long-double summation for small min(m, N-m),
/// log-gamma otherwise.
Bits log2_binomial(std::int64_t N, std::int64_t m);

/// Exact log2 of the Hamming ball volume sum_{w <= floor(r n)} C(n, w).
/// Returns -infinity for r < 0 and n for r >= 1.
Bits hamming_ball_log_volume(std::int64_t n, double r);

/// log2(2^a + 2^b), stable for large magnitudes and -infinity inputs.
Bits log2_add(Bits a, Bits b) noexcept;

}  // namespace qsample
