#pragma once

// Classical sampling strategy: choose a uniformly random size-k subset of
// positions, report the relative a-Hamming weight of the sampled symbols
// as the estimate for the weight of the unsampled remainder.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qsample {

using Symbol = std::uint8_t;
using Rng = std::mt19937_64;

/// Absolute slack applied when comparing a weight gap against delta, so
/// that gaps equal to delta in exact arithmetic are classified as good.
inline constexpr double kWeightTolerance = 1e-12;

/// A nonempty string over the alphabet {0, ..., d-1}.
class Word {
public:
    Word(std::vector<Symbol> symbols, unsigned alphabet = 2);

    /// Parses a string of decimal digits, e.g. "0101" or "012012".
    static Word parse(std::string_view digits, unsigned alphabet = 2);

    std::size_t size() const noexcept { return symbols_.size(); }
    unsigned alphabet() const noexcept { return alphabet_; }
    Symbol operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<Symbol> symbols_;
    unsigned alphabet_;
};

/// Sorted distinct positions drawn from {0, ..., universe-1}.
class SubsetIndex {
public:
    SubsetIndex(std::vector<std::size_t> indices, std::size_t universe);

    const std::vector<std::size_t>& indices() const noexcept { return indices_; }
    std::size_t size() const noexcept { return indices_.size(); }
    std::size_t universe() const noexcept { return universe_; }
    bool contains(std::size_t position) const;
    /// Positions not in the subset, ascending.
    std::vector<std::size_t> complement() const;

    friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;

private:
    std::vector<std::size_t> indices_;
    std::size_t universe_;
};

/// q restricted to the given positions, in order.
Word restrict_word(const Word& q, std::span<const std::size_t> positions);

/// w_a(q): fraction of positions of q that differ from a.
double relative_hamming_weight(const Word& q, Symbol a);

/// Uniform size-k subset of {0..N-1} by partial Fisher-Yates shuffle.
SubsetIndex sample_subset(std::size_t N, std::size_t k, Rng& rng);

/// The estimator applied to the sampled substring: w_a(q_tau).
double estimate(const Word& q_tau, Symbol a);

/// True iff |w_a(q_tau) - w_a(q_{-tau})| <= delta.
bool is_good_word(const Word& q, const SubsetIndex& tau, Symbol a, double delta);

struct SamplingStrategy {
    std::size_t total;
    std::size_t sample_size;
    Symbol reference;

    SubsetIndex draw(Rng& rng) const { return sample_subset(total, sample_size, rng); }
    double guess(const Word& q_tau) const { return estimate(q_tau, reference); }
};

/// Largest N accepted by error_prob_exact.
inline constexpr std::size_t kExactMaxLength = 64;
/// Largest d^N accepted by error_prob_brute_force.
inline constexpr std::uint64_t kBruteForceMaxWords = 1u << 16;

/// Exact worst-case failure probability of the strategy. Pr(q not good)
/// depends only on the number of positions of q that differ from a, and the
/// sampled count is hypergeometric, so the maximum is over N+1 weight
/// classes. Requires 1 <= k < N <= kExactMaxLength.
double error_prob_exact(std::size_t N, std::size_t k, double delta, unsigned d, Symbol a);

/// Reference enumeration over every word in A^N and every size-k subset.
/// One pass evaluates all requested deltas. Requires d^N <= kBruteForceMaxWords.
std::vector<double> error_prob_brute_force(std::size_t N, std::size_t k,
                                           std::span<const double> deltas, unsigned d, Symbol a);
double error_prob_brute_force(std::size_t N, std::size_t k, double delta, unsigned d, Symbol a);

struct MonteCarloEstimate {
    double estimate;
    double standard_error;
    std::size_t worst_weight;  ///< number of positions differing from a
};

/// Monte Carlo estimate of the worst-case failure probability. Each weight
/// class runs `trials` uniformly random subsets from its own substream of
/// `seed`, so the result does not depend on `lanes`.
MonteCarloEstimate error_prob_monte_carlo(std::size_t N, std::size_t k, double delta, unsigned d,
                                          Symbol a, std::size_t trials, std::uint64_t seed,
                                          unsigned lanes = 1);

/// min(1, 2 exp(-delta^2 k N / (N + 2))). The bound is only proven for
/// k <= N/2; larger k throws unless allow_large_sample is set.
double error_prob_bound(std::size_t N, std::size_t k, double delta, bool allow_large_sample = false);

/// delta such that error_prob_bound(m+n, m, delta) == epsilon^2:
/// sqrt((m+n+2) ln(2/epsilon^2) / (m (m+n))). Requires m <= n unless
/// allow_m_greater_than_n.
double delta_from_epsilon(std::size_t m, std::size_t n, double epsilon,
                          bool allow_m_greater_than_n = false);

}  // namespace qsample
