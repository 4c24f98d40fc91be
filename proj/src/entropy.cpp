#include "qsample/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qsample {

namespace {

double xlog2x(double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
}

// Below this, summing min(m, N-m) long-double log terms beats lgammal,
// whose absolute error grows with N and dominates tiny results.
constexpr std::int64_t kDirectSumLimit = 64;

}  // namespace

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("distribution: empty");
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0) || p > 1.0 + kDistributionTolerance)
            throw std::invalid_argument("distribution: entry outside [0,1]: " + std::to_string(p));
        sum += p;
    }
    if (std::abs(sum - 1.0) > kDistributionTolerance)
        throw std::invalid_argument("distribution: entries sum to " + std::to_string(sum));
}

double Distribution::max() const noexcept {
    return *std::max_element(probs_.begin(), probs_.end());
}

Bits binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("binary_entropy: argument outside [0,1]");
    return -xlog2x(x) - xlog2x(1.0 - x);
}

Bits extended_binary_entropy(double x) noexcept {
    if (x < 0.0) return 0.0;
    if (x > 0.5) return 1.0;
    return -xlog2x(x) - xlog2x(1.0 - x);
}

Bits shannon_entropy(const Distribution& dist) {
    double h = 0.0;
    for (double p : dist.probs()) h -= xlog2x(p);
    return h;
}

Bits min_entropy_classical(const Distribution& dist) {
    return -std::log2(dist.max());
}

Bits log2_binomial(std::int64_t N, std::int64_t m) {
    if (N < 0 || m < 0 || m > N)
        throw std::domain_error("log2_binomial: need 0 <= m <= N");
    const std::int64_t k = std::min(m, N - m);
    if (k == 0) return 0.0;
    if (k <= kDirectSumLimit) {
        long double acc = 0.0L;
        for (std::int64_t i = 1; i <= k; ++i)
            acc += std::log2l(static_cast<long double>(N - k + i) / static_cast<long double>(i));
        return static_cast<double>(acc);
    }
    const long double ln = std::lgammal(static_cast<long double>(N) + 1.0L) -
                           std::lgammal(static_cast<long double>(m) + 1.0L) -
                           std::lgammal(static_cast<long double>(N - m) + 1.0L);
    return static_cast<double>(ln / std::log(2.0L));
}

Bits log2_add(Bits a, Bits b) noexcept {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log2(1.0 + std::exp2(b - a));
}

Bits hamming_ball_log_volume(std::int64_t n, double r) {
    if (n < 1) throw std::domain_error("hamming_ball_log_volume: n must be >= 1");
    if (r < 0.0) return -std::numeric_limits<double>::infinity();
    if (r >= 1.0) return static_cast<double>(n);
    // The fuzz keeps r*n that should be an integer from rounding down.
    const auto radius = static_cast<std::int64_t>(std::floor(r * static_cast<double>(n) + 1e-9));
    Bits total = -std::numeric_limits<double>::infinity();
    for (std::int64_t w = 0; w <= std::min(radius, n); ++w)
        total = log2_add(total, log2_binomial(n, w));
    return total;
}

}  // namespace qsample
