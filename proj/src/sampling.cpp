#include "qsample/sampling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace qsample {

Word::Word(std::vector<Symbol> symbols, unsigned alphabet)
    : symbols_(std::move(symbols)), alphabet_(alphabet) {
    if (alphabet_ < 2) throw std::invalid_argument("word: alphabet size must be >= 2");
    if (symbols_.empty()) throw std::invalid_argument("word: empty");
    for (Symbol s : symbols_)
        if (s >= alphabet_) throw std::invalid_argument("word: symbol outside alphabet");
}

Word Word::parse(std::string_view digits, unsigned alphabet) {
    std::vector<Symbol> symbols;
    symbols.reserve(digits.size());
    for (char c : digits) {
        if (c < '0' || c > '9') throw std::invalid_argument("word: non-digit character");
        symbols.push_back(static_cast<Symbol>(c - '0'));
    }
    return Word(std::move(symbols), alphabet);
}

std::string Word::to_string() const {
    std::string out;
    out.reserve(symbols_.size());
    for (Symbol s : symbols_) out.push_back(static_cast<char>('0' + s));
    return out;
}

SubsetIndex::SubsetIndex(std::vector<std::size_t> indices, std::size_t universe)
    : indices_(std::move(indices)), universe_(universe) {
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] >= universe_) throw std::invalid_argument("subset: index out of range");
        if (i > 0 && indices_[i] <= indices_[i - 1])
            throw std::invalid_argument("subset: indices must be strictly increasing");
    }
}

bool SubsetIndex::contains(std::size_t position) const {
    return std::binary_search(indices_.begin(), indices_.end(), position);
}

std::vector<std::size_t> SubsetIndex::complement() const {
    std::vector<std::size_t> out;
    out.reserve(universe_ - indices_.size());
    auto it = indices_.begin();
    for (std::size_t i = 0; i < universe_; ++i) {
        if (it != indices_.end() && *it == i) {
            ++it;
            continue;
        }
        out.push_back(i);
    }
    return out;
}

Word restrict_word(const Word& q, std::span<const std::size_t> positions) {
    std::vector<Symbol> out;
    out.reserve(positions.size());
    for (std::size_t p : positions) {
        if (p >= q.size()) throw std::out_of_range("restrict_word: position out of range");
        out.push_back(q[p]);
    }
    return Word(std::move(out), q.alphabet());
}

double relative_hamming_weight(const Word& q, Symbol a) {
    if (a >= q.alphabet()) throw std::invalid_argument("relative_hamming_weight: symbol outside alphabet");
    const auto differing = std::count_if(q.symbols().begin(), q.symbols().end(),
                                         [a](Symbol s) { return s != a; });
    return static_cast<double>(differing) / static_cast<double>(q.size());
}

SubsetIndex sample_subset(std::size_t N, std::size_t k, Rng& rng) {
    if (k < 1 || k > N) throw std::invalid_argument("sample_subset: need 1 <= k <= N");
    std::vector<std::size_t> pool(N);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, N - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return SubsetIndex(std::move(pool), N);
}

double estimate(const Word& q_tau, Symbol a) {
    return relative_hamming_weight(q_tau, a);
}

bool is_good_word(const Word& q, const SubsetIndex& tau, Symbol a, double delta) {
    if (tau.universe() != q.size()) throw std::invalid_argument("is_good_word: subset universe != word length");
    if (tau.size() < 1 || tau.size() >= q.size())
        throw std::invalid_argument("is_good_word: need 1 <= |tau| < |q|");
    const Word sampled = restrict_word(q, tau.indices());
    const auto rest_positions = tau.complement();
    const Word rest = restrict_word(q, rest_positions);
    return std::abs(estimate(sampled, a) - relative_hamming_weight(rest, a)) <= delta + kWeightTolerance;
}

namespace {

void check_instance(std::size_t N, std::size_t k, unsigned d, Symbol a) {
    if (d < 2) throw std::invalid_argument("alphabet size must be >= 2");
    if (a >= d) throw std::invalid_argument("reference symbol outside alphabet");
    if (k < 1 || k >= N) throw std::invalid_argument("need 1 <= k < N");
}

bool gap_fails(std::size_t N, std::size_t k, std::size_t weight, std::size_t sampled, double delta) {
    const double est = static_cast<double>(sampled) / static_cast<double>(k);
    const double rest = static_cast<double>(weight - sampled) / static_cast<double>(N - k);
    return std::abs(est - rest) > delta + kWeightTolerance;
}

__extension__ typedef unsigned __int128 Count;

std::vector<std::vector<Count>> pascal(std::size_t n) {
    std::vector<std::vector<Count>> c(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        c[i].assign(i + 1, 1);
        for (std::size_t j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
    }
    return c;
}

double ratio(Count num, Count den) {
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
}

}  // namespace

double error_prob_exact(std::size_t N, std::size_t k, double delta, unsigned d, Symbol a) {
    check_instance(N, k, d, a);
    if (N > kExactMaxLength)
        throw std::length_error("error_prob_exact: N exceeds the exact-path cap of 64");
    const auto binom = pascal(N);
    const Count subsets = binom[N][k];
    double worst = 0.0;
    for (std::size_t w = 0; w <= N; ++w) {
        Count failing = 0;
        const std::size_t lo = w + k > N ? w + k - N : 0;
        const std::size_t hi = std::min(w, k);
        for (std::size_t j = lo; j <= hi; ++j)
            if (gap_fails(N, k, w, j, delta)) failing += binom[w][j] * binom[N - w][k - j];
        worst = std::max(worst, ratio(failing, subsets));
    }
    return worst;
}

std::vector<double> error_prob_brute_force(std::size_t N, std::size_t k, std::span<const double> deltas,
                                           unsigned d, Symbol a) {
    check_instance(N, k, d, a);
    double words_d = std::pow(static_cast<double>(d), static_cast<double>(N));
    if (words_d > static_cast<double>(kBruteForceMaxWords))
        throw std::length_error("error_prob_brute_force: d^N exceeds enumeration cap");
    const auto words = static_cast<std::uint64_t>(words_d);

    std::vector<std::uint32_t> subset_masks;
    for (std::uint32_t mask = (1u << k) - 1; mask < (1u << N);) {
        subset_masks.push_back(mask);
        const std::uint32_t low = mask & (~mask + 1);
        const std::uint32_t ripple = mask + low;
        mask = (((ripple ^ mask) >> 2) / low) | ripple;
    }

    // N <= 16 here, so a 16-bit table beats software popcount.
    std::vector<std::uint8_t> bits(std::size_t{1} << N);
    for (std::size_t v = 1; v < bits.size(); ++v) bits[v] = static_cast<std::uint8_t>(bits[v >> 1] + (v & 1u));

    std::vector<double> worst(deltas.size(), 0.0);
    std::vector<std::uint64_t> hist(k + 1);
    for (std::uint64_t code = 0; code < words; ++code) {
        // Bit i of `differs` is set when position i of the word is not a.
        std::uint32_t differs = 0;
        std::uint64_t rest = code;
        for (std::size_t i = 0; i < N; ++i) {
            if (rest % d != a) differs |= 1u << i;
            rest /= d;
        }
        std::fill(hist.begin(), hist.end(), 0);
        for (std::uint32_t mask : subset_masks) ++hist[bits[differs & mask]];
        const auto weight = static_cast<std::size_t>(std::popcount(differs));
        for (std::size_t t = 0; t < deltas.size(); ++t) {
            std::uint64_t failing = 0;
            for (std::size_t j = 0; j <= k; ++j)
                if (hist[j] && gap_fails(N, k, weight, j, deltas[t])) failing += hist[j];
            worst[t] = std::max(worst[t], static_cast<double>(failing) /
                                              static_cast<double>(subset_masks.size()));
        }
    }
    return worst;
}

double error_prob_brute_force(std::size_t N, std::size_t k, double delta, unsigned d, Symbol a) {
    return error_prob_brute_force(N, k, std::span<const double>(&delta, 1), d, a).front();
}

MonteCarloEstimate error_prob_monte_carlo(std::size_t N, std::size_t k, double delta, unsigned d, Symbol a,
                                          std::size_t trials, std::uint64_t seed, unsigned lanes) {
    check_instance(N, k, d, a);
    if (trials < 1) throw std::invalid_argument("error_prob_monte_carlo: trials must be >= 1");
    lanes = std::max(1u, lanes);

    std::vector<std::size_t> failures(N + 1, 0);
    auto run_weight = [&](std::size_t w) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(w >> 32)};
        Rng rng(seq);
        std::size_t fails = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            // Selection sampling: a uniform k-subset of a word whose first w
            // positions differ from a.
            std::size_t remaining = N, remaining_marked = w, sampled = 0;
            for (std::size_t i = 0; i < k; ++i, --remaining) {
                std::uniform_int_distribution<std::size_t> pick(0, remaining - 1);
                if (pick(rng) < remaining_marked) {
                    ++sampled;
                    --remaining_marked;
                }
            }
            if (gap_fails(N, k, w, sampled, delta)) ++fails;
        }
        failures[w] = fails;
    };

    if (lanes == 1) {
        for (std::size_t w = 0; w <= N; ++w) run_weight(w);
    } else {
        std::vector<std::jthread> workers;
        for (unsigned lane = 0; lane < lanes; ++lane)
            workers.emplace_back([&, lane] {
                for (std::size_t w = lane; w <= N; w += lanes) run_weight(w);
            });
    }

    const auto worst = static_cast<std::size_t>(
        std::max_element(failures.begin(), failures.end()) - failures.begin());
    const double p = static_cast<double>(failures[worst]) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), worst};
}

double error_prob_bound(std::size_t N, std::size_t k, double delta, bool allow_large_sample) {
    if (!(delta > 0.0)) throw std::domain_error("error_prob_bound: delta must be > 0");
    if (k < 1 || k > N) throw std::domain_error("error_prob_bound: need 1 <= k <= N");
    if (2 * k > N && !allow_large_sample)
        throw std::domain_error("error_prob_bound: bound only holds for k <= N/2");
    const double n = static_cast<double>(N);
    const double exponent = -delta * delta * static_cast<double>(k) * n / (n + 2.0);
    return std::min(1.0, 2.0 * std::exp(exponent));
}

double delta_from_epsilon(std::size_t m, std::size_t n, double epsilon, bool allow_m_greater_than_n) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("delta_from_epsilon: epsilon outside (0,1)");
    if (m < 1 || n < 1) throw std::domain_error("delta_from_epsilon: m and n must be >= 1");
    if (m > n && !allow_m_greater_than_n) throw std::domain_error("delta_from_epsilon: requires m <= n");
    const double total = static_cast<double>(m + n);
    const double log_term = std::log(2.0) - 2.0 * std::log(epsilon);
    return std::sqrt((total + 2.0) * log_term / (static_cast<double>(m) * total));
}

}  // namespace qsample
