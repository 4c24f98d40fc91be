#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "qsample/sampling.hpp"

using namespace qsample;

TEST_CASE("word parsing round trip") {
    for (const char* s : {"0", "0101", "111000", "0000000000000001"}) CHECK(Word::parse(s).to_string() == s);
    CHECK(Word::parse("012012", 3).to_string() == "012012");
    CHECK_THROWS_AS(Word::parse("012"), std::invalid_argument);
    CHECK_THROWS_AS(Word::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Word::parse("0a1"), std::invalid_argument);
}

TEST_CASE("subset index") {
    const SubsetIndex s({1, 3}, 5);
    CHECK(s.contains(3));
    CHECK_FALSE(s.contains(2));
    CHECK(s.complement() == std::vector<std::size_t>{0, 2, 4});
    CHECK_THROWS_AS(SubsetIndex({3, 1}, 5), std::invalid_argument);
    CHECK_THROWS_AS(SubsetIndex({1, 1}, 5), std::invalid_argument);
    CHECK_THROWS_AS(SubsetIndex({5}, 5), std::invalid_argument);
}

TEST_CASE("relative hamming weight and estimate") {
    CHECK(relative_hamming_weight(Word::parse("0000"), 0) == 0.0);
    CHECK(relative_hamming_weight(Word::parse("0101"), 0) == 0.5);
    CHECK(relative_hamming_weight(Word::parse("012012", 3), 1) == doctest::Approx(4.0 / 6.0));
    CHECK(estimate(Word::parse("00"), 0) == 0.0);
    CHECK(estimate(Word::parse("01"), 0) == 0.5);
    CHECK(estimate(Word::parse("111"), 0) == 1.0);
    CHECK_THROWS(relative_hamming_weight(Word::parse("01"), 2));
}

TEST_CASE("is_good_word") {
    for (std::size_t t = 0; t < 4; ++t) CHECK(is_good_word(Word::parse("0000"), SubsetIndex({t}, 4), 0, 0.0));
    CHECK_FALSE(is_good_word(Word::parse("0001"), SubsetIndex({3}, 4), 0, 0.25));
    CHECK(is_good_word(Word::parse("0101"), SubsetIndex({0, 1}, 4), 0, 0.0));
    CHECK_THROWS(is_good_word(Word::parse("0101"), SubsetIndex({0, 1, 2, 3}, 4), 0, 0.1));
    CHECK_THROWS(is_good_word(Word::parse("0101"), SubsetIndex({0}, 5), 0, 0.1));
}

TEST_CASE("is_good_word is invariant under relabeling positions") {
    Rng rng(5);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + t % 9;
        std::vector<Symbol> bits(n);
        for (auto& b : bits) b = static_cast<Symbol>(rng() & 1u);
        const SubsetIndex tau = sample_subset(n, 1 + rng() % (n - 1), rng);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        std::vector<Symbol> moved(n);
        for (std::size_t i = 0; i < n; ++i) moved[perm[i]] = bits[i];
        std::vector<std::size_t> moved_tau;
        for (std::size_t i : tau.indices()) moved_tau.push_back(perm[i]);
        std::sort(moved_tau.begin(), moved_tau.end());
        const double delta = 0.1 * static_cast<double>(t % 6);
        CHECK(is_good_word(Word(bits), tau, 0, delta) ==
              is_good_word(Word(moved), SubsetIndex(moved_tau, n), 0, delta));
    }
}

TEST_CASE("sample_subset distribution") {
    Rng one(9);
    CHECK(sample_subset(3, 3, one).indices() == std::vector<std::size_t>{0, 1, 2});
    CHECK_THROWS(sample_subset(3, 0, one));
    CHECK_THROWS(sample_subset(3, 4, one));

    constexpr int kDraws = 100000;
    int zeros = 0;
    for (int s = 0; s < kDraws; ++s) {
        Rng rng(static_cast<std::uint64_t>(s));
        zeros += sample_subset(2, 1, rng).indices()[0] == 0;
    }
    CHECK(std::abs(zeros / double(kDraws) - 0.5) < 0.01);

    std::map<std::vector<std::size_t>, int> counts;
    Rng rng(21);
    for (int s = 0; s < kDraws; ++s) ++counts[sample_subset(6, 2, rng).indices()];
    CHECK(counts.size() == 15);
    const double p = 1.0 / 15.0;
    const double sigma = std::sqrt(kDraws * p * (1 - p));
    double chi2 = 0.0;
    for (const auto& [subset, c] : counts) {
        CHECK(std::abs(c - kDraws * p) < 3.5 * sigma);
        chi2 += (c - kDraws * p) * (c - kDraws * p) / (kDraws * p);
    }
    // 14 degrees of freedom; 99.9% quantile is 36.1.
    CHECK(chi2 < 36.1);
}

TEST_CASE("error_prob_exact small cases") {
    CHECK(error_prob_exact(4, 2, 1.0, 2, 0) == 0.0);
    CHECK(error_prob_exact(4, 2, 0.25, 2, 0) == 1.0);
    const double e = error_prob_exact(8, 4, 0.3, 2, 0);
    CHECK(e == doctest::Approx(error_prob_brute_force(8, 4, 0.3, 2, 0)).epsilon(1e-14));
    CHECK(e <= error_prob_bound(8, 4, 0.3));
    CHECK_THROWS_AS(error_prob_exact(65, 4, 0.3, 2, 0), std::length_error);
    CHECK_THROWS_AS(error_prob_exact(8, 8, 0.3, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(error_prob_brute_force(20, 4, 0.3, 2, 0), std::length_error);
}

TEST_CASE("exact path agrees with brute force enumeration") {
    std::vector<double> deltas;
    for (int i = 0; i <= 20; ++i) deltas.push_back(0.05 * i);
    for (std::size_t n = 2; n <= 12; ++n)
        for (std::size_t k = 1; k < n; ++k) {
            const auto brute = error_prob_brute_force(n, k, deltas, 2, 0);
            for (std::size_t i = 0; i < deltas.size(); ++i) {
                INFO("N=" << n << " k=" << k << " delta=" << deltas[i]);
                CHECK(std::abs(brute[i] - error_prob_exact(n, k, deltas[i], 2, 0)) < 1e-13);
                CHECK(std::abs(brute[i] - error_prob_exact(n, k, deltas[i], 2, 1)) < 1e-13);
            }
        }
    for (std::size_t n = 2; n <= 7; ++n)
        for (std::size_t k = 1; k < n; ++k) {
            const auto brute = error_prob_brute_force(n, k, deltas, 3, 2);
            for (std::size_t i = 0; i < deltas.size(); ++i)
                CHECK(std::abs(brute[i] - error_prob_exact(n, k, deltas[i], 3, 2)) < 1e-13);
        }
}

TEST_CASE("exact failure probability is nonincreasing in delta") {
    for (std::size_t n : {10u, 33u, 64u})
        for (std::size_t k : {std::size_t{1}, n / 4, n / 2}) {
            double prev = 1.0;
            for (int i = 0; i <= 50; ++i) {
                const double e = error_prob_exact(n, k, 0.02 * i, 2, 0);
                CHECK(e <= prev + 1e-15);
                CHECK(e >= 0.0);
                prev = e;
            }
        }
}

TEST_CASE("monte carlo") {
    const auto sure = error_prob_monte_carlo(10, 3, 1.0, 2, 0, 200, 1);
    CHECK(sure.estimate == 0.0);

    const auto tiny = error_prob_monte_carlo(4, 2, 0.25, 2, 0, 2000, 7);
    CHECK(tiny.estimate == 1.0);
    CHECK(tiny.standard_error == 0.0);

    // Lane count must not change the result.
    const auto a = error_prob_monte_carlo(40, 10, 0.2, 2, 0, 500, 99, 1);
    const auto b = error_prob_monte_carlo(40, 10, 0.2, 2, 0, 500, 99, 3);
    CHECK(a.estimate == b.estimate);
    CHECK(a.worst_weight == b.worst_weight);

    const double exact = error_prob_exact(40, 10, 0.2, 2, 0);
    const auto big = error_prob_monte_carlo(40, 10, 0.2, 2, 0, 20000, 5);
    // The max over weight classes is biased upward by at most a few sigma.
    CHECK(big.estimate >= exact - 4 * big.standard_error - 1e-12);
    CHECK(big.estimate <= exact + 6 * big.standard_error + 1e-12);

    const auto large = error_prob_monte_carlo(1000, 500, 0.1, 2, 0, 60, 3);
    CHECK(large.estimate <= error_prob_bound(1000, 500, 0.1) + 3 * large.standard_error);
}

TEST_CASE("analytic bound") {
    CHECK(error_prob_bound(4, 2, 0.25) == 1.0);
    CHECK(error_prob_bound(100, 10, 1e-9) == 1.0);
    CHECK(std::abs(error_prob_bound(2000, 1000, 0.1) - 9.171149708e-5) < 1e-13);
    CHECK_THROWS_AS(error_prob_bound(10, 6, 0.1), std::domain_error);
    CHECK_NOTHROW(error_prob_bound(10, 6, 0.1, true));
    CHECK_THROWS_AS(error_prob_bound(10, 2, 0.0), std::domain_error);
}

TEST_CASE("delta from epsilon") {
    CHECK(std::abs(delta_from_epsilon(100, 100, 0.01) - 0.3162676466) < 1e-9);
    const double d = delta_from_epsilon(65421, 934579, 1e-36);
    CHECK(std::abs(d - 0.0504454420) < 1e-9);
    CHECK_THROWS_AS(delta_from_epsilon(200, 100, 0.01), std::domain_error);
    CHECK_NOTHROW(delta_from_epsilon(200, 100, 0.01, true));
    CHECK_THROWS(delta_from_epsilon(10, 10, 0.0));
    CHECK_THROWS(delta_from_epsilon(10, 10, 1.0));

    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        const std::size_t m = 1 + rng() % 5000;
        const std::size_t n = m + rng() % 5000;
        const double eps = std::pow(10.0, -std::uniform_real_distribution<double>(0.5, 36.0)(rng));
        const double delta = delta_from_epsilon(m, n, eps);
        const double back = error_prob_bound(m + n, m, delta);
        CHECK(std::abs(back / (eps * eps) - 1.0) < 1e-9);
    }
}
