#pragma once

// Source-independent QRNG accounting: N qubits from an untrusted source,
// m of them tested in the X basis, the remaining n = N - m read out in Z
// (overlap c = 1/2) and hashed down to ell bits.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsample {

enum class LengthFormula {
    /// n(1 - Hbar(w + delta)) - log2(1/eps) - log2 C(N, m)
    single_log,
    /// Same with the 2 log2(1/eps) privacy amplification penalty that
    /// follows from eps_pa = 5 eps + 4 eps^beta.
    two_log,
};

LengthFormula parse_length_formula(std::string_view name);
std::string_view to_string(LengthFormula f) noexcept;

struct QrngParams {
    std::size_t n_total = 0;
    std::size_t m = 0;
    double epsilon = 0.0;
    double beta = 0.0;
    double w_obs = 0.0;
    LengthFormula formula = LengthFormula::single_log;

    std::size_t n() const noexcept { return n_total - m; }
    void validate() const;
};

struct RatePoint {
    std::size_t n_total = 0;
    std::size_t n = 0;
    std::size_t m = 0;
    double delta = 0.0;
    double ell = 0.0;
    double rate = 0.0;  ///< ell / N, or 0 when vacuous
    double eps_pa = 0.0;
    double failure_prob = 0.0;
    bool vacuous = false;
    bool feasible = true;
    std::string diagnostic;  ///< why the point is infeasible
};

/// 5 eps + 4 eps^beta.
double epsilon_pa(double epsilon, double beta);

/// Final output length in bits; may be negative.
double qrng_length(const QrngParams& p);

/// 1 - h(w) for w in [0, 1/2], 0 above.
double asymptotic_rate(double w);

/// Test size for a total N when m = fraction * n: n = round(N / (1 + fraction)).
std::pair<std::size_t, std::size_t> split_total(std::size_t n_total, double m_fraction);

RatePoint rate_point(const QrngParams& p);

/// One point per N, in input order. Infeasible N are kept with
/// feasible = false and a diagnostic.
std::vector<RatePoint> rate_curve(const std::vector<std::size_t>& n_values, double m_fraction, double epsilon,
                                  double beta, double w_obs, LengthFormula formula);

/// Smallest N in [lo, hi] with ell > 0 for the given configuration, found by
/// bisection (ell is increasing in N). Returns 0 if ell <= 0 at hi.
std::size_t break_even_total(std::size_t lo, std::size_t hi, double m_fraction, double epsilon, double beta,
                             double w_obs, LengthFormula formula);

}  // namespace qsample
