#include "qsample/qrng.hpp"

#include <cmath>
#include <stdexcept>

#include "qsample/bounds.hpp"
#include "qsample/entropy.hpp"
#include "qsample/sampling.hpp"

namespace qsample {

LengthFormula parse_length_formula(std::string_view name) {
    if (name == "paper" || name == "single_log") return LengthFormula::single_log;
    if (name == "two-log" || name == "two_log") return LengthFormula::two_log;
    throw std::invalid_argument("unknown length formula: " + std::string(name));
}

std::string_view to_string(LengthFormula f) noexcept {
    return f == LengthFormula::two_log ? "two-log" : "paper";
}

void QrngParams::validate() const {
    if (m < 1) throw std::invalid_argument("m must be >= 1");
    if (m > n_total || n() < m) throw std::invalid_argument("need n = N - m >= m");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!(beta > 0.0 && beta < 0.5)) throw std::invalid_argument("beta must lie in (0,1/2)");
    if (!(w_obs >= 0.0 && w_obs <= 1.0)) throw std::invalid_argument("w must lie in [0,1]");
}

double epsilon_pa(double epsilon, double beta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon_pa: epsilon outside (0,1)");
    if (!(beta > 0.0 && beta < 0.5)) throw std::domain_error("epsilon_pa: beta outside (0,1/2)");
    return 5.0 * epsilon + 4.0 * std::exp(beta * std::log(epsilon));
}

double qrng_length(const QrngParams& p) {
    p.validate();
    const double delta = delta_from_epsilon(p.m, p.n(), p.epsilon);
    const double penalty = -std::log2(p.epsilon) * (p.formula == LengthFormula::two_log ? 2.0 : 1.0);
    return static_cast<double>(p.n()) * (1.0 - extended_binary_entropy(p.w_obs + delta)) - penalty -
           log2_binomial(static_cast<std::int64_t>(p.n_total), static_cast<std::int64_t>(p.m));
}

double asymptotic_rate(double w) {
    if (w < 0.0) throw std::domain_error("asymptotic_rate: w must be >= 0");
    if (w > 0.5) return 0.0;
    return 1.0 - binary_entropy(w);
}

std::pair<std::size_t, std::size_t> split_total(std::size_t n_total, double m_fraction) {
    if (!(m_fraction > 0.0)) throw std::domain_error("split_total: m fraction must be > 0");
    const auto n = static_cast<std::size_t>(std::llround(static_cast<double>(n_total) / (1.0 + m_fraction)));
    return {n, n_total - std::min(n, n_total)};
}

RatePoint rate_point(const QrngParams& p) {
    p.validate();
    RatePoint pt;
    pt.n_total = p.n_total;
    pt.n = p.n();
    pt.m = p.m;
    pt.delta = delta_from_epsilon(p.m, p.n(), p.epsilon);
    pt.ell = qrng_length(p);
    pt.vacuous = !(pt.ell > 0.0);
    pt.rate = pt.vacuous ? 0.0 : pt.ell / static_cast<double>(p.n_total);
    pt.eps_pa = epsilon_pa(p.epsilon, p.beta);
    pt.failure_prob = failure_probability(p.epsilon, p.beta);
    return pt;
}

std::vector<RatePoint> rate_curve(const std::vector<std::size_t>& n_values, double m_fraction, double epsilon,
                                  double beta, double w_obs, LengthFormula formula) {
    std::vector<RatePoint> out;
    out.reserve(n_values.size());
    for (std::size_t total : n_values) {
        const auto [n, m] = split_total(total, m_fraction);
        QrngParams p{total, m, epsilon, beta, w_obs, formula};
        try {
            out.push_back(rate_point(p));
        } catch (const std::invalid_argument& e) {
            RatePoint bad;
            bad.n_total = total;
            bad.n = n;
            bad.m = m;
            bad.delta = bad.ell = std::nan("");
            bad.vacuous = true;
            bad.feasible = false;
            bad.diagnostic = e.what();
            out.push_back(std::move(bad));
        }
    }
    return out;
}

std::size_t break_even_total(std::size_t lo, std::size_t hi, double m_fraction, double epsilon, double beta,
                             double w_obs, LengthFormula formula) {
    auto positive = [&](std::size_t total) {
        const auto [n, m] = split_total(total, m_fraction);
        if (m < 1 || m > n) return false;
        return qrng_length({total, m, epsilon, beta, w_obs, formula}) > 0.0;
    };
    if (!positive(hi)) return 0;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (positive(mid)) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

}  // namespace qsample
