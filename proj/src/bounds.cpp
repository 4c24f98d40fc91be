#include "qsample/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "qsample/sampling.hpp"

namespace qsample {

void BoundParams::validate() const {
    if (m < 1 || n < 1) throw std::invalid_argument("m and n must be >= 1");
    if (m > n) throw std::invalid_argument("m must not exceed n");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
    if (!(epsilon_hat >= epsilon && epsilon_hat < 1.0)) throw std::invalid_argument("epsilon_hat must lie in [epsilon,1)");
    if (!(beta > 0.0 && beta < 0.5)) throw std::invalid_argument("beta must lie in (0,1/2)");
    if (a > 1) throw std::invalid_argument("a must be 0 or 1");
    if (!(c >= 0.5 && c <= 1.0)) throw std::invalid_argument("c must lie in [1/2,1]");
    if (!(w_obs >= 0.0 && w_obs <= 1.0)) throw std::invalid_argument("w must lie in [0,1]");
}

Bits ideal_state_bound(std::size_t n, double c, double w, double delta) {
    const double nn = static_cast<double>(n);
    return -nn * std::log2(c) - nn * extended_binary_entropy(w + delta);
}

BoundResult theorem_bound(const BoundParams& p) {
    p.validate();
    const double delta = delta_from_epsilon(p.m, p.n, p.epsilon);
    return {delta, smoothing_parameter(p.epsilon, p.beta), ideal_state_bound(p.n, p.c, p.w_obs, delta),
            failure_probability(p.epsilon_hat, p.beta)};
}

double failure_probability(double epsilon_hat, double beta) {
    if (!(epsilon_hat > 0.0 && epsilon_hat <= 1.0)) throw std::domain_error("failure_probability: epsilon_hat outside (0,1]");
    if (!(beta > 0.0 && beta < 0.5)) throw std::domain_error("failure_probability: beta outside (0,1/2)");
    return std::exp((1.0 - 2.0 * beta) * std::log(epsilon_hat));
}

double smoothing_parameter(double epsilon, double beta) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("smoothing_parameter: epsilon outside (0,1)");
    if (!(beta > 0.0 && beta < 0.5)) throw std::domain_error("smoothing_parameter: beta outside (0,1/2)");
    return 2.0 * epsilon + 2.0 * std::exp(beta * std::log(epsilon));
}

double pa_distance(Bits h_min, double ell, double eps_smooth) {
    if (ell < 0.0) throw std::domain_error("pa_distance: ell must be >= 0");
    return std::exp2(-0.5 * (h_min - ell)) + 2.0 * eps_smooth;
}

double extractable_length(Bits h_min, double eps_pa, double eps_smooth) {
    const double margin = eps_pa - 2.0 * eps_smooth;
    if (!(margin > 0.0)) throw std::domain_error("extractable_length: requires eps_pa > 2 eps_smooth");
    return h_min + 2.0 * std::log2(margin);
}

}  // namespace qsample
