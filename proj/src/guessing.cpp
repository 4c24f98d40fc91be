#include "qsample/guessing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qsample {

namespace {

// Eigenvalues below this fraction of the largest are treated as outside
// the support when forming inverse square roots.
constexpr double kSupportCutoff = 1e-13;

double success(std::span<const CMatrix> states, const std::vector<CMatrix>& povm) {
    double p = 0.0;
    for (std::size_t j = 0; j < states.size(); ++j) p += (povm[j] * states[j]).trace().real();
    return p;
}

// Returns S^{-1/2} on the support of S and the projector onto its kernel.
std::pair<CMatrix, CMatrix> inverse_sqrt_on_support(const CMatrix& s) {
    const auto eig = hermitian_eigen(s);
    const double top = std::max(eig.values.back(), 0.0);
    const double cutoff = kSupportCutoff * std::max(top, 1e-300);
    CMatrix inv = hermitian_function(eig, [&](double x) { return x > cutoff ? 1.0 / std::sqrt(x) : 0.0; });
    CMatrix kernel = hermitian_function(eig, [&](double x) { return x > cutoff ? 0.0 : 1.0; });
    return {std::move(inv), std::move(kernel)};
}

std::vector<CMatrix> sandwich(std::span<const CMatrix> inner, const CMatrix& outer, const CMatrix& kernel) {
    std::vector<CMatrix> out;
    out.reserve(inner.size());
    for (const auto& x : inner) {
        CMatrix y = outer * x * outer;
        out.push_back((y + y.adjoint()) * Complex(0.5));
    }
    out.front() += kernel;
    return out;
}

double dual_upper_bound(std::span<const CMatrix> states, const std::vector<CMatrix>& povm) {
    const std::size_t dim = states.front().dim();
    CMatrix y(dim);
    for (std::size_t j = 0; j < states.size(); ++j) y += states[j] * povm[j];
    y = (y + y.adjoint()) * Complex(0.5);
    double shift = 0.0;
    for (const auto& rho : states) shift = std::max(shift, hermitian_eigenvalues(rho - y).back());
    return y.trace().real() + static_cast<double>(dim) * shift;
}

}  // namespace

GuessingProbability guessing_probability(std::span<const CMatrix> states, double gap,
                                         std::size_t max_iterations, double stop_below) {
    if (states.empty()) throw std::invalid_argument("guessing_probability: no states");
    const std::size_t dim = states.front().dim();
    CMatrix total(dim);
    for (const auto& rho : states) {
        if (rho.dim() != dim) throw std::invalid_argument("guessing_probability: dimension mismatch");
        total += rho;
    }

    auto [inv, kernel] = inverse_sqrt_on_support(total);
    std::vector<CMatrix> povm = sandwich(states, inv, kernel);

    GuessingProbability best{success(states, povm), dual_upper_bound(states, povm), 0};
    constexpr std::size_t kCertifyEvery = 10;
    for (std::size_t it = 1; it <= max_iterations && best.upper - best.lower > gap && best.upper > stop_below;
         ++it) {
        std::vector<CMatrix> numerators;
        numerators.reserve(states.size());
        CMatrix g(dim);
        for (std::size_t j = 0; j < states.size(); ++j) {
            numerators.push_back(states[j] * povm[j] * states[j]);
            g += numerators.back();
        }
        auto [g_inv, g_kernel] = inverse_sqrt_on_support(g);
        povm = sandwich(numerators, g_inv, g_kernel);

        best.iterations = it;
        best.lower = std::max(best.lower, success(states, povm));
        if (it % kCertifyEvery == 0) best.upper = std::min(best.upper, dual_upper_bound(states, povm));
    }
    return best;
}

}  // namespace qsample
