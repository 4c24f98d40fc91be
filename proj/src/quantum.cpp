#include "qsample/quantum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qsample/guessing.hpp"

namespace qsample {

namespace {

double norm_squared(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto& x : v) s += std::norm(x);
    return s;
}

std::size_t qubit_count(std::size_t dim, std::size_t cap, const char* what) {
    if (dim < 2 || !std::has_single_bit(dim))
        throw std::invalid_argument(std::string(what) + ": dimension must be a power of two >= 2");
    const auto s = static_cast<std::size_t>(std::countr_zero(dim));
    if (s > cap) throw std::length_error(std::string(what) + ": too many qubits");
    return s;
}

std::size_t bit_of(std::size_t qubits, std::size_t qubit) {
    return qubits - 1 - qubit;
}

// Rows are <mu_x|, so applying it maps amplitudes into the basis of m.
Unitary2 analyzer(const ProjectiveMeasurement2& m) {
    return adjoint(m.as_unitary());
}

Amplitudes rotate_all(Amplitudes amps, std::size_t qubits, const Unitary2& g) {
    for (std::size_t q = 0; q < qubits; ++q) apply_single_qubit(amps, qubits, q, g);
    return amps;
}

void check_words(std::span<const Complex> coeffs, std::span<const Word> words) {
    if (coeffs.size() != words.size() || words.empty())
        throw std::invalid_argument("superposition check: need one coefficient per word");
    const std::size_t n = words.front().size();
    if (n > kMaxQubits) throw std::length_error("superposition check: too many qubits");
    std::vector<std::string> seen;
    for (const auto& w : words) {
        if (w.size() != n || w.alphabet() != 2) throw std::invalid_argument("superposition check: words must be binary of equal length");
        seen.push_back(w.to_string());
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("superposition check: duplicate basis words");
    if (std::abs(norm_squared(coeffs) - 1.0) > kStateTolerance)
        throw std::invalid_argument("superposition check: coefficients not normalized");
}

std::size_t word_index(const Word& w) {
    std::size_t idx = 0;
    for (Symbol s : w.symbols()) idx = (idx << 1) | s;
    return idx;
}

Word index_word(std::size_t idx, std::size_t length) {
    std::vector<Symbol> bits(length);
    for (std::size_t i = 0; i < length; ++i) bits[i] = static_cast<Symbol>((idx >> (length - 1 - i)) & 1u);
    return Word(std::move(bits));
}

// <nu_j|mu_i> over the full product, as an amplitude.
Complex product_overlap(const ProjectiveMeasurement2& m, const Word& i, const ProjectiveMeasurement2& n,
                        std::size_t j_index) {
    Complex amp = 1.0;
    const std::size_t len = i.size();
    for (std::size_t l = 0; l < len; ++l) {
        const auto& mu = m.vec(i[l]);
        const auto& nu = n.vec((j_index >> (len - 1 - l)) & 1u);
        amp *= std::conj(nu[0]) * mu[0] + std::conj(nu[1]) * mu[1];
    }
    return amp;
}

}  // namespace

Unitary2 identity_unitary() noexcept {
    return {1.0, 0.0, 0.0, 1.0};
}

Unitary2 hadamard_unitary() noexcept {
    const double h = 1.0 / std::numbers::sqrt2;
    return {h, h, h, -h};
}

Unitary2 adjoint(const Unitary2& u) noexcept {
    return {std::conj(u[0]), std::conj(u[2]), std::conj(u[1]), std::conj(u[3])};
}

bool is_unitary(const Unitary2& u, double tol) noexcept {
    const Unitary2 a = adjoint(u);
    const Complex p00 = a[0] * u[0] + a[1] * u[2];
    const Complex p01 = a[0] * u[1] + a[1] * u[3];
    const Complex p11 = a[2] * u[1] + a[3] * u[3];
    return std::abs(p00 - 1.0) <= tol && std::abs(p11 - 1.0) <= tol && std::abs(p01) <= tol;
}

Unitary2 random_unitary(Rng& rng) {
    std::normal_distribution<double> gauss;
    Qubit c0{Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng))};
    Qubit c1{Complex(gauss(rng), gauss(rng)), Complex(gauss(rng), gauss(rng))};
    const double n0 = std::sqrt(std::norm(c0[0]) + std::norm(c0[1]));
    c0[0] /= n0;
    c0[1] /= n0;
    const Complex proj = std::conj(c0[0]) * c1[0] + std::conj(c0[1]) * c1[1];
    c1[0] -= proj * c0[0];
    c1[1] -= proj * c0[1];
    const double n1 = std::sqrt(std::norm(c1[0]) + std::norm(c1[1]));
    c1[0] /= n1;
    c1[1] /= n1;
    return {c0[0], c1[0], c0[1], c1[1]};
}

ProjectiveMeasurement2::ProjectiveMeasurement2(Qubit vec0, Qubit vec1) : vec0_(vec0), vec1_(vec1) {
    const double n0 = std::norm(vec0_[0]) + std::norm(vec0_[1]);
    const double n1 = std::norm(vec1_[0]) + std::norm(vec1_[1]);
    const Complex inner = std::conj(vec0_[0]) * vec1_[0] + std::conj(vec0_[1]) * vec1_[1];
    if (std::abs(n0 - 1.0) > kStateTolerance || std::abs(n1 - 1.0) > kStateTolerance)
        throw std::invalid_argument("projective measurement: vectors must be unit norm");
    if (std::abs(inner) > kStateTolerance)
        throw std::invalid_argument("projective measurement: vectors must be orthogonal");
}

ProjectiveMeasurement2 ProjectiveMeasurement2::computational() {
    return ProjectiveMeasurement2({1.0, 0.0}, {0.0, 1.0});
}

ProjectiveMeasurement2 ProjectiveMeasurement2::hadamard() {
    return from_unitary(hadamard_unitary());
}

ProjectiveMeasurement2 ProjectiveMeasurement2::rotated(double theta) {
    return ProjectiveMeasurement2({std::cos(theta), std::sin(theta)}, {-std::sin(theta), std::cos(theta)});
}

ProjectiveMeasurement2 ProjectiveMeasurement2::from_unitary(const Unitary2& u) {
    if (!is_unitary(u)) throw std::invalid_argument("projective measurement: matrix is not unitary");
    return ProjectiveMeasurement2({u[0], u[2]}, {u[1], u[3]});
}

Unitary2 ProjectiveMeasurement2::as_unitary() const noexcept {
    return {vec0_[0], vec1_[0], vec0_[1], vec1_[1]};
}

double overlap_c(const ProjectiveMeasurement2& m, const ProjectiveMeasurement2& n) {
    double c = 0.0;
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y) {
            const Complex inner = std::conj(m.vec(x)[0]) * n.vec(y)[0] + std::conj(m.vec(x)[1]) * n.vec(y)[1];
            c = std::max(c, std::norm(inner));
        }
    return std::min(c, 1.0);
}

PureState::PureState(Amplitudes amplitudes)
    : amplitudes_(std::move(amplitudes)), qubits_(qubit_count(amplitudes_.size(), kMaxQubits, "pure state")) {
    if (std::abs(norm_squared(amplitudes_) - 1.0) > kStateTolerance)
        throw std::invalid_argument("pure state: not normalized");
}

DensityOperator::DensityOperator(CMatrix matrix)
    : matrix_(std::move(matrix)), qubits_(qubit_count(matrix_.dim(), kMaxDensityQubits, "density operator")) {
    if (matrix_.hermiticity_defect() > kStateTolerance)
        throw std::invalid_argument("density operator: not Hermitian");
    if (std::abs(matrix_.trace() - 1.0) > kStateTolerance)
        throw std::invalid_argument("density operator: trace != 1");
    if (hermitian_eigenvalues(matrix_).front() < -kStateTolerance)
        throw std::invalid_argument("density operator: negative eigenvalue");
}

DensityOperator DensityOperator::from_pure(const PureState& psi) {
    return DensityOperator(CMatrix::outer(psi.amplitudes()));
}

void apply_single_qubit(Amplitudes& amps, std::size_t qubits, std::size_t target, const Unitary2& g) {
    if (target >= qubits) throw std::out_of_range("apply_single_qubit: target out of range");
    const std::size_t stride = std::size_t{1} << bit_of(qubits, target);
    for (std::size_t base = 0; base < amps.size(); base += 2 * stride)
        for (std::size_t i = base; i < base + stride; ++i) {
            const Complex x0 = amps[i], x1 = amps[i + stride];
            amps[i] = g[0] * x0 + g[1] * x1;
            amps[i + stride] = g[2] * x0 + g[3] * x1;
        }
}

PureState product_basis_state(const Unitary2& u, const Word& word) {
    if (!is_unitary(u)) throw std::invalid_argument("product_basis_state: matrix is not unitary");
    if (word.alphabet() != 2) throw std::invalid_argument("product_basis_state: word must be binary");
    if (word.size() > kMaxQubits) throw std::length_error("product_basis_state: too many qubits");
    Amplitudes amps{1.0};
    for (Symbol b : word.symbols()) {
        const Complex c0 = u[b], c1 = u[2 + b];  // column b
        Amplitudes next(amps.size() * 2);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * c0;
            next[2 * i + 1] = amps[i] * c1;
        }
        amps = std::move(next);
    }
    return PureState(std::move(amps));
}

Amplitudes expand_in_basis(const PureState& psi, const Unitary2& u) {
    return rotate_all(psi.amplitudes(), psi.qubits(), adjoint(u));
}

namespace {

struct SubsetLayout {
    std::vector<std::size_t> measured_bits;  // amplitude bit of each measured qubit, in tau order
    std::vector<std::size_t> kept_bits;
};

SubsetLayout layout(std::size_t qubits, const SubsetIndex& tau) {
    if (tau.universe() != qubits) throw std::invalid_argument("measurement: subset universe != qubit count");
    if (tau.size() < 1 || tau.size() >= qubits) throw std::invalid_argument("measurement: need 1 <= |tau| < s");
    SubsetLayout out;
    for (std::size_t q : tau.indices()) out.measured_bits.push_back(bit_of(qubits, q));
    for (std::size_t q : tau.complement()) out.kept_bits.push_back(bit_of(qubits, q));
    return out;
}

std::size_t gather(std::size_t index, const std::vector<std::size_t>& bits) {
    std::size_t out = 0;
    for (std::size_t b : bits) out = (out << 1) | ((index >> b) & 1u);
    return out;
}

Amplitudes rotate_subset(const PureState& psi, const SubsetIndex& tau, const ProjectiveMeasurement2& m) {
    Amplitudes amps = psi.amplitudes();
    const Unitary2 g = analyzer(m);
    for (std::size_t q : tau.indices()) apply_single_qubit(amps, psi.qubits(), q, g);
    return amps;
}

}  // namespace

std::vector<double> subset_outcome_probabilities(const PureState& psi, const SubsetIndex& tau,
                                                 const ProjectiveMeasurement2& m) {
    const auto lay = layout(psi.qubits(), tau);
    const Amplitudes amps = rotate_subset(psi, tau, m);
    std::vector<double> probs(std::size_t{1} << tau.size(), 0.0);
    for (std::size_t i = 0; i < amps.size(); ++i) probs[gather(i, lay.measured_bits)] += std::norm(amps[i]);
    return probs;
}

MeasurementRecord collapse(const PureState& psi, const SubsetIndex& tau, const ProjectiveMeasurement2& m,
                           const Word& outcome) {
    const auto lay = layout(psi.qubits(), tau);
    if (outcome.size() != tau.size() || outcome.alphabet() != 2)
        throw std::invalid_argument("collapse: outcome must be a binary word of length |tau|");
    const std::size_t want = word_index(outcome);
    const Amplitudes amps = rotate_subset(psi, tau, m);

    Amplitudes post(std::size_t{1} << lay.kept_bits.size(), 0.0);
    double prob = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (gather(i, lay.measured_bits) != want) continue;
        post[gather(i, lay.kept_bits)] = amps[i];
        prob += std::norm(amps[i]);
    }
    if (!(prob > 0.0)) throw std::domain_error("collapse: outcome has probability zero");
    const double scale = 1.0 / std::sqrt(prob);
    for (auto& x : post) x *= scale;
    return {tau, outcome, PureState(std::move(post)), prob};
}

MeasurementRecord measure_subset(const PureState& psi, const SubsetIndex& tau, const ProjectiveMeasurement2& m,
                                 Rng& rng) {
    const auto probs = subset_outcome_probabilities(psi, tau, m);
    double total = 0.0;
    for (double p : probs) total += p;
    std::uniform_real_distribution<double> uniform(0.0, total);
    const double u = uniform(rng);
    std::size_t chosen = probs.size();
    double cumulative = 0.0;
    for (std::size_t x = 0; x < probs.size(); ++x) {
        if (probs[x] <= 0.0) continue;
        chosen = x;
        cumulative += probs[x];
        if (u < cumulative) break;
    }
    return collapse(psi, tau, m, index_word(chosen, tau.size()));
}

Distribution outcome_distribution(const PureState& psi, const ProjectiveMeasurement2& n) {
    const Amplitudes amps = rotate_all(psi.amplitudes(), psi.qubits(), analyzer(n));
    std::vector<double> probs(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) probs[i] = std::norm(amps[i]);
    return Distribution(std::move(probs));
}

Distribution outcome_distribution(const DensityOperator& rho, const ProjectiveMeasurement2& n) {
    const std::size_t dim = rho.matrix().dim();
    const std::size_t s = rho.qubits();
    const Unitary2 g = analyzer(n);
    // p(j) = (G rho G^dagger)_{jj}, G = analyzer^{(x)s}; rotate columns, then rows.
    CMatrix work = rho.matrix();
    for (std::size_t c = 0; c < dim; ++c) {
        Amplitudes col(dim);
        for (std::size_t r = 0; r < dim; ++r) col[r] = work(r, c);
        col = rotate_all(std::move(col), s, g);
        for (std::size_t r = 0; r < dim; ++r) work(r, c) = col[r];
    }
    const Unitary2 gc = {std::conj(g[0]), std::conj(g[1]), std::conj(g[2]), std::conj(g[3])};
    std::vector<double> probs(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        Amplitudes row(dim);
        for (std::size_t c = 0; c < dim; ++c) row[c] = work(r, c);
        row = rotate_all(std::move(row), s, gc);
        probs[r] = std::max(0.0, row[r].real());
    }
    return Distribution(std::move(probs));
}

Bits min_entropy_of_measurement(const PureState& psi, const ProjectiveMeasurement2& n) {
    return min_entropy_classical(outcome_distribution(psi, n));
}

Bits min_entropy_of_measurement(const DensityOperator& rho, const ProjectiveMeasurement2& n) {
    return min_entropy_classical(outcome_distribution(rho, n));
}

double product_transition_probability(const ProjectiveMeasurement2& m, const Word& i,
                                      const ProjectiveMeasurement2& n, const Word& j) {
    if (i.size() != j.size()) throw std::invalid_argument("transition probability: length mismatch");
    double p = 1.0;
    for (std::size_t l = 0; l < i.size(); ++l) {
        const auto& mu = m.vec(i[l]);
        const auto& nu = n.vec(j[l]);
        p *= std::norm(std::conj(nu[0]) * mu[0] + std::conj(nu[1]) * mu[1]);
    }
    return p;
}

std::vector<Word> good_words(std::size_t s, const SubsetIndex& tau, Symbol a, double delta) {
    if (s > kMaxQubits) throw std::length_error("good_words: too many qubits");
    if (a > 1) throw std::invalid_argument("good_words: reference symbol must be 0 or 1");
    std::vector<Word> out;
    for (std::size_t idx = 0; idx < (std::size_t{1} << s); ++idx) {
        Word q = index_word(idx, s);
        if (is_good_word(q, tau, a, delta)) out.push_back(std::move(q));
    }
    return out;
}

PureState random_span_B_state(std::size_t s, const SubsetIndex& tau, Symbol a, double delta, const Unitary2& u,
                              Rng& rng) {
    if (!is_unitary(u)) throw std::invalid_argument("random_span_B_state: matrix is not unitary");
    const auto support = good_words(s, tau, a, delta);
    if (support.empty()) throw std::domain_error("random_span_B_state: good-word set is empty");
    std::normal_distribution<double> gauss;
    Amplitudes coeffs(std::size_t{1} << s, 0.0);
    for (const auto& q : support) coeffs[word_index(q)] = Complex(gauss(rng), gauss(rng));
    const double norm = std::sqrt(norm_squared(coeffs));
    for (auto& x : coeffs) x /= norm;
    return PureState(rotate_all(std::move(coeffs), s, u));
}

InequalitySides lemma1_check(std::span<const Complex> coeffs, std::span<const Word> words,
                        const ProjectiveMeasurement2& basis, const ProjectiveMeasurement2& n) {
    check_words(coeffs, words);
    const std::size_t len = words.front().size();
    const std::size_t outcomes = std::size_t{1} << len;

    Amplitudes superposition(outcomes, 0.0);
    for (std::size_t t = 0; t < words.size(); ++t) superposition[word_index(words[t])] = coeffs[t];
    superposition = rotate_all(std::move(superposition), len, basis.as_unitary());
    const Bits lhs = min_entropy_of_measurement(PureState(std::move(superposition)), n);

    std::vector<double> mixture(outcomes, 0.0);
    for (std::size_t j = 0; j < outcomes; ++j) {
        const Word jw = index_word(j, len);
        for (std::size_t t = 0; t < words.size(); ++t)
            mixture[j] += std::norm(coeffs[t]) * product_transition_probability(basis, words[t], n, jw);
    }
    const Bits rhs = min_entropy_classical(Distribution(std::move(mixture))) -
                     std::log2(static_cast<double>(words.size()));
    return {lhs, rhs};
}

InequalitySides lemma1_check_orthogonal_branches(std::span<const Complex> coeffs, std::span<const Word> words,
                                            const ProjectiveMeasurement2& basis, const ProjectiveMeasurement2& n) {
    check_words(coeffs, words);
    const std::size_t len = words.front().size();
    const std::size_t outcomes = std::size_t{1} << len;
    const std::size_t branches = words.size();

    // Conditional states of E given outcome j: e_j = sum_i alpha_i <nu_j|mu_i> |i>.
    std::vector<CMatrix> conditional;
    conditional.reserve(outcomes);
    double guess_mixture = 0.0;
    std::vector<double> best_given_branch(branches, 0.0);
    for (std::size_t j = 0; j < outcomes; ++j) {
        Amplitudes e(branches);
        for (std::size_t t = 0; t < branches; ++t) {
            const Complex overlap = product_overlap(basis, words[t], n, j);
            e[t] = coeffs[t] * overlap;
            best_given_branch[t] = std::max(best_given_branch[t], std::norm(overlap));
        }
        conditional.push_back(CMatrix::outer(e));
    }
    for (std::size_t t = 0; t < branches; ++t) guess_mixture += std::norm(coeffs[t]) * best_given_branch[t];

    // Only the side of the inequality matters here, so the solver may stop as
    // soon as its certified upper bound clears the target.
    const double rhs = -std::log2(guess_mixture) - std::log2(static_cast<double>(branches));
    const double target = guess_mixture * static_cast<double>(branches) * (1.0 - 1e-12);
    const auto guess = guessing_probability(conditional, 1e-11, 4000, target);
    return {-std::log2(guess.upper), rhs};
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.matrix().dim() != sigma.matrix().dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
    double sum = 0.0;
    for (double ev : hermitian_eigenvalues(rho.matrix() - sigma.matrix())) sum += std::abs(ev);
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

InequalitySides maassen_uffink_check(const DensityOperator& rho, const ProjectiveMeasurement2& m,
                                const ProjectiveMeasurement2& n) {
    if (rho.qubits() != 1) throw std::invalid_argument("maassen_uffink_check: single-qubit state required");
    const Bits lhs = shannon_entropy(outcome_distribution(rho, m)) + shannon_entropy(outcome_distribution(rho, n));
    return {lhs, -std::log2(overlap_c(m, n))};
}

DensityOperator random_qubit_density(Rng& rng) {
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    double x = gauss(rng), y = gauss(rng), z = gauss(rng);
    const double len = std::sqrt(x * x + y * y + z * z);
    const double r = std::cbrt(uniform(rng)) / (len > 0.0 ? len : 1.0);
    x *= r;
    y *= r;
    z *= r;
    return DensityOperator(CMatrix(2, {Complex(0.5 * (1.0 + z)), Complex(0.5 * x, -0.5 * y),
                                       Complex(0.5 * x, 0.5 * y), Complex(0.5 * (1.0 - z))}));
}

}  // namespace qsample
