#pragma once

// Dense simulator over (C^2)^{(x)s} for checking the uncertainty bound on
// explicit small states.
//
// Qubit 0 is the leftmost tensor factor, i.e. the most significant bit of
// an amplitude index. Outcome words list measured qubits in ascending
// order, so they read big-endian in the same sense.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qsample/entropy.hpp"
#include "qsample/hermitian.hpp"
#include "qsample/sampling.hpp"

namespace qsample {

inline constexpr std::size_t kMaxQubits = 14;
/// Density operators are materialized as 2^s x 2^s matrices.
inline constexpr std::size_t kMaxDensityQubits = 6;
inline constexpr double kStateTolerance = 1e-9;

using Amplitudes = std::vector<Complex>;
using Qubit = std::array<Complex, 2>;

/// Row-major 2x2 matrix.
using Unitary2 = std::array<Complex, 4>;

Unitary2 identity_unitary() noexcept;
Unitary2 hadamard_unitary() noexcept;
bool is_unitary(const Unitary2& u, double tol = kStateTolerance) noexcept;
Unitary2 adjoint(const Unitary2& u) noexcept;
/// Haar-distributed 2x2 unitary (Gram-Schmidt on a complex Gaussian matrix).
Unitary2 random_unitary(Rng& rng);

/// A qubit projective measurement given by an orthonormal pair.
class ProjectiveMeasurement2 {
public:
    ProjectiveMeasurement2(Qubit vec0, Qubit vec1);

    static ProjectiveMeasurement2 computational();
    static ProjectiveMeasurement2 hadamard();
    /// {cos t|0> + sin t|1>, -sin t|0> + cos t|1>}
    static ProjectiveMeasurement2 rotated(double theta);
    /// Basis {U|0>, U|1>}.
    static ProjectiveMeasurement2 from_unitary(const Unitary2& u);

    const Qubit& vec(std::size_t x) const { return x == 0 ? vec0_ : vec1_; }
    /// Columns are the basis vectors.
    Unitary2 as_unitary() const noexcept;

private:
    Qubit vec0_;
    Qubit vec1_;
};

/// max_{x,y} |<mu_x|nu_y>|^2, in [1/2, 1] for qubits.
double overlap_c(const ProjectiveMeasurement2& m, const ProjectiveMeasurement2& n);

/// Normalized state vector on s <= kMaxQubits qubits.
class PureState {
public:
    explicit PureState(Amplitudes amplitudes);

    std::size_t qubits() const noexcept { return qubits_; }
    const Amplitudes& amplitudes() const noexcept { return amplitudes_; }

private:
    Amplitudes amplitudes_;
    std::size_t qubits_;
};

/// Hermitian, unit-trace, positive semidefinite matrix on at most
/// kMaxDensityQubits qubits.
class DensityOperator {
public:
    explicit DensityOperator(CMatrix matrix);
    static DensityOperator from_pure(const PureState& psi);

    std::size_t qubits() const noexcept { return qubits_; }
    const CMatrix& matrix() const noexcept { return matrix_; }

private:
    CMatrix matrix_;
    std::size_t qubits_;
};

/// Applies a 2x2 matrix to one qubit of a state vector in place.
void apply_single_qubit(Amplitudes& amplitudes, std::size_t qubits, std::size_t target, const Unitary2& g);

/// U|b_1> (x) ... (x) U|b_s>.
PureState product_basis_state(const Unitary2& u, const Word& word);

/// Coordinates of the state in the basis {U^{(x)s}|q>}.
Amplitudes expand_in_basis(const PureState& psi, const Unitary2& u);

struct MeasurementRecord {
    SubsetIndex subset;
    Word outcome;
    PureState post_state;  ///< on the unmeasured qubits, ascending order
    double probability;
};

/// Born probabilities of every outcome when the qubits in tau are measured
/// with M; indexed big-endian over tau.
std::vector<double> subset_outcome_probabilities(const PureState& psi, const SubsetIndex& tau,
                                                 const ProjectiveMeasurement2& m);

/// Post-measurement state for a given outcome on tau, or throws
/// std::domain_error if that outcome has probability zero.
MeasurementRecord collapse(const PureState& psi, const SubsetIndex& tau, const ProjectiveMeasurement2& m,
                           const Word& outcome);

/// Measures tau with M, sampling the outcome by the Born rule.
MeasurementRecord measure_subset(const PureState& psi, const SubsetIndex& tau,
                                 const ProjectiveMeasurement2& m, Rng& rng);

/// Born distribution for measuring every qubit with N.
Distribution outcome_distribution(const PureState& psi, const ProjectiveMeasurement2& n);
Distribution outcome_distribution(const DensityOperator& rho, const ProjectiveMeasurement2& n);

Bits min_entropy_of_measurement(const PureState& psi, const ProjectiveMeasurement2& n);
Bits min_entropy_of_measurement(const DensityOperator& rho, const ProjectiveMeasurement2& n);

/// p(j|i) = prod_l |<nu_{j_l}|mu_{i_l}>|^2 for product basis states.
double product_transition_probability(const ProjectiveMeasurement2& m, const Word& i,
                                      const ProjectiveMeasurement2& n, const Word& j);

/// Binary words q of length s with |w_a(q_tau) - w_a(q_{-tau})| <= delta,
/// in ascending index order.
std::vector<Word> good_words(std::size_t s, const SubsetIndex& tau, Symbol a, double delta);

/// Random element of span{U^{(x)s}|q> : q good for (tau, a, delta)} with
/// i.i.d. standard complex Gaussian coefficients, normalized.
PureState random_span_B_state(std::size_t s, const SubsetIndex& tau, Symbol a, double delta,
                              const Unitary2& u, Rng& rng);

struct InequalitySides {
    Bits lhs;
    Bits rhs;
};

/// Superposition versus mixture over the product basis of `basis`, with a
/// trivial side system. lhs = H_min(N) of sum_i alpha_i |mu_i>; rhs =
/// H_min(N) of sum_i |alpha_i|^2 |mu_i><mu_i| minus log2 |J|.
InequalitySides lemma1_check(std::span<const Complex> coeffs, std::span<const Word> words,
                        const ProjectiveMeasurement2& basis, const ProjectiveMeasurement2& n);

/// Same with a side system holding orthonormal branch labels, psi =
/// sum_i alpha_i |mu_i>|i>_E. The mixture's side system is classical so its
/// conditional min-entropy is exact; the superposition's uses a certified
/// upper bound on the guessing probability, so lhs is a lower bound on the
/// true value.
InequalitySides lemma1_check_orthogonal_branches(std::span<const Complex> coeffs, std::span<const Word> words,
                                            const ProjectiveMeasurement2& basis,
                                            const ProjectiveMeasurement2& n);

/// (1/2) sum |eig(rho - sigma)|.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// lhs = H(M) + H(N) (Shannon), rhs = -log2 overlap_c(M, N).
InequalitySides maassen_uffink_check(const DensityOperator& rho, const ProjectiveMeasurement2& m,
                                const ProjectiveMeasurement2& n);

/// Uniform over the Bloch ball.
DensityOperator random_qubit_density(Rng& rng);

}  // namespace qsample
