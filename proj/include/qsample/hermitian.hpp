#pragma once

// Small dense complex matrices and a cyclic Jacobi eigensolver for the
// Hermitian case. Sized for density operators of a handful of qubits.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qsample {

using Complex = std::complex<double>;

/// Square complex matrix, row-major.
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    CMatrix(std::size_t dim, std::vector<Complex> row_major);

    static CMatrix identity(std::size_t dim);
    /// |v><v|
    static CMatrix outer(std::span<const Complex> v);

    std::size_t dim() const noexcept { return dim_; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    const std::vector<Complex>& data() const noexcept { return data_; }

    CMatrix adjoint() const;
    Complex trace() const;
    /// Largest |A - A^dagger| entry.
    double hermiticity_defect() const;

    CMatrix& operator+=(const CMatrix& rhs);
    CMatrix& operator-=(const CMatrix& rhs);
    CMatrix& operator*=(Complex s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Eigenvalues in ascending order; `vectors` holds the matching
/// eigenvectors as columns when requested.
struct HermitianEigen {
    std::vector<double> values;
    CMatrix vectors;
};

inline constexpr double kJacobiTolerance = 1e-12;

/// Cyclic Jacobi: sweeps every (p, q) pair with a complex Givens rotation
/// until the off-diagonal Frobenius norm drops below tol * max(1, ||A||_F).
/// Only the Hermitian part of `a` is used.
HermitianEigen hermitian_eigen(const CMatrix& a, bool want_vectors = true,
                               double tol = kJacobiTolerance);

std::vector<double> hermitian_eigenvalues(const CMatrix& a);

/// f(A) = V f(Lambda) V^dagger for Hermitian A.
template <typename F>
CMatrix hermitian_function(const HermitianEigen& eig, F&& f) {
    const std::size_t n = eig.values.size();
    CMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(eig.values[k]);
        if (fk == 0.0) continue;
        for (std::size_t r = 0; r < n; ++r) {
            const Complex vr = eig.vectors(r, k) * fk;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(eig.vectors(c, k));
        }
    }
    return out;
}

}  // namespace qsample
