#include "qsample/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qsample {

CMatrix::CMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
    if (data_.size() != dim_ * dim_) throw std::invalid_argument("CMatrix: data size != dim^2");
}

CMatrix CMatrix::identity(std::size_t dim) {
    CMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::outer(std::span<const Complex> v) {
    CMatrix m(v.size());
    for (std::size_t r = 0; r < v.size(); ++r)
        for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = v[r] * std::conj(v[c]);
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

Complex CMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double CMatrix::hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = r; c < dim_; ++c)
            worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
    if (rhs.dim_ != dim_) throw std::invalid_argument("CMatrix: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
    if (rhs.dim_ != dim_) throw std::invalid_argument("CMatrix: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("CMatrix: dimension mismatch");
    const std::size_t n = a.dim();
    CMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{}) continue;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
        }
    return out;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;

}  // namespace

HermitianEigen hermitian_eigen(const CMatrix& input, bool want_vectors, double tol) {
    const std::size_t n = input.dim();
    CMatrix a = (input + input.adjoint()) * Complex(0.5);
    CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix();

    double frob = 0.0;
    for (const auto& x : a.data()) frob += std::norm(x);
    const double threshold = tol * std::max(1.0, std::sqrt(frob));

    int sweep = 0;
    for (; sweep < kMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex gamma = a(p, q);
                const double g = std::abs(gamma);
                if (g == 0.0) continue;
                const double alpha = a(p, p).real();
                const double beta = a(q, q).real();

                // Phase e^{-i arg gamma} on q makes the pivot block real
                // symmetric; a real rotation then annihilates it.
                const Complex phase = std::conj(gamma) / g;
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex jpp = c, jpq = s, jqp = -s * phase, jqq = c * phase;

                for (std::size_t r = 0; r < n; ++r) {
                    const Complex arp = a(r, p), arq = a(r, q);
                    a(r, p) = arp * jpp + arq * jqp;
                    a(r, q) = arp * jpq + arq * jqq;
                }
                for (std::size_t col = 0; col < n; ++col) {
                    const Complex apc = a(p, col), aqc = a(q, col);
                    a(p, col) = std::conj(jpp) * apc + std::conj(jqp) * aqc;
                    a(q, col) = std::conj(jpq) * apc + std::conj(jqq) * aqc;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                if (want_vectors) {
                    for (std::size_t r = 0; r < n; ++r) {
                        const Complex vrp = v(r, p), vrq = v(r, q);
                        v(r, p) = vrp * jpp + vrq * jqp;
                        v(r, q) = vrp * jpq + vrq * jqq;
                    }
                }
            }
        }
    }
    if (off_diagonal_norm(a) > threshold)
        throw std::runtime_error("hermitian_eigen: Jacobi sweeps did not converge");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigen out;
    out.values.reserve(n);
    for (std::size_t i : order) out.values.push_back(a(i, i).real());
    if (want_vectors) {
        out.vectors = CMatrix(n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& a) {
    return hermitian_eigen(a, false).values;
}

}  // namespace qsample
