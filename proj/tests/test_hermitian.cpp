#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>

#include "qsample/hermitian.hpp"

using namespace qsample;

namespace {

CMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CMatrix a(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = Complex(g(rng), g(rng));
    return (a + a.adjoint()) * Complex(0.5);
}

double max_abs(const CMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.data()) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

TEST_CASE("matrix basics") {
    const CMatrix a(2, {1, Complex(0, 1), Complex(2, 0), 3});
    CHECK(a.trace() == Complex(4, 0));
    CHECK(a.adjoint()(0, 1) == Complex(2, 0));
    CHECK(a.adjoint()(1, 0) == Complex(0, -1));
    CHECK(a.hermiticity_defect() == doctest::Approx(std::sqrt(5.0)));
    const CMatrix p = a * CMatrix::identity(2);
    CHECK(max_abs(p - a) == 0.0);
    CHECK_THROWS(CMatrix(2, {1, 2, 3}));
}

TEST_CASE("diagonal and 2x2 closed forms") {
    const auto d = hermitian_eigen(CMatrix(3, {3, 0, 0, 0, -1, 0, 0, 0, 2}));
    CHECK(d.values == std::vector<double>{-1, 2, 3});

    // Pauli Y has eigenvalues -1, +1.
    const auto y = hermitian_eigenvalues(CMatrix(2, {0, Complex(0, -1), Complex(0, 1), 0}));
    CHECK(y[0] == doctest::Approx(-1.0));
    CHECK(y[1] == doctest::Approx(1.0));

    const CMatrix zero(4);
    for (double v : hermitian_eigenvalues(zero)) CHECK(v == 0.0);
}

TEST_CASE("eigen decomposition against Eigen") {
    std::mt19937_64 rng(42);
    for (std::size_t n = 1; n <= 32; n += (n < 8 ? 1 : 8)) {
        for (int t = 0; t < 5; ++t) {
            const CMatrix a = random_hermitian(n, rng);
            Eigen::MatrixXcd e(n, n);
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) e(r, c) = a(r, c);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(e);
            const auto eig = hermitian_eigen(a);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(eig.values[i] - oracle.eigenvalues()[i]) < 1e-10);

            // A V = V Lambda, V unitary.
            const CMatrix& v = eig.vectors;
            CMatrix lambda(n);
            for (std::size_t i = 0; i < n; ++i) lambda(i, i) = eig.values[i];
            CHECK(max_abs(a * v - v * lambda) < 1e-10);
            CHECK(max_abs(v.adjoint() * v - CMatrix::identity(n)) < 1e-11);
        }
    }
}

TEST_CASE("degenerate spectrum") {
    // Projector of rank 2 in dimension 4, rotated by a random unitary-ish basis.
    std::mt19937_64 rng(8);
    const auto eig0 = hermitian_eigen(random_hermitian(4, rng));
    CMatrix p(4);
    for (std::size_t k = 0; k < 2; ++k) {
        std::vector<Complex> col(4);
        for (std::size_t r = 0; r < 4; ++r) col[r] = eig0.vectors(r, k);
        p += CMatrix::outer(col);
    }
    const auto vals = hermitian_eigenvalues(p);
    CHECK(std::abs(vals[0]) < 1e-12);
    CHECK(std::abs(vals[1]) < 1e-12);
    CHECK(std::abs(vals[2] - 1.0) < 1e-12);
    CHECK(std::abs(vals[3] - 1.0) < 1e-12);
}

TEST_CASE("matrix functions") {
    std::mt19937_64 rng(3);
    CMatrix a = random_hermitian(5, rng);
    a += CMatrix::identity(5) * Complex(10.0);  // positive definite
    const auto eig = hermitian_eigen(a);
    const CMatrix root = hermitian_function(eig, [](double x) { return std::sqrt(x); });
    CHECK(max_abs(root * root - a) < 1e-10);
    const CMatrix inv_root = hermitian_function(eig, [](double x) { return 1.0 / std::sqrt(x); });
    CHECK(max_abs(inv_root * a * inv_root - CMatrix::identity(5)) < 1e-10);
}
