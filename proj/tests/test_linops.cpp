#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "cohstat/errors.hpp"
#include "cohstat/fock.hpp"
#include "cohstat/linops.hpp"
#include "cohstat/spin.hpp"

using namespace cohstat;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, int n, double scale) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            m(r, c) = Complex(g(rng), g(rng));
        }
    }
    return m * (scale / m.norm());
}

ComplexMatrix random_hermitian(std::mt19937_64& rng, int n, double scale) {
    ComplexMatrix m = random_matrix(rng, n, scale);
    return (m + m.adjoint()) / 2.0;
}

} // namespace

TEST_CASE("inner product is conjugate-linear in the first slot") {
    const ComplexVector e0 = basis_vector(3, 0);
    CHECK(std::abs(inner_product(e0, e0) - Complex(1.0, 0.0)) == 0.0);
    const ComplexVector ie0 = Complex(0.0, 1.0) * e0;
    CHECK(std::abs(inner_product(ie0, e0) - Complex(0.0, -1.0)) == 0.0);

    ComplexVector xi(3);
    xi << 1.0, 2.0, Complex(0.0, 3.0);
    xi /= std::sqrt(14.0);
    CHECK(std::abs(inner_product(e0, xi) - 1.0 / std::sqrt(14.0)) < 1e-15);

    CHECK_THROWS_AS(inner_product(e0, basis_vector(4, 0)), DimensionError);
}

TEST_CASE("adjoint and commutator") {
    CHECK(adjoint(ComplexMatrix::Identity(4, 4)).isApprox(ComplexMatrix::Identity(4, 4)));
    const ComplexMatrix di = Complex(0.0, 1.0) * ComplexMatrix::Identity(2, 2);
    CHECK((adjoint(di) + di).norm() == 0.0);

    const LadderRep rep = build_ladder(10);
    CHECK((adjoint(rep.annihilation) - rep.creation).norm() == 0.0);

    const ComplexMatrix b = ComplexMatrix::Random(3, 3);
    CHECK(commutator(b, b).norm() == 0.0);
    CHECK_THROWS_AS(commutator(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), DimensionError);

    const auto e = so3_basis();
    const Eigen::Matrix3d c12 = e[0] * e[1] - e[1] * e[0];
    CHECK((c12 - e[2]).norm() == 0.0);
}

TEST_CASE("truncated Fock commutator carries the documented corner artifact") {
    const LadderRep rep = build_ladder(8);
    const ComplexMatrix c = commutator(rep.annihilation, rep.creation);
    ComplexMatrix expected = ComplexMatrix::Identity(8, 8);
    expected(7, 7) = -7.0;
    CHECK((c - expected).norm() < 1e-14);
}

TEST_CASE("matrix exponential on closed-form cases") {
    CHECK((matrix_exponential(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3)).norm() == 0.0);

    ComplexMatrix nil = ComplexMatrix::Zero(2, 2);
    nil(0, 1) = 1.0;
    ComplexMatrix expected(2, 2);
    expected << 1.0, 1.0, 0.0, 1.0;
    CHECK((matrix_exponential(nil) - expected).norm() < 1e-15);

    const ComplexMatrix ipi = Complex(0.0, std::numbers::pi) * ComplexMatrix::Identity(1, 1);
    CHECK(std::abs(matrix_exponential(ipi)(0, 0) - std::exp(Complex(0.0, std::numbers::pi))) < 1e-15);
    CHECK(std::abs(matrix_exponential(ipi)(0, 0) + 1.0) < 1e-15);

    CHECK_THROWS_AS(matrix_exponential(ComplexMatrix::Zero(2, 3)), DimensionError);
    CHECK_THROWS_AS(matrix_exponential(ComplexMatrix::Identity(2, 2), 0.0), DomainError);
    ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
    bad(0, 1) = std::nan("");
    CHECK_THROWS(matrix_exponential(bad));
}

TEST_CASE("matrix exponential agrees with the Pade-based oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + trial % 12;
        const double scale = 0.1 + 0.25 * trial;
        const ComplexMatrix m = random_matrix(rng, n, scale);
        const ComplexMatrix oracle = m.exp();
        const ComplexMatrix ours = matrix_exponential(m);
        CHECK((ours - oracle).norm() <= 1e-12 * std::max(1.0, oracle.norm()));
    }
}

TEST_CASE("property: exp(iH) is unitary for Hermitian H") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + trial % 16;
        const ComplexMatrix h = random_hermitian(rng, n, 0.5 + trial);
        const ComplexMatrix u = matrix_exponential(Complex(0.0, 1.0) * h);
        CHECK((u.adjoint() * u - ComplexMatrix::Identity(n, n)).norm() < 1e-10);
    }
}

TEST_CASE("property: adjoint commutes with exponential") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 9;
        const ComplexMatrix m = random_matrix(rng, n, 5.0 * (trial + 1) / 30.0);
        const ComplexMatrix lhs = adjoint(matrix_exponential(m));
        const ComplexMatrix rhs = matrix_exponential(adjoint(m));
        CHECK((lhs - rhs).norm() < 1e-10);
    }
}

TEST_CASE("property: Jacobi identity") {
    std::mt19937_64 rng(14);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 7;
        auto unit = [&] {
            ComplexMatrix m(n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    m(r, c) = Complex(u(rng), u(rng));
                }
            }
            return m;
        };
        const ComplexMatrix a = unit();
        const ComplexMatrix b = unit();
        const ComplexMatrix c = unit();
        const ComplexMatrix jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                                  commutator(c, commutator(a, b));
        CHECK(jac.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Hermitian eigendecomposition") {
    ComplexMatrix d = ComplexMatrix::Zero(3, 3);
    d.diagonal() << 1.0, 0.0, -1.0;
    const SpectralDecomposition s = hermitian_eigendecomposition(d);
    REQUIRE(s.size() == 3);
    CHECK(s.eigenvalues(0) == doctest::Approx(1.0));
    CHECK(s.eigenvalues(1) == doctest::Approx(0.0));
    CHECK(s.eigenvalues(2) == doctest::Approx(-1.0));
    for (int i = 0; i < 3; ++i) {
        CHECK((s.eigenvector(static_cast<std::size_t>(i)) - basis_vector(3, static_cast<std::size_t>(i))).norm() <
              1e-14);
    }

    const SpectralDecomposition id = hermitian_eigendecomposition(ComplexMatrix::Identity(4, 4));
    CHECK((id.eigenvalues.array() - 1.0).abs().maxCoeff() < 1e-15);

    const LadderRep rep = build_ladder(12);
    const SpectralDecomposition n = hermitian_eigendecomposition(rep.number);
    for (int i = 0; i < 12; ++i) {
        CHECK(std::abs(n.eigenvalues(i) - (11 - i)) < 1e-12);
    }

    ComplexMatrix not_hermitian = ComplexMatrix::Zero(2, 2);
    not_hermitian(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigendecomposition(not_hermitian), DomainError);
}

TEST_CASE("property: eigenpair residuals and reconstruction") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 1 + trial % 16;
        const ComplexMatrix h = random_hermitian(rng, n, 1.0 + trial);
        const SpectralDecomposition s = hermitian_eigendecomposition(h);
        const double scale = operator_norm(h);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const ComplexVector v = s.eigenvector(i);
            CHECK((h * v - s.eigenvalues(static_cast<Eigen::Index>(i)) * v).norm() <= 1e-10 * scale);
        }
        CHECK((s.reconstruct() - h).norm() <= 1e-10 * scale);
        for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i) {
            CHECK(s.eigenvalues(i - 1) >= s.eigenvalues(i));
        }
    }
}

TEST_CASE("phase-aligned distance ignores a global phase") {
    ComplexVector v(3);
    v << 0.6, Complex(0.0, 0.8), 0.0;
    CHECK(phase_aligned_distance(v, std::polar(1.0, 1.234) * v) < 1e-15);
    CHECK(phase_aligned_distance(v, basis_vector(3, 2)) > 1.0);
}
