#pragma once

// Dense complex linear algebra used by every other module. Storage is Eigen;
// the matrix exponential is implemented here, the Hermitian eigensolver is
// Eigen's with a deterministic ordering and phase convention layered on top.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace cohstat {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kDefaultExpTol = 1e-12;
inline constexpr double kDefaultHermitianTol = 1e-10;

/// Eigenpairs of a Hermitian matrix. Eigenvalues are sorted descending and
/// column i of `eigenvectors` belongs to eigenvalue i.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    ComplexMatrix eigenvectors;

    std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
    ComplexVector eigenvector(std::size_t i) const { return eigenvectors.col(static_cast<Eigen::Index>(i)); }

    /// Sum of lambda_i * eta_i eta_i^dagger.
    ComplexMatrix reconstruct() const;
};

/// (u, v), conjugate-linear in u and linear in v.
Complex inner_product(const ComplexVector& u, const ComplexVector& v);

ComplexMatrix adjoint(const ComplexMatrix& m);

/// AB - BA.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Scaling and squaring around a Taylor series. The series on the scaled
/// matrix is summed to machine precision; `tol` is the relative Frobenius
/// error that must be reached before the iteration budget runs out.
ComplexMatrix matrix_exponential(const ComplexMatrix& m, double tol = kDefaultExpTol);

/// ||M - M^dagger||_F <= tol * max(1, ||M||_F).
bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultHermitianTol);

/// Eigenvectors are phase-fixed so that their first entry with modulus above
/// 1e-12 is positive real. Within a degenerate cluster only the span is
/// meaningful.
SpectralDecomposition hermitian_eigendecomposition(const ComplexMatrix& m,
                                                   double tol = kDefaultHermitianTol);

/// min over unit-modulus eps of ||u - eps v||. States are phase classes, so
/// this is the distance every cross-route comparison uses.
double phase_aligned_distance(const ComplexVector& u, const ComplexVector& v);

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

ComplexVector basis_vector(std::size_t dim, std::size_t k);

} // namespace cohstat
