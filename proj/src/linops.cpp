#include "cohstat/linops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "cohstat/errors.hpp"

namespace cohstat {

namespace {

void require_square(const ComplexMatrix& m, const char* op) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimensionError(std::string(op) + ": matrix must be square and non-empty, got " +
                             std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(op) + ": dimension mismatch");
    }
}

double one_norm(const ComplexMatrix& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

} // namespace

ComplexMatrix SpectralDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

Complex inner_product(const ComplexVector& u, const ComplexVector& v) {
    if (u.size() != v.size()) {
        throw DimensionError("inner_product: dimension mismatch (" + std::to_string(u.size()) +
                             " vs " + std::to_string(v.size()) + ")");
    }
    // Eigen's dot is conjugate-linear in its first argument.
    return u.dot(v);
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    return m.adjoint();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_square(a, "commutator");
    require_same_shape(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& m, double tol) {
    require_square(m, "matrix_exponential");
    if (!(tol > 0.0)) {
        throw DomainError("matrix_exponential: tol must be positive");
    }
    if (!m.allFinite()) {
        throw DomainError("matrix_exponential: non-finite entries");
    }

    const Eigen::Index n = m.rows();
    const double norm = one_norm(m);
    if (norm == 0.0) {
        return ComplexMatrix::Identity(n, n);
    }

    // Scale into ||X||_1 <= 1/2 so the series converges in ~15 terms.
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const ComplexMatrix scaled = m / std::ldexp(1.0, squarings);

    constexpr int kMaxTerms = 64;
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    ComplexMatrix result = ComplexMatrix::Identity(n, n);
    ComplexMatrix term = ComplexMatrix::Identity(n, n);
    double last_term = 0.0;
    bool converged = false;
    for (int k = 1; k <= kMaxTerms; ++k) {
        term = (term * scaled) / static_cast<double>(k);
        result += term;
        last_term = term.norm();
        if (last_term <= kEps * result.norm()) {
            converged = true;
            break;
        }
    }
    if (!converged && last_term > tol * result.norm()) {
        throw ConvergenceError("matrix_exponential: series did not reach tol within " +
                               std::to_string(kMaxTerms) + " terms");
    }

    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    if (!result.allFinite()) {
        throw ConvergenceError("matrix_exponential: overflow during squaring");
    }
    return result;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    const double scale = std::max(1.0, m.norm());
    return (m - m.adjoint()).norm() <= tol * scale;
}

SpectralDecomposition hermitian_eigendecomposition(const ComplexMatrix& m, double tol) {
    require_square(m, "hermitian_eigendecomposition");
    if (!m.allFinite()) {
        throw DomainError("hermitian_eigendecomposition: non-finite entries");
    }
    if (!is_hermitian(m, tol)) {
        throw DomainError("hermitian_eigendecomposition: matrix is not Hermitian within tolerance");
    }

    const ComplexMatrix symmetrized = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("hermitian_eigendecomposition: eigensolver failed");
    }

    const Eigen::Index n = m.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const auto& values = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index src = order[static_cast<std::size_t>(i)];
        out.eigenvalues(i) = values(src);
        ComplexVector v = solver.eigenvectors().col(src);
        for (Eigen::Index k = 0; k < n; ++k) {
            const double mag = std::abs(v(k));
            if (mag > 1e-12) {
                v *= std::conj(v(k)) / mag;
                v(k) = Complex(mag, 0.0);
                break;
            }
        }
        out.eigenvectors.col(i) = v;
    }
    return out;
}

double phase_aligned_distance(const ComplexVector& u, const ComplexVector& v) {
    const Complex overlap = inner_product(v, u);
    const double mag = std::abs(overlap);
    const Complex phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
    return (u - phase * v).norm();
}

double operator_norm(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

ComplexVector basis_vector(std::size_t dim, std::size_t k) {
    if (k >= dim) {
        throw DimensionError("basis_vector: index " + std::to_string(k) + " out of range for dim " +
                             std::to_string(dim));
    }
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    return v;
}

} // namespace cohstat
