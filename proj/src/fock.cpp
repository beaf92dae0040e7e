#include "cohstat/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cohstat/errors.hpp"
#include "cohstat/special.hpp"

namespace cohstat {

namespace {

Eigen::Index as_index(std::size_t n) {
    return static_cast<Eigen::Index>(n);
}

ComplexVector vacuum(std::size_t dim) {
    return basis_vector(dim, 0);
}

void require_tail(Complex alpha, std::size_t dim, double tail_tol, const char* op) {
    const double tail = poisson_tail_mass(alpha, dim);
    if (tail > tail_tol) {
        throw TruncationError(std::string(op) + ": truncation K=" + std::to_string(dim) +
                              " leaves tail mass " + std::to_string(tail) + " for |alpha|^2=" +
                              std::to_string(std::norm(alpha)));
    }
}

} // namespace

FockSpace::FockSpace(std::size_t truncation) : k_(truncation) {
    if (truncation < 2) {
        throw DomainError("FockSpace: truncation must be at least 2, got " +
                          std::to_string(truncation));
    }
}

std::size_t default_truncation(Complex alpha) {
    const double lambda = std::norm(alpha);
    const double k = std::ceil(lambda + 12.0 * std::sqrt(lambda + 1.0));
    return std::max<std::size_t>(64, static_cast<std::size_t>(k));
}

ComplexMatrix LadderRep::displacement_generator(Complex alpha) const {
    return alpha * creation - std::conj(alpha) * annihilation;
}

LadderRep build_ladder(std::size_t truncation) {
    FockSpace space(truncation);
    const Eigen::Index k = as_index(truncation);
    ComplexMatrix a = ComplexMatrix::Zero(k, k);
    for (Eigen::Index n = 1; n < k; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    ComplexMatrix a_dag = a.adjoint();
    ComplexMatrix number = a_dag * a;
    return LadderRep{space, std::move(a), std::move(a_dag), std::move(number)};
}

WHGroupElement wh_multiply(const WHGroupElement& g1, const WHGroupElement& g2) {
    return {g1.s + g2.s + (g1.alpha * std::conj(g2.alpha)).imag(), g1.alpha + g2.alpha};
}

WHGroupElement wh_inverse(const WHGroupElement& g) {
    return {-g.s, -g.alpha};
}

Complex wh_coherent_coefficient(std::size_t k, Complex alpha) {
    const double r = std::abs(alpha);
    if (r == 0.0) {
        return k == 0 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
    }
    const double dk = static_cast<double>(k);
    const double log_mag =
        -0.5 * r * r + dk * std::log(r) - 0.5 * log_factorial(static_cast<std::int64_t>(k));
    return std::polar(std::exp(log_mag), dk * std::arg(alpha));
}

double poisson_tail_mass(Complex alpha, std::size_t truncation) {
    const double lambda = std::norm(alpha);
    if (lambda == 0.0) {
        return 0.0;
    }
    // Terms grow until k ~ lambda and then fall off; stop once they are
    // negligible against the running sum past the mode.
    double tail = 0.0;
    const double log_lambda = std::log(lambda);
    for (std::int64_t k = static_cast<std::int64_t>(truncation);; ++k) {
        const double term = std::exp(-lambda + static_cast<double>(k) * log_lambda - log_factorial(k));
        tail += term;
        if (static_cast<double>(k) > lambda && (term <= 1e-17 * tail || term == 0.0)) {
            break;
        }
    }
    return std::min(tail, 1.0);
}

CoherentStateWH coherent_closed_form(Complex alpha, const FockSpace& space, double tail_tol) {
    const double tail = poisson_tail_mass(alpha, space.dim());
    if (tail > tail_tol) {
        throw TruncationError("coherent_closed_form: truncation K=" + std::to_string(space.dim()) +
                              " leaves tail mass " + std::to_string(tail));
    }
    const Eigen::Index k = as_index(space.dim());
    ComplexVector v(k);
    for (Eigen::Index n = 0; n < k; ++n) {
        v(n) = wh_coherent_coefficient(static_cast<std::size_t>(n), alpha);
    }
    return CoherentStateWH{alpha, VectorState::normalized(std::move(v)), tail};
}

CoherentStateWH coherent_via_exponential(Complex alpha, const LadderRep& rep, double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("coherent_via_exponential: tol must be positive");
    }
    const CoherentStateWH reference = coherent_closed_form(alpha, rep.space);
    const ComplexMatrix d = matrix_exponential(rep.displacement_generator(alpha));
    ComplexVector v = d * vacuum(rep.dim());
    const double gap = phase_aligned_distance(v, reference.state.vector());
    if (gap > 10.0 * tol) {
        throw TruncationError("coherent_via_exponential: exponential route differs from closed form by " +
                              std::to_string(gap) + "; truncation too small for this alpha");
    }
    return CoherentStateWH{alpha, VectorState::normalized(std::move(v)), reference.tail_mass};
}

double bch_check(Complex alpha, const LadderRep& rep) {
    const ComplexMatrix o1 = alpha * rep.creation;
    const ComplexMatrix o2 = -std::conj(alpha) * rep.annihilation;
    const ComplexVector phi0 = vacuum(rep.dim());
    const ComplexVector lhs = matrix_exponential(o1) * (matrix_exponential(o2) * phi0);
    const ComplexVector rhs =
        matrix_exponential(0.5 * commutator(o1, o2)) * (matrix_exponential(o1 + o2) * phi0);
    return (lhs - rhs).norm();
}

double poisson_pmf(Complex alpha, std::int64_t n) {
    return poisson_probability(std::norm(alpha), n);
}

TranslationCheck displacement_translation_check(Complex alpha, Complex beta, const LadderRep& rep,
                                                double tail_tol) {
    require_tail(alpha, rep.dim(), tail_tol, "displacement_translation_check");
    require_tail(alpha + beta, rep.dim(), tail_tol, "displacement_translation_check");

    const ComplexVector phi0 = vacuum(rep.dim());
    const ComplexVector v_alpha = matrix_exponential(rep.displacement_generator(alpha)) * phi0;
    const ComplexVector moved = matrix_exponential(rep.displacement_generator(beta)) * v_alpha;
    const ComplexVector target = matrix_exponential(rep.displacement_generator(alpha + beta)) * phi0;

    const Complex overlap = inner_product(target, moved);
    const double mag = std::abs(overlap);
    TranslationCheck out;
    out.state_overlap = mag;
    out.phase = mag > 0.0 ? overlap / mag : Complex(1.0, 0.0);
    out.expected_phase = std::polar(1.0, (beta * std::conj(alpha)).imag());
    return out;
}

} // namespace cohstat
