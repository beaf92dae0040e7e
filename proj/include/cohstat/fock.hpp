#pragma once

// Truncated Fock space for the Weyl-Heisenberg representation: ladder
// operators, displacement-operator coherent states and the Poisson family.

#include <cstddef>
#include <cstdint>

#include "cohstat/linops.hpp"
#include "cohstat/pv_measure.hpp"

namespace cohstat {

inline constexpr double kDefaultTailTol = 1e-12;

/// Span of phi_0 .. phi_{K-1}.
class FockSpace {
public:
    explicit FockSpace(std::size_t truncation);

    std::size_t dim() const { return k_; }

private:
    std::size_t k_;
};

/// max(64, ceil(|alpha|^2 + 12 sqrt(|alpha|^2 + 1))): the Poisson tail past
/// mean + 12 standard deviations is below 1e-15.
std::size_t default_truncation(Complex alpha);

/// Annihilation, creation and number matrices on a truncated Fock space.
/// The creation matrix is the exact adjoint of the annihilation matrix, so
/// A^dagger phi_{K-1} = 0 on the truncated space.
struct LadderRep {
    FockSpace space;
    ComplexMatrix annihilation;
    ComplexMatrix creation;
    ComplexMatrix number;

    std::size_t dim() const { return space.dim(); }

    /// alpha A^dagger - conj(alpha) A.
    ComplexMatrix displacement_generator(Complex alpha) const;
};

LadderRep build_ladder(std::size_t truncation);

/// Element (s; alpha) of the Weyl-Heisenberg group.
struct WHGroupElement {
    double s = 0.0;
    Complex alpha{0.0, 0.0};
};

/// (s; a)(t; b) = (s + t + Im(a conj b); a + b).
WHGroupElement wh_multiply(const WHGroupElement& g1, const WHGroupElement& g2);
WHGroupElement wh_inverse(const WHGroupElement& g);

struct CoherentStateWH {
    Complex alpha;
    VectorState state;
    /// Poisson mass of the levels dropped by the truncation.
    double tail_mass;
};

/// (phi_k, v(alpha)) = e^{-|alpha|^2/2} alpha^k / sqrt(k!) on the untruncated space.
Complex wh_coherent_coefficient(std::size_t k, Complex alpha);

/// Sum_{k >= K} e^{-|alpha|^2} |alpha|^{2k} / k!, summed directly.
double poisson_tail_mass(Complex alpha, std::size_t truncation);

/// Coefficients e^{-|alpha|^2/2} alpha^k / sqrt(k!) for k < K, renormalized.
/// Throws TruncationError if the dropped tail exceeds `tail_tol`.
CoherentStateWH coherent_closed_form(Complex alpha, const FockSpace& space,
                                     double tail_tol = kDefaultTailTol);

/// exp(alpha A^dagger - conj(alpha) A) phi_0. Throws TruncationError when the
/// result departs from the closed form by more than 10 tol (phase-aligned).
CoherentStateWH coherent_via_exponential(Complex alpha, const LadderRep& rep, double tol = 1e-10);

/// ||exp(O1) exp(O2) phi_0 - exp([O1, O2] / 2) exp(O1 + O2) phi_0|| with
/// O1 = alpha A^dagger and O2 = -conj(alpha) A.
double bch_check(Complex alpha, const LadderRep& rep);

/// Probability of count n for the coherent state labelled by alpha.
double poisson_pmf(Complex alpha, std::int64_t n);

struct TranslationCheck {
    /// |(v(alpha + beta), D(beta) v(alpha))|.
    double state_overlap;
    /// (v(alpha + beta), D(beta) v(alpha)) / state_overlap.
    Complex phase;
    /// e^{i Im(beta conj(alpha))}.
    Complex expected_phase;
};

/// Displacement acts on coherent states as translation up to a phase.
TranslationCheck displacement_translation_check(Complex alpha, Complex beta, const LadderRep& rep,
                                                double tail_tol = kDefaultTailTol);

} // namespace cohstat
