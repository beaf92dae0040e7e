#pragma once

// Observables, states, and the projection-valued measures they induce on a
// finite-dimensional space, plus the Gaussian position example on the line.

#include <cstddef>
#include <vector>

#include "cohstat/linops.hpp"

namespace cohstat {

inline constexpr double kOutcomeMergeTol = 1e-9;

/// Hermitian matrix together with its spectral decomposition.
class Observable {
public:
    explicit Observable(ComplexMatrix matrix, double tol = kDefaultHermitianTol);

    const ComplexMatrix& matrix() const { return matrix_; }
    const SpectralDecomposition& spectrum() const { return spectrum_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

private:
    ComplexMatrix matrix_;
    SpectralDecomposition spectrum_;
};

/// Unit vector standing for its class of unit-modulus multiples.
class VectorState {
public:
    /// Throws unless the norm is 1 within 1e-12.
    explicit VectorState(ComplexVector v);

    static VectorState normalized(ComplexVector v);

    const ComplexVector& vector() const { return v_; }
    std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }

    /// Same state up to a global phase.
    bool same_state(const VectorState& other, double tol = 1e-12) const;

private:
    ComplexVector v_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class StateOperator {
public:
    explicit StateOperator(ComplexMatrix m);

    static StateOperator projector(const VectorState& state);

    const ComplexMatrix& matrix() const { return m_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

private:
    ComplexMatrix m_;
};

/// One projector per distinct outcome; outcomes sorted descending.
struct FinitePVMeasure {
    std::vector<double> outcomes;
    std::vector<ComplexMatrix> projectors;

    std::size_t dim() const;
    /// Index of the outcome within kOutcomeMergeTol of `outcome`; throws DomainError if none.
    std::size_t index_of(double outcome) const;
};

FinitePVMeasure pv_from_observable(const Observable& obs);

/// (phi, E({y}) phi). Values below -1e-10 are an InvariantError; smaller
/// excursions outside [0, 1] are clamped.
double born_probability(const VectorState& state, const FinitePVMeasure& pv, double outcome);

/// trace(S E({y})) for a state operator.
double born_probability(const StateOperator& state, const FinitePVMeasure& pv, double outcome);

/// trace(S O).
double expectation_trace(const StateOperator& s, const Observable& obs);

/// psi_{beta,theta} = (e^{-i beta} cos^2(theta/2), sin(theta)/sqrt 2, e^{i beta} sin^2(theta/2)),
/// beta in [0, 2pi), theta in [0, pi).
VectorState example_family_state(double beta, double theta);

/// The three-outcome observable diag(1, 0, -1) and the two states used with it.
namespace example12 {
Observable observable();
VectorState xi();   // (1, 2, 3i) / sqrt 14
VectorState psi0(); // (-i, sqrt 2, i) / 2
} // namespace example12

/// Endpoint of an integration interval on the real line; the infinite ends
/// are explicit values rather than IEEE infinities passed by accident.
class IntegrationBound {
public:
    IntegrationBound(double x); // NOLINT(google-explicit-constructor): finite endpoints read naturally
    static IntegrationBound minus_infinity();
    static IntegrationBound plus_infinity();

    bool is_infinite() const { return kind_ != Kind::finite; }
    /// The endpoint as a double; +-infinity for the sentinels.
    double value() const;

private:
    enum class Kind { finite, minus_inf, plus_inf };
    IntegrationBound(Kind kind, double x) : kind_(kind), x_(x) {}

    Kind kind_;
    double x_;
};

/// |psi(x)|^2 for psi(x) = exp(-x^2 / 4 sigma^2) / (2 pi sigma^2)^{1/4}.
double gaussian_position_density(double sigma, double x);

/// Mass of [a, b] under |psi(x)|^2, i.e. the N(0, sigma^2) probability of the
/// interval, through the complementary error function.
double gaussian_position_probability(double sigma, IntegrationBound a, IntegrationBound b);

} // namespace cohstat
