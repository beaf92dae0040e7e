#include "cohstat/pv_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cohstat/errors.hpp"

namespace cohstat {

namespace {

constexpr double kUnitNormTol = 1e-12;
constexpr double kNegativeProbabilityTol = 1e-10;

double checked_probability(double raw, const char* op) {
    if (raw < -kNegativeProbabilityTol || raw > 1.0 + kNegativeProbabilityTol) {
        throw InvariantError(std::string(op) + ": probability " + std::to_string(raw) +
                             " outside [0, 1] beyond rounding");
    }
    return std::clamp(raw, 0.0, 1.0);
}

} // namespace

Observable::Observable(ComplexMatrix matrix, double tol)
    : matrix_(std::move(matrix)), spectrum_(hermitian_eigendecomposition(matrix_, tol)) {}

VectorState::VectorState(ComplexVector v) : v_(std::move(v)) {
    if (v_.size() == 0) {
        throw DimensionError("VectorState: empty vector");
    }
    if (!v_.allFinite() || std::abs(v_.norm() - 1.0) > kUnitNormTol) {
        throw DomainError("VectorState: vector must have unit norm, got norm " +
                          std::to_string(v_.norm()));
    }
}

VectorState VectorState::normalized(ComplexVector v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DomainError("VectorState::normalized: zero or non-finite vector");
    }
    return VectorState(v / n);
}

bool VectorState::same_state(const VectorState& other, double tol) const {
    if (dim() != other.dim()) {
        return false;
    }
    return phase_aligned_distance(v_, other.v_) <= tol;
}

StateOperator::StateOperator(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        throw DimensionError("StateOperator: matrix must be square and non-empty");
    }
    if (!is_hermitian(m_, 1e-12)) {
        throw DomainError("StateOperator: matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0, 0.0)) > 1e-12) {
        throw DomainError("StateOperator: trace must be 1");
    }
    const auto spectrum = hermitian_eigendecomposition(m_, 1e-12);
    if (spectrum.eigenvalues.minCoeff() < -1e-12) {
        throw DomainError("StateOperator: matrix is not positive semidefinite");
    }
}

StateOperator StateOperator::projector(const VectorState& state) {
    const ComplexVector& v = state.vector();
    return StateOperator(v * v.adjoint());
}

std::size_t FinitePVMeasure::dim() const {
    return projectors.empty() ? 0 : static_cast<std::size_t>(projectors.front().rows());
}

std::size_t FinitePVMeasure::index_of(double outcome) const {
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (std::abs(outcomes[i] - outcome) <= kOutcomeMergeTol) {
            return i;
        }
    }
    throw DomainError("outcome " + std::to_string(outcome) + " is not in the spectrum");
}

FinitePVMeasure pv_from_observable(const Observable& obs) {
    const SpectralDecomposition& sp = obs.spectrum();
    const Eigen::Index n = static_cast<Eigen::Index>(sp.size());
    FinitePVMeasure pv;
    Eigen::Index start = 0;
    while (start < n) {
        // Eigenvalues are sorted, so a cluster is a run of small consecutive gaps.
        Eigen::Index end = start + 1;
        while (end < n && sp.eigenvalues(end - 1) - sp.eigenvalues(end) <= kOutcomeMergeTol) {
            ++end;
        }
        const auto block = sp.eigenvectors.middleCols(start, end - start);
        pv.outcomes.push_back(sp.eigenvalues.segment(start, end - start).mean());
        pv.projectors.push_back(block * block.adjoint());
        start = end;
    }
    return pv;
}

double born_probability(const VectorState& state, const FinitePVMeasure& pv, double outcome) {
    if (state.dim() != pv.dim()) {
        throw DimensionError("born_probability: state and measure dimensions differ");
    }
    const ComplexMatrix& p = pv.projectors[pv.index_of(outcome)];
    const ComplexVector& v = state.vector();
    return checked_probability(inner_product(v, p * v).real(), "born_probability");
}

double born_probability(const StateOperator& state, const FinitePVMeasure& pv, double outcome) {
    if (state.dim() != pv.dim()) {
        throw DimensionError("born_probability: state operator and measure dimensions differ");
    }
    const ComplexMatrix& p = pv.projectors[pv.index_of(outcome)];
    return checked_probability((state.matrix() * p).trace().real(), "born_probability");
}

double expectation_trace(const StateOperator& s, const Observable& obs) {
    if (s.dim() != obs.dim()) {
        throw DimensionError("expectation_trace: dimension mismatch");
    }
    const Complex t = (s.matrix() * obs.matrix()).trace();
    const double scale = std::max(1.0, obs.matrix().norm());
    if (std::abs(t.imag()) > 1e-12 * scale) {
        throw InvariantError("expectation_trace: trace has a non-negligible imaginary part");
    }
    return t.real();
}

VectorState example_family_state(double beta, double theta) {
    if (!(beta >= 0.0 && beta < 2.0 * std::numbers::pi)) {
        throw DomainError("example_family_state: beta must lie in [0, 2pi)");
    }
    if (!(theta >= 0.0 && theta < std::numbers::pi)) {
        throw DomainError("example_family_state: theta must lie in [0, pi)");
    }
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    ComplexVector v(3);
    v << std::polar(c * c, -beta), Complex(std::sin(theta) / std::numbers::sqrt2, 0.0),
        std::polar(s * s, beta);
    // Normalization is exact up to rounding; renormalize so the stored vector is unit to 1 ulp.
    return VectorState::normalized(std::move(v));
}

namespace example12 {

Observable observable() {
    ComplexMatrix o = ComplexMatrix::Zero(3, 3);
    o(0, 0) = 1.0;
    o(2, 2) = -1.0;
    return Observable(o);
}

VectorState xi() {
    ComplexVector v(3);
    v << 1.0, 2.0, Complex(0.0, 3.0);
    return VectorState(v / std::sqrt(14.0));
}

VectorState psi0() {
    ComplexVector v(3);
    v << Complex(0.0, -1.0), std::numbers::sqrt2, Complex(0.0, 1.0);
    return VectorState(v / 2.0);
}

} // namespace example12

IntegrationBound::IntegrationBound(double x) : kind_(Kind::finite), x_(x) {
    if (!std::isfinite(x)) {
        throw DomainError("IntegrationBound: use minus_infinity()/plus_infinity() for infinite ends");
    }
}

IntegrationBound IntegrationBound::minus_infinity() {
    return IntegrationBound(Kind::minus_inf, 0.0);
}

IntegrationBound IntegrationBound::plus_infinity() {
    return IntegrationBound(Kind::plus_inf, 0.0);
}

double IntegrationBound::value() const {
    switch (kind_) {
    case Kind::minus_inf:
        return -std::numeric_limits<double>::infinity();
    case Kind::plus_inf:
        return std::numeric_limits<double>::infinity();
    case Kind::finite:
        break;
    }
    return x_;
}

double gaussian_position_density(double sigma, double x) {
    if (!(sigma > 0.0)) {
        throw DomainError("gaussian_position_density: sigma must be positive");
    }
    return std::exp(-0.5 * x * x / (sigma * sigma)) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

double gaussian_position_probability(double sigma, IntegrationBound a, IntegrationBound b) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw DomainError("gaussian_position_probability: sigma must be positive");
    }
    const double lo = a.value();
    const double hi = b.value();
    if (lo > hi) {
        throw DomainError("gaussian_position_probability: need a <= b");
    }
    if (lo == hi) {
        return 0.0;
    }
    const double scale = 1.0 / (sigma * std::numbers::sqrt2);
    const double zlo = lo * scale;
    const double zhi = hi * scale;
    // Difference of upper tails on whichever side keeps both terms small.
    if (zlo >= 0.0) {
        return 0.5 * (std::erfc(zlo) - std::erfc(zhi));
    }
    if (zhi <= 0.0) {
        return 0.5 * (std::erfc(-zhi) - std::erfc(-zlo));
    }
    return 1.0 - 0.5 * std::erfc(-zlo) - 0.5 * std::erfc(zhi);
}

} // namespace cohstat
