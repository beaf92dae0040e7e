#pragma once

// Spin-j representations of SU(2): the so(3) basis, coset elements of the
// two-sphere, spin coherent states and the binomial family.

#include <array>
#include <cstddef>

#include <Eigen/Dense>

#include "cohstat/linops.hpp"
#include "cohstat/pv_measure.hpp"

namespace cohstat {

/// Half-integer stored as twice its value, so spin labels compare exactly.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    static constexpr HalfInteger from_twice(int twice) { return HalfInteger(twice); }
    /// Throws DomainError unless 2x is an integer.
    static HalfInteger from_double(double x);

    constexpr int twice() const { return twice_; }
    constexpr double value() const { return 0.5 * twice_; }

    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;

private:
    constexpr explicit HalfInteger(int twice) : twice_(twice) {}
    int twice_ = 0;
};

/// Basis phi_m ordered m = -j, -j+1, ..., j, so phi_{-j} is index 0 and
/// k = j + m is the basis index.
struct SpinRep {
    HalfInteger j;
    ComplexMatrix j3;
    ComplexMatrix j_plus;
    ComplexMatrix j_minus;

    std::size_t dim() const { return static_cast<std::size_t>(j.twice() + 1); }
    /// n = 2j of the binomial family.
    int n() const { return j.twice(); }
    /// Basis index of label m; throws DomainError for invalid labels.
    std::size_t index_of(HalfInteger m) const;
    HalfInteger label_of(std::size_t index) const;

    /// (J+ + J-) / 2.
    ComplexMatrix j1() const;
    /// (J+ - J-) / 2i.
    ComplexMatrix j2() const;
};

SpinRep build_spin_rep(HalfInteger j);

/// Point of the unit sphere minus the South Pole: theta in [0, pi), gamma in [0, 2pi).
class SpherePoint {
public:
    SpherePoint(double theta, double gamma);

    double theta() const { return theta_; }
    double gamma() const { return gamma_; }

private:
    double theta_;
    double gamma_;
};

/// Generators of rotations about x, y and z; e3 is the derivative of the
/// z-rotation at the identity.
std::array<Eigen::Matrix3d, 3> so3_basis();

/// exp((i theta / 2)(sin gamma M1 - cos gamma M2)) with M1, M2 the first two
/// Pauli matrices, in the Pauli basis ordering (spin up first).
Eigen::Matrix2cd coset_element(const SpherePoint& point);

struct CoherentStateSpin {
    SpherePoint point;
    VectorState state;
};

/// Closed-form coefficients
///   sqrt(C(2j, j+m)) (-sin(theta/2))^{j+m} cos(theta/2)^{j-m} e^{-i(j+m) gamma}.
/// Accepts the closed range theta in [0, pi]; no normalization is applied.
ComplexVector spin_coherent_coefficients(const SpinRep& rep, double theta, double gamma);

/// Single coefficient of the above at basis index k = j + m.
Complex spin_coherent_coefficient(const SpinRep& rep, std::size_t k, double theta, double gamma);

CoherentStateSpin spin_coherent_closed_form(const SpinRep& rep, const SpherePoint& point);

/// exp(i theta (sin gamma J1 - cos gamma J2)) applied to phi_{-j}; throws
/// ConvergenceError if it departs from the closed form by more than 10 tol.
CoherentStateSpin spin_coherent_via_exponential(const SpinRep& rep, const SpherePoint& point,
                                                double tol = 1e-10);

/// Operator-norm residual between the displacement operator and its
/// factorization exp(zeta J+) exp(eta J3) exp(zeta' J-).
double gauss_decomposition_check(const SpinRep& rep, const SpherePoint& point);

/// Binomial parameters of a spin coherent state and weight label.
struct BinomialMap {
    int n;
    int k;
    double p;
};

BinomialMap to_binomial(const SpinRep& rep, const SpherePoint& point, HalfInteger ell);

/// C(2j, j+l) p^{j+l} (1-p)^{j-l} with p = sin^2(theta/2).
double binomial_pmf(const SpinRep& rep, const SpherePoint& point, HalfInteger ell);

} // namespace cohstat
