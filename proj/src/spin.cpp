#include "cohstat/spin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <quadmath.h>

#include "cohstat/errors.hpp"
#include "cohstat/special.hpp"

namespace cohstat {

namespace {

constexpr Complex kI{0.0, 1.0};

using quad = __float128;

struct QComplex {
    quad re = 0;
    quad im = 0;
};

QComplex operator*(QComplex a, QComplex b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

QComplex& operator+=(QComplex& a, QComplex b) {
    a.re += b.re;
    a.im += b.im;
    return a;
}

QComplex scale(QComplex a, quad s) { return {a.re * s, a.im * s}; }

// exp(zeta J+) exp(eta J3) exp(zeta' J-) with every factor summed exactly
// (J+ and J- are nilpotent). The factors are large where the product is
// unitary, so double precision would lose everything to cancellation.
ComplexMatrix gauss_factorization_quad(const SpinRep& rep, double theta, double gamma) {
    const int d = static_cast<int>(rep.dim());
    const quad j = static_cast<quad>(rep.j.twice()) / 2;
    const quad half = static_cast<quad>(theta) / 2;
    const quad t = tanq(half);
    const quad g = static_cast<quad>(gamma);
    const QComplex zeta{-t * cosq(g), t * sinq(g)};
    const QComplex zeta_prime{-zeta.re, zeta.im};
    const quad eta = log1pq(t * t);

    // ladder[i] = <i+1|J+|i>
    std::vector<quad> ladder(static_cast<std::size_t>(d), 0);
    for (int i = 0; i + 1 < d; ++i) {
        const quad m = static_cast<quad>(i) - j;
        ladder[i] = sqrtq((j - m) * (j + m + 1));
    }
    // upper[a][b] = [exp(zeta J+)]_{a,b} for a >= b; lower from zeta'.
    auto nilpotent = [&](QComplex z) {
        std::vector<std::vector<QComplex>> e(d, std::vector<QComplex>(d));
        for (int b = 0; b < d; ++b) {
            QComplex term{1, 0};
            e[b][b] = term;
            for (int a = b + 1; a < d; ++a) {
                term = scale(term * z, ladder[a - 1] / static_cast<quad>(a - b));
                e[a][b] = term;
            }
        }
        return e;
    };
    const auto up = nilpotent(zeta);
    const auto down = nilpotent(zeta_prime);  // transposed: [exp(zeta' J-)]_{c,b} = down[b][c]

    ComplexMatrix out(d, d);
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            QComplex acc;
            for (int c = 0; c <= std::min(a, b); ++c) {
                const quad weight = expq(eta * (static_cast<quad>(c) - j));
                acc += scale(up[a][c] * down[b][c], weight);
            }
            out(a, b) = Complex(static_cast<double>(acc.re), static_cast<double>(acc.im));
        }
    }
    return out;
}

} // namespace

HalfInteger HalfInteger::from_double(double x) {
    const double twice = 2.0 * x;
    const double rounded = std::round(twice);
    if (!std::isfinite(x) || std::abs(twice - rounded) > 1e-12 || std::abs(rounded) > 1e6) {
        throw DomainError("HalfInteger: " + std::to_string(x) + " is not a half-integer");
    }
    return HalfInteger(static_cast<int>(rounded));
}

std::size_t SpinRep::index_of(HalfInteger m) const {
    const int tj = j.twice();
    const int tm = m.twice();
    if (tm < -tj || tm > tj || (tj + tm) % 2 != 0) {
        throw DomainError("SpinRep: label m=" + std::to_string(m.value()) + " invalid for j=" +
                          std::to_string(j.value()));
    }
    return static_cast<std::size_t>((tj + tm) / 2);
}

HalfInteger SpinRep::label_of(std::size_t index) const {
    if (index >= dim()) {
        throw DomainError("SpinRep: basis index out of range");
    }
    return HalfInteger::from_twice(2 * static_cast<int>(index) - j.twice());
}

ComplexMatrix SpinRep::j1() const {
    return 0.5 * (j_plus + j_minus);
}

ComplexMatrix SpinRep::j2() const {
    return (j_plus - j_minus) / (2.0 * kI);
}

SpinRep build_spin_rep(HalfInteger j) {
    const int tj = j.twice();
    if (tj < 0) {
        throw DomainError("build_spin_rep: j must be non-negative");
    }
    const Eigen::Index dim = tj + 1;
    ComplexMatrix j3 = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix j_plus = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const int tm = 2 * static_cast<int>(i) - tj;
        j3(i, i) = 0.5 * tm;
        if (i + 1 < dim) {
            // (j - m)(j + m + 1) in units of one quarter.
            const double coeff = 0.25 * (tj - tm) * (tj + tm + 2);
            j_plus(i + 1, i) = std::sqrt(coeff);
        }
    }
    ComplexMatrix j_minus = j_plus.adjoint();
    return SpinRep{j, std::move(j3), std::move(j_plus), std::move(j_minus)};
}

SpherePoint::SpherePoint(double theta, double gamma) : theta_(theta), gamma_(gamma) {
    if (!(theta >= 0.0 && theta < std::numbers::pi)) {
        throw DomainError("SpherePoint: theta must lie in [0, pi), got " + std::to_string(theta));
    }
    if (!(gamma >= 0.0 && gamma < 2.0 * std::numbers::pi)) {
        throw DomainError("SpherePoint: gamma must lie in [0, 2pi), got " + std::to_string(gamma));
    }
}

std::array<Eigen::Matrix3d, 3> so3_basis() {
    Eigen::Matrix3d e1;
    e1 << 0, 0, 0,
          0, 0, -1,
          0, 1, 0;
    Eigen::Matrix3d e2;
    e2 << 0, 0, 1,
          0, 0, 0,
          -1, 0, 0;
    Eigen::Matrix3d e3;
    e3 << 0, -1, 0,
          1, 0, 0,
          0, 0, 0;
    return {e1, e2, e3};
}

Eigen::Matrix2cd coset_element(const SpherePoint& point) {
    Eigen::Matrix2cd m1;
    m1 << 0.0, 1.0,
          1.0, 0.0;
    Eigen::Matrix2cd m2;
    m2 << 0.0, -kI,
          kI, 0.0;
    const ComplexMatrix generator =
        (kI * point.theta() / 2.0) * (std::sin(point.gamma()) * m1 - std::cos(point.gamma()) * m2);
    return matrix_exponential(generator);
}

Complex spin_coherent_coefficient(const SpinRep& rep, std::size_t index, double theta, double gamma) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi) || !std::isfinite(gamma)) {
        throw DomainError("spin_coherent_coefficient: theta must lie in [0, pi]");
    }
    if (index >= rep.dim()) {
        throw DomainError("spin_coherent_coefficient: basis index out of range");
    }
    const int n = rep.n();
    const int k = static_cast<int>(index);
    const double s = std::sin(0.5 * theta);
    const double c = std::cos(0.5 * theta);
    double mag = 0.0;
    if (n <= 60) {
        mag = std::sqrt(binomial_coefficient(n, k)) * std::pow(s, k) * std::pow(c, n - k);
    } else if ((s > 0.0 || k == 0) && (c > 0.0 || k == n)) {
        const double log_s = k == 0 ? 0.0 : k * std::log(s);
        const double log_c = k == n ? 0.0 : (n - k) * std::log(c);
        mag = std::exp(0.5 * log_binomial_coefficient(n, k) + log_s + log_c);
    }
    // (-sin)^k carries the sign; the azimuthal phase is e^{-i k gamma}.
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return std::polar(sign * mag, -k * gamma);
}

ComplexVector spin_coherent_coefficients(const SpinRep& rep, double theta, double gamma) {
    ComplexVector v(static_cast<Eigen::Index>(rep.dim()));
    for (std::size_t k = 0; k < rep.dim(); ++k) {
        v(static_cast<Eigen::Index>(k)) = spin_coherent_coefficient(rep, k, theta, gamma);
    }
    return v;
}

CoherentStateSpin spin_coherent_closed_form(const SpinRep& rep, const SpherePoint& point) {
    ComplexVector v = spin_coherent_coefficients(rep, point.theta(), point.gamma());
    // The binomial theorem makes this unit up to rounding; store it normalized.
    return CoherentStateSpin{point, VectorState::normalized(std::move(v))};
}

CoherentStateSpin spin_coherent_via_exponential(const SpinRep& rep, const SpherePoint& point,
                                                double tol) {
    if (!(tol > 0.0)) {
        throw DomainError("spin_coherent_via_exponential: tol must be positive");
    }
    const double theta = point.theta();
    const double gamma = point.gamma();
    const ComplexMatrix generator =
        (kI * theta) * (std::sin(gamma) * rep.j1() - std::cos(gamma) * rep.j2());
    ComplexVector v = matrix_exponential(generator) * basis_vector(rep.dim(), 0);
    const ComplexVector reference = spin_coherent_coefficients(rep, theta, gamma);
    const double gap = phase_aligned_distance(v, reference);
    if (gap > 10.0 * tol) {
        throw ConvergenceError("spin_coherent_via_exponential: routes differ by " +
                               std::to_string(gap));
    }
    return CoherentStateSpin{point, VectorState::normalized(std::move(v))};
}

double gauss_decomposition_check(const SpinRep& rep, const SpherePoint& point) {
    const double theta = point.theta();
    const double gamma = point.gamma();
    const double half_cos = std::cos(0.5 * theta);
    if (std::abs(half_cos) < 1e-8) {
        throw DomainError("gauss_decomposition_check: theta too close to pi");
    }
    const ComplexMatrix d = matrix_exponential(
        (kI * theta) * (std::sin(gamma) * rep.j1() - std::cos(gamma) * rep.j2()));

    const ComplexMatrix factored = gauss_factorization_quad(rep, theta, gamma);
    return operator_norm(d - factored);
}

BinomialMap to_binomial(const SpinRep& rep, const SpherePoint& point, HalfInteger ell) {
    const auto k = static_cast<int>(rep.index_of(ell));
    const double s = std::sin(0.5 * point.theta());
    return BinomialMap{rep.n(), k, s * s};
}

double binomial_pmf(const SpinRep& rep, const SpherePoint& point, HalfInteger ell) {
    const auto k = static_cast<int>(rep.index_of(ell));
    const double s = std::sin(0.5 * point.theta());
    const double c = std::cos(0.5 * point.theta());
    // 1 - p is formed as cos^2 to keep precision near the North Pole.
    return binomial_probability(rep.n(), k, s * s, c * c);
}

} // namespace cohstat
