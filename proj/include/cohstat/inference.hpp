#pragma once

// POV measures built from coherent-state families: invariant-measure
// quadrature on the plane and the sphere, completeness checks, the coherent
// transform, and inferred distributions on the canonical parameter.

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "cohstat/fock.hpp"
#include "cohstat/linops.hpp"
#include "cohstat/pv_measure.hpp"
#include "cohstat/spin.hpp"

namespace cohstat {

enum class ParameterSpace { plane, sphere };

/// Product rule over a parameter space. The primary coordinate is r on the
/// plane and theta on the sphere; the secondary one is the azimuthal angle.
/// Node (i, a) has weight primary_weights[i] * angular_weights[a], which
/// already includes the invariant-measure density and its normalization.
struct QuadratureRule {
    ParameterSpace space = ParameterSpace::plane;
    std::vector<double> primary_nodes;
    std::vector<double> primary_weights;
    std::vector<double> angular_nodes;
    /// Periodic trapezoid, summing to 2 pi.
    std::vector<double> angular_weights;
    /// Radial cutoff R (plane only).
    double radius = 0.0;
    /// Representation the rule was sized for (sphere only).
    HalfInteger j;

    std::size_t size() const { return primary_nodes.size() * angular_nodes.size(); }
    std::size_t angular_size() const { return angular_nodes.size(); }
    /// Flattened index i * angular_size() + a.
    double weight(std::size_t i, std::size_t a) const { return primary_weights[i] * angular_weights[a]; }
};

/// Gauss-Legendre in r on [0, R] times a uniform rule in the angle, for
/// d mu(alpha) = (1/pi) r dr d angle.
QuadratureRule plane_quadrature(double radius, int n_r, int n_angle);

/// Gauss-Legendre in cos(theta) times a uniform rule in gamma, for
/// ((2j+1)/4pi) sin(theta) d theta d gamma. Needs n_theta >= 2j+2 and
/// n_gamma >= 4j+1.
QuadratureRule sphere_quadrature(HalfInteger j, int n_theta, int n_gamma);

/// Sum of w f(primary, angle) over the rule.
double integrate(const QuadratureRule& rule, const std::function<double(double, double)>& f);

/// max over m <= max_moment of |int e^{-r^2} r^{2m} d mu / m! - 1|.
double plane_moment_residual(const QuadratureRule& rule, int max_moment);

/// Coherent states v(alpha) = D(alpha) phi_0 of the Weyl-Heisenberg group,
/// seen through their first K Fock coefficients. The coefficients are the
/// exact infinite-space ones, e^{-|alpha|^2/2} alpha^k / sqrt(k!), without
/// renormalization, so quadrature over the plane is not limited by K.
struct WeylHeisenbergFamily {
    FockSpace space;

    std::size_t dim() const { return space.dim(); }
    /// (phi_k, v(r e^{i angle})) for k < K.
    ComplexVector amplitudes(double r, double angle) const;
};

/// Spin coherent states w(theta, gamma) = D(nu) phi_{-j}.
struct SpinFamily {
    SpinRep rep;

    std::size_t dim() const { return rep.dim(); }
    ComplexVector amplitudes(double theta, double gamma) const;
};

using CoherentFamily = std::variant<WeylHeisenbergFamily, SpinFamily>;

std::size_t family_dim(const CoherentFamily& family);

/// max |M_ij - delta_ij| with M_ij = int (phi_i, v)(v, phi_j) d mu, over the
/// leading `leading` basis elements (0 means all).
double resolution_of_identity_check(const CoherentFamily& family, const QuadratureRule& rule,
                                    std::size_t leading = 0);

/// rho(phi)(node) = (phi, v(node)) at every node of the rule, flattened as
/// in QuadratureRule.
ComplexVector coherent_transform(const ComplexVector& phi, const CoherentFamily& family,
                                 const QuadratureRule& rule);

/// int rho1 conj(rho2) d mu, which reproduces (psi1, psi2) when rho_i = rho(psi_i).
Complex quadrature_inner_product(const ComplexVector& rho1, const ComplexVector& rho2,
                                 const QuadratureRule& rule);

/// Quadrature value of int_Delta |(psi, v)|^2 d mu over the box of nodes
/// with primary coordinate in [p_lo, p_hi] and angle in [a_lo, a_hi].
double pov_box_probability(const ComplexVector& psi, const CoherentFamily& family,
                           const QuadratureRule& rule, double p_lo, double p_hi, double a_lo,
                           double a_hi);

enum class DistributionSource { analytic, pov_quadrature };

/// Density over the canonical parameter: "lambda" = |alpha|^2 or "p" = sin^2(theta/2).
struct InferredDistribution {
    std::string parameter;
    std::vector<double> grid;
    std::vector<double> density;
    /// Mass over the whole parameter space (not just the grid).
    double total_mass = 0.0;
    DistributionSource source = DistributionSource::analytic;

    /// 1e-10 for analytic and sphere constructions, 1e-6 for the plane,
    /// where the radial cutoff limits the mass.
    double mass_tolerance() const;
};

/// Uniform grid on [0, n + 1 + 10 sqrt(n + 1)].
std::vector<double> lambda_grid(int n, std::size_t points = 2001);
/// Uniform grid on [0, 1].
std::vector<double> p_grid(std::size_t points = 1001);

/// Joint density |(phi_obs, v)|^2 marginalized over the azimuthal nodes and
/// re-expressed on the canonical grid. `observed` is the basis index: the
/// count n for the plane, k = j + l for the sphere.
InferredDistribution infer_via_pov(std::size_t observed, const CoherentFamily& family,
                                   const QuadratureRule& rule, const std::vector<double>& grid);

/// Plane family and rule sized for the grid: R = sqrt(max lambda) + 8.
InferredDistribution infer_poisson_pov(int n, const std::vector<double>& grid, int n_r = 256,
                                       int n_angle = 64);
/// Sphere family and the smallest exact rule for j = n / 2.
InferredDistribution infer_binomial_pov(int n, int k, const std::vector<double>& grid);

/// e^{-lambda} lambda^n / n!, the Gamma(n+1, 1) density.
double inferred_density_poisson(int n, double lambda);
/// (n+1) C(n, k) p^k (1-p)^{n-k}, the Beta(k+1, n-k+1) density.
double inferred_density_binomial(int n, int k, double p);

InferredDistribution analytic_poisson_posterior(int n, const std::vector<double>& grid);
InferredDistribution analytic_binomial_posterior(int n, int k, const std::vector<double>& grid);

struct CredibleInterval {
    double low;
    double high;
    /// Fraction of the grid's trapezoidal mass inside [low, high].
    double mass;
};

/// Shortest window of grid points whose trapezoidal mass, as a fraction of
/// the mass on the whole grid, is at least `mass`. Among equally short
/// windows the one enclosing the most mass wins, then the lower left endpoint.
CredibleInterval credible_interval(const InferredDistribution& dist, double mass);

} // namespace cohstat
