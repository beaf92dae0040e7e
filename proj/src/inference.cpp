#include "cohstat/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cohstat/errors.hpp"
#include "cohstat/special.hpp"

namespace cohstat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> uniform_angles(int n) {
    std::vector<double> nodes(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
        nodes[static_cast<std::size_t>(a)] = kTwoPi * a / n;
    }
    return nodes;
}

void require_compatible(const CoherentFamily& family, const QuadratureRule& rule, const char* op) {
    std::visit(Overloaded{
                   [&](const WeylHeisenbergFamily&) {
                       if (rule.space != ParameterSpace::plane) {
                           throw DomainError(std::string(op) + ": plane family needs a plane rule");
                       }
                   },
                   [&](const SpinFamily& f) {
                       if (rule.space != ParameterSpace::sphere) {
                           throw DomainError(std::string(op) + ": spin family needs a sphere rule");
                       }
                       if (!(rule.j == f.rep.j)) {
                           throw DomainError(std::string(op) + ": sphere rule was built for j=" +
                                             std::to_string(rule.j.value()) + ", family has j=" +
                                             std::to_string(f.rep.j.value()));
                       }
                   },
               },
               family);
}

ComplexVector family_amplitudes(const CoherentFamily& family, double primary, double angle) {
    return std::visit([&](const auto& f) { return f.amplitudes(primary, angle); }, family);
}

void require_grid(const std::vector<double>& grid, double lo, double hi, const char* op) {
    if (grid.size() < 2) {
        throw DomainError(std::string(op) + ": grid needs at least two points");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= lo && grid[i] <= hi)) {
            throw DomainError(std::string(op) + ": grid point " + std::to_string(grid[i]) +
                              " outside the parameter range");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw DomainError(std::string(op) + ": grid must be strictly increasing");
        }
    }
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
    if (points < 2) {
        throw DomainError("grid needs at least two points");
    }
    std::vector<double> grid(points);
    const double step = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo + step * static_cast<double>(i);
    }
    grid.back() = hi;
    return grid;
}

} // namespace

QuadratureRule plane_quadrature(double radius, int n_r, int n_angle) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("plane_quadrature: radius must be positive");
    }
    if (n_r < 2 || n_angle < 2) {
        throw DomainError("plane_quadrature: node counts must be at least 2");
    }
    const GaussLegendreRule gl = gauss_legendre(n_r, 0.0, radius);
    QuadratureRule rule;
    rule.space = ParameterSpace::plane;
    rule.radius = radius;
    rule.primary_nodes = gl.nodes;
    rule.primary_weights.resize(gl.nodes.size());
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        rule.primary_weights[i] = gl.weights[i] * gl.nodes[i] / std::numbers::pi;
    }
    rule.angular_nodes = uniform_angles(n_angle);
    rule.angular_weights.assign(static_cast<std::size_t>(n_angle), kTwoPi / n_angle);
    return rule;
}

QuadratureRule sphere_quadrature(HalfInteger j, int n_theta, int n_gamma) {
    const int tj = j.twice();
    if (tj < 0) {
        throw DomainError("sphere_quadrature: j must be non-negative");
    }
    if (n_theta < tj + 2 || n_gamma < 2 * tj + 1) {
        throw DomainError("sphere_quadrature: need n_theta >= 2j+2 and n_gamma >= 4j+1 for j=" +
                          std::to_string(j.value()));
    }
    const GaussLegendreRule gl = gauss_legendre(n_theta, -1.0, 1.0);
    const double density = (tj + 1.0) / (4.0 * std::numbers::pi);
    QuadratureRule rule;
    rule.space = ParameterSpace::sphere;
    rule.j = j;
    // Nodes in cos(theta) ascend, so walk them backwards to get ascending theta.
    for (std::size_t i = gl.nodes.size(); i-- > 0;) {
        rule.primary_nodes.push_back(std::acos(gl.nodes[i]));
        rule.primary_weights.push_back(gl.weights[i] * density);
    }
    rule.angular_nodes = uniform_angles(n_gamma);
    rule.angular_weights.assign(static_cast<std::size_t>(n_gamma), kTwoPi / n_gamma);
    return rule;
}

double integrate(const QuadratureRule& rule, const std::function<double(double, double)>& f) {
    double total = 0.0;
    for (std::size_t i = 0; i < rule.primary_nodes.size(); ++i) {
        double inner = 0.0;
        for (std::size_t a = 0; a < rule.angular_size(); ++a) {
            inner += rule.angular_weights[a] * f(rule.primary_nodes[i], rule.angular_nodes[a]);
        }
        total += rule.primary_weights[i] * inner;
    }
    return total;
}

double plane_moment_residual(const QuadratureRule& rule, int max_moment) {
    if (rule.space != ParameterSpace::plane) {
        throw DomainError("plane_moment_residual: needs a plane rule");
    }
    double angular = 0.0;
    for (double w : rule.angular_weights) {
        angular += w;
    }
    double worst = 0.0;
    for (int m = 0; m <= max_moment; ++m) {
        double sum = 0.0;
        for (std::size_t i = 0; i < rule.primary_nodes.size(); ++i) {
            const double r = rule.primary_nodes[i];
            sum += rule.primary_weights[i] * std::exp(-r * r + 2.0 * m * std::log(r) - log_factorial(m));
        }
        worst = std::max(worst, std::abs(sum * angular - 1.0));
    }
    return worst;
}

ComplexVector WeylHeisenbergFamily::amplitudes(double r, double angle) const {
    const Complex alpha = std::polar(r, angle);
    ComplexVector v(static_cast<Eigen::Index>(dim()));
    for (std::size_t k = 0; k < dim(); ++k) {
        v(static_cast<Eigen::Index>(k)) = wh_coherent_coefficient(k, alpha);
    }
    return v;
}

ComplexVector SpinFamily::amplitudes(double theta, double gamma) const {
    return spin_coherent_coefficients(rep, theta, gamma);
}

std::size_t family_dim(const CoherentFamily& family) {
    return std::visit([](const auto& f) { return f.dim(); }, family);
}

double resolution_of_identity_check(const CoherentFamily& family, const QuadratureRule& rule,
                                    std::size_t leading) {
    require_compatible(family, rule, "resolution_of_identity_check");
    const std::size_t dim = family_dim(family);
    const std::size_t block = leading == 0 ? dim : std::min(leading, dim);
    const auto n = static_cast<Eigen::Index>(dim);
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < rule.primary_nodes.size(); ++i) {
        for (std::size_t a = 0; a < rule.angular_size(); ++a) {
            const ComplexVector v = family_amplitudes(family, rule.primary_nodes[i], rule.angular_nodes[a]);
            m.noalias() += rule.weight(i, a) * (v * v.adjoint());
        }
    }
    const auto b = static_cast<Eigen::Index>(block);
    const ComplexMatrix gap = m.topLeftCorner(b, b) - ComplexMatrix::Identity(b, b);
    return gap.cwiseAbs().maxCoeff();
}

ComplexVector coherent_transform(const ComplexVector& phi, const CoherentFamily& family,
                                 const QuadratureRule& rule) {
    require_compatible(family, rule, "coherent_transform");
    if (static_cast<std::size_t>(phi.size()) != family_dim(family)) {
        throw DimensionError("coherent_transform: state dimension does not match the family");
    }
    ComplexVector rho(static_cast<Eigen::Index>(rule.size()));
    Eigen::Index idx = 0;
    for (std::size_t i = 0; i < rule.primary_nodes.size(); ++i) {
        for (std::size_t a = 0; a < rule.angular_size(); ++a) {
            rho(idx++) = inner_product(phi, family_amplitudes(family, rule.primary_nodes[i],
                                                              rule.angular_nodes[a]));
        }
    }
    return rho;
}

Complex quadrature_inner_product(const ComplexVector& rho1, const ComplexVector& rho2,
                                 const QuadratureRule& rule) {
    if (static_cast<std::size_t>(rho1.size()) != rule.size() ||
        static_cast<std::size_t>(rho2.size()) != rule.size()) {
        throw DimensionError("quadrature_inner_product: tabulations do not match the rule");
    }
    Complex total{0.0, 0.0};
    Eigen::Index idx = 0;
    for (std::size_t i = 0; i < rule.primary_nodes.size(); ++i) {
        for (std::size_t a = 0; a < rule.angular_size(); ++a, ++idx) {
            total += rule.weight(i, a) * rho1(idx) * std::conj(rho2(idx));
        }
    }
    return total;
}

double pov_box_probability(const ComplexVector& psi, const CoherentFamily& family,
                           const QuadratureRule& rule, double p_lo, double p_hi, double a_lo,
                           double a_hi) {
    const ComplexVector rho = coherent_transform(psi, family, rule);
    double total = 0.0;
    Eigen::Index idx = 0;
    for (std::size_t i = 0; i < rule.primary_nodes.size(); ++i) {
        const double x = rule.primary_nodes[i];
        for (std::size_t a = 0; a < rule.angular_size(); ++a, ++idx) {
            const double y = rule.angular_nodes[a];
            if (x >= p_lo && x <= p_hi && y >= a_lo && y <= a_hi) {
                total += rule.weight(i, a) * std::norm(rho(idx));
            }
        }
    }
    return total;
}

double InferredDistribution::mass_tolerance() const {
    if (source == DistributionSource::pov_quadrature && parameter == "lambda") {
        return 1e-6;
    }
    return 1e-10;
}

std::vector<double> lambda_grid(int n, std::size_t points) {
    if (n < 0) {
        throw DomainError("lambda_grid: n must be non-negative");
    }
    const double top = n + 1.0 + 10.0 * std::sqrt(n + 1.0);
    return uniform_grid(0.0, top, points);
}

std::vector<double> p_grid(std::size_t points) {
    return uniform_grid(0.0, 1.0, points);
}

InferredDistribution infer_via_pov(std::size_t observed, const CoherentFamily& family,
                                   const QuadratureRule& rule, const std::vector<double>& grid) {
    require_compatible(family, rule, "infer_via_pov");
    if (observed >= family_dim(family)) {
        throw DomainError("infer_via_pov: observed index " + std::to_string(observed) +
                          " outside the representation of dimension " +
                          std::to_string(family_dim(family)));
    }

    InferredDistribution out;
    out.source = DistributionSource::pov_quadrature;
    out.grid = grid;
    out.density.resize(grid.size());

    std::visit(
        Overloaded{
            [&](const WeylHeisenbergFamily&) {
                require_grid(grid, 0.0, std::numeric_limits<double>::max(), "infer_via_pov");
                if (grid.back() > rule.radius * rule.radius) {
                    throw ConvergenceError("infer_via_pov: insufficient quadrature, grid reaches lambda=" +
                                           std::to_string(grid.back()) + " beyond cutoff R^2=" +
                                           std::to_string(rule.radius * rule.radius));
                }
                out.parameter = "lambda";
                // d mu = (1/2pi) d lambda d angle, so the lambda marginal is the
                // angular mean of the joint density.
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    const double r = std::sqrt(grid[g]);
                    double sum = 0.0;
                    for (std::size_t a = 0; a < rule.angular_size(); ++a) {
                        sum += rule.angular_weights[a] *
                               std::norm(wh_coherent_coefficient(observed, std::polar(r, rule.angular_nodes[a])));
                    }
                    out.density[g] = sum / kTwoPi;
                }
                double mass = 0.0;
                for (std::size_t i = 0; i < rule.primary_nodes.size(); ++i) {
                    for (std::size_t a = 0; a < rule.angular_size(); ++a) {
                        const Complex alpha = std::polar(rule.primary_nodes[i], rule.angular_nodes[a]);
                        mass += rule.weight(i, a) * std::norm(wh_coherent_coefficient(observed, alpha));
                    }
                }
                out.total_mass = mass;
            },
            [&](const SpinFamily& f) {
                require_grid(grid, 0.0, 1.0, "infer_via_pov");
                out.parameter = "p";
                // ((2j+1)/4pi) sin(theta) d theta d gamma with dp = sin(theta)/2 d theta:
                // the p marginal is (2j+1)/2pi times the gamma integral.
                const double factor = static_cast<double>(f.rep.dim()) / kTwoPi;
                for (std::size_t g = 0; g < grid.size(); ++g) {
                    const double theta = 2.0 * std::asin(std::sqrt(grid[g]));
                    double sum = 0.0;
                    for (std::size_t a = 0; a < rule.angular_size(); ++a) {
                        sum += rule.angular_weights[a] *
                               std::norm(spin_coherent_coefficient(f.rep, observed, theta, rule.angular_nodes[a]));
                    }
                    out.density[g] = factor * sum;
                }
                double mass = 0.0;
                for (std::size_t i = 0; i < rule.primary_nodes.size(); ++i) {
                    for (std::size_t a = 0; a < rule.angular_size(); ++a) {
                        mass += rule.weight(i, a) *
                                std::norm(spin_coherent_coefficient(f.rep, observed, rule.primary_nodes[i],
                                                                    rule.angular_nodes[a]));
                    }
                }
                out.total_mass = mass;
            },
        },
        family);
    return out;
}

InferredDistribution infer_poisson_pov(int n, const std::vector<double>& grid, int n_r, int n_angle) {
    if (n < 0) {
        throw DomainError("infer_poisson_pov: n must be non-negative");
    }
    if (grid.empty()) {
        throw DomainError("infer_poisson_pov: empty grid");
    }
    const double radius = std::sqrt(std::max(grid.back(), 0.0)) + 8.0;
    const CoherentFamily family = WeylHeisenbergFamily{FockSpace(static_cast<std::size_t>(n) + 2)};
    return infer_via_pov(static_cast<std::size_t>(n), family, plane_quadrature(radius, n_r, n_angle), grid);
}

InferredDistribution infer_binomial_pov(int n, int k, const std::vector<double>& grid) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("infer_binomial_pov: need 0 <= k <= n");
    }
    const HalfInteger j = HalfInteger::from_twice(n);
    const CoherentFamily family = SpinFamily{build_spin_rep(j)};
    const QuadratureRule rule = sphere_quadrature(j, n + 2, std::max(2 * n + 1, 2));
    return infer_via_pov(static_cast<std::size_t>(k), family, rule, grid);
}

double inferred_density_poisson(int n, double lambda) {
    if (n < 0) {
        throw DomainError("inferred_density_poisson: n must be non-negative");
    }
    if (!(lambda >= 0.0)) {
        throw DomainError("inferred_density_poisson: lambda must be non-negative");
    }
    return poisson_probability(lambda, n);
}

double inferred_density_binomial(int n, int k, double p) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("inferred_density_binomial: need 0 <= k <= n");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("inferred_density_binomial: p must lie in [0, 1]");
    }
    return (n + 1.0) * binomial_probability(n, k, p, 1.0 - p);
}

InferredDistribution analytic_poisson_posterior(int n, const std::vector<double>& grid) {
    require_grid(grid, 0.0, std::numeric_limits<double>::max(), "analytic_poisson_posterior");
    InferredDistribution out;
    out.parameter = "lambda";
    out.source = DistributionSource::analytic;
    out.grid = grid;
    out.density.reserve(grid.size());
    for (double lambda : grid) {
        out.density.push_back(inferred_density_poisson(n, lambda));
    }
    // Composite Gauss-Legendre far enough into the tail that the remainder is negligible.
    const double top = n + 1.0 + 40.0 * std::sqrt(n + 1.0);
    constexpr int kPanels = 128;
    const GaussLegendreRule gl = gauss_legendre(16, 0.0, top / kPanels);
    double mass = 0.0;
    for (int panel = 0; panel < kPanels; ++panel) {
        const double shift = top * panel / kPanels;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            mass += gl.weights[i] * inferred_density_poisson(n, shift + gl.nodes[i]);
        }
    }
    out.total_mass = mass;
    return out;
}

InferredDistribution analytic_binomial_posterior(int n, int k, const std::vector<double>& grid) {
    require_grid(grid, 0.0, 1.0, "analytic_binomial_posterior");
    InferredDistribution out;
    out.parameter = "p";
    out.source = DistributionSource::analytic;
    out.grid = grid;
    out.density.reserve(grid.size());
    for (double p : grid) {
        out.density.push_back(inferred_density_binomial(n, k, p));
    }
    // Degree-n polynomial: exact with n/2 + 1 nodes.
    const GaussLegendreRule gl = gauss_legendre(std::max(16, n / 2 + 2), 0.0, 1.0);
    double mass = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        mass += gl.weights[i] * inferred_density_binomial(n, k, gl.nodes[i]);
    }
    out.total_mass = mass;
    return out;
}

CredibleInterval credible_interval(const InferredDistribution& dist, double mass) {
    if (!(mass > 0.0 && mass < 1.0)) {
        throw DomainError("credible_interval: mass must lie in (0, 1)");
    }
    const std::vector<double>& x = dist.grid;
    const std::vector<double>& f = dist.density;
    if (x.size() < 3 || f.size() != x.size()) {
        throw DomainError("credible_interval: grid too coarse to achieve mass");
    }
    std::vector<double> cumulative(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        cumulative[i] = cumulative[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    }
    const double total = cumulative.back();
    if (!(total > 0.0)) {
        throw DomainError("credible_interval: grid too coarse to achieve mass");
    }

    const double target = mass * total;
    std::size_t best_lo = 0;
    std::size_t best_hi = x.size() - 1;
    double best_width = x.back() - x.front();
    double best_enclosed = total;
    const double tie_tol = 1e-12 * std::max(1.0, best_width);
    std::size_t hi = 0;
    for (std::size_t lo = 0; lo < x.size(); ++lo) {
        // cumulative is non-decreasing, so the right edge never moves left.
        hi = std::max(hi, lo);
        while (hi < x.size() && cumulative[hi] - cumulative[lo] < target) {
            ++hi;
        }
        if (hi == x.size()) {
            break;
        }
        const double width = x[hi] - x[lo];
        const double enclosed = cumulative[hi] - cumulative[lo];
        // Among windows of equal width the one holding more mass wins, so a
        // symmetric density gets a centred interval; then the lowest left end.
        const bool narrower = width < best_width - tie_tol;
        const bool heavier = width <= best_width + tie_tol && enclosed > best_enclosed + 1e-12 * total;
        if (narrower || heavier) {
            best_width = width;
            best_enclosed = enclosed;
            best_lo = lo;
            best_hi = hi;
        }
    }
    return CredibleInterval{x[best_lo], x[best_hi], (cumulative[best_hi] - cumulative[best_lo]) / total};
}

} // namespace cohstat
