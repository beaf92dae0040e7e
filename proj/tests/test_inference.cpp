#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "cohstat/errors.hpp"
#include "cohstat/inference.hpp"
#include "cohstat/special.hpp"

using namespace cohstat;

namespace {

constexpr double kPi = std::numbers::pi;

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

// O(n^2) scan over every window of grid points.
CredibleInterval brute_force_interval(const InferredDistribution& d, double mass) {
    const auto& x = d.grid;
    const auto& f = d.density;
    std::vector<double> cum(x.size(), 0.0);
    for (std::size_t i = 1; i < x.size(); ++i) {
        cum[i] = cum[i - 1] + 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
    }
    CredibleInterval best{x.front(), x.back(), 1.0};
    for (std::size_t lo = 0; lo < x.size(); ++lo) {
        for (std::size_t hi = lo; hi < x.size(); ++hi) {
            const double m = (cum[hi] - cum[lo]) / cum.back();
            if (m < mass) {
                continue;
            }
            const double w = x[hi] - x[lo];
            const double best_w = best.high - best.low;
            if (w < best_w - 1e-12 || (w <= best_w + 1e-12 && m > best.mass + 1e-12)) {
                best = {x[lo], x[hi], m};
            }
        }
    }
    return best;
}

} // namespace

TEST_CASE("plane rule integrates against the invariant measure") {
    const QuadratureRule disk = plane_quadrature(3.0, 8, 4);
    CHECK(std::abs(integrate(disk, [](double, double) { return 1.0; }) - 9.0) < 1e-13);

    const QuadratureRule full = plane_quadrature(12.0, 200, 16);
    CHECK(std::abs(integrate(full, [](double r, double) { return std::exp(-r * r); }) - 1.0) < 1e-13);
    CHECK(plane_moment_residual(full, 20) < 1e-10);
    for (int m = 0; m <= 10; ++m) {
        const double q = integrate(full, [m](double r, double) { return std::exp(-r * r) * std::pow(r * r, m); });
        CHECK(std::abs(q - std::tgamma(m + 1.0)) <= 1e-12 * std::tgamma(m + 1.0));
    }
    double angle_sum = 0.0;
    for (double w : full.angular_weights) {
        angle_sum += w;
    }
    CHECK(std::abs(angle_sum - 2 * kPi) < 1e-14);
    CHECK_THROWS_AS(plane_quadrature(-1.0, 10, 10), DomainError);
}

TEST_CASE("sphere rule integrates against the invariant measure") {
    for (int tj : {0, 1, 4, 10}) {
        const QuadratureRule s = sphere_quadrature(half(tj), tj + 2, std::max(2 * tj + 1, 1));
        CHECK(std::abs(integrate(s, [](double, double) { return 1.0; }) - (tj + 1)) < 1e-13);
    }
    const QuadratureRule s = sphere_quadrature(half(1), 3, 3);
    CHECK(std::abs(integrate(s, [](double t, double) { return std::pow(std::sin(t / 2), 2); }) - 1.0) < 1e-14);
    // j = 3: total measure 7, a third of it from cos(theta)^2 and half of that
    // from cos(gamma)^2.
    const QuadratureRule big = sphere_quadrature(half(6), 8, 13);
    const double q = integrate(big, [](double t, double g) { return std::pow(std::cos(t) * std::cos(g), 2); });
    CHECK(std::abs(q - 7.0 / 6.0) < 1e-13);
    CHECK_THROWS_AS(sphere_quadrature(half(4), 3, 9), DomainError);
}

TEST_CASE("resolution of identity") {
    CHECK(resolution_of_identity_check(SpinFamily{build_spin_rep(half(1))}, sphere_quadrature(half(1), 3, 3)) <
          1e-13);
    CHECK(resolution_of_identity_check(SpinFamily{build_spin_rep(half(10))}, sphere_quadrature(half(10), 12, 21)) <
          1e-12);
    CHECK(resolution_of_identity_check(WeylHeisenbergFamily{FockSpace(32)}, plane_quadrature(10.0, 200, 64), 20) <
          1e-8);
    // Too few azimuthal nodes cannot resolve the off-diagonal phases.
    QuadratureRule coarse = sphere_quadrature(half(4), 6, 9);
    coarse.angular_nodes.resize(3);
    coarse.angular_weights.assign(3, 2 * kPi / 3);
    for (std::size_t a = 0; a < 3; ++a) {
        coarse.angular_nodes[a] = 2 * kPi * static_cast<double>(a) / 3;
    }
    CHECK(resolution_of_identity_check(SpinFamily{build_spin_rep(half(4))}, coarse) > 1e-3);
    CHECK_THROWS_AS(
        resolution_of_identity_check(SpinFamily{build_spin_rep(half(4))}, sphere_quadrature(half(2), 4, 5)),
        DomainError);
}

TEST_CASE("coherent transform is an isometry on the truncated basis") {
    const CoherentFamily wh = WeylHeisenbergFamily{FockSpace(32)};
    const QuadratureRule rule = plane_quadrature(10.0, 200, 64);
    const ComplexVector rho0 = coherent_transform(basis_vector(32, 0), wh, rule);
    for (std::size_t i = 0; i < rule.primary_nodes.size(); i += 17) {
        for (std::size_t a = 0; a < rule.angular_size(); a += 5) {
            const double r = rule.primary_nodes[i];
            CHECK(std::abs(std::norm(rho0(static_cast<Eigen::Index>(i * rule.angular_size() + a))) -
                           std::exp(-r * r)) < 1e-15);
        }
    }
    for (std::size_t n = 0; n < 20; ++n) {
        const ComplexVector rho = coherent_transform(basis_vector(32, n), wh, rule);
        CHECK(std::abs(quadrature_inner_product(rho, rho, rule) - 1.0) < 1e-8);
    }
    const ComplexVector r3 = coherent_transform(basis_vector(32, 3), wh, rule);
    const ComplexVector r7 = coherent_transform(basis_vector(32, 7), wh, rule);
    CHECK(std::abs(quadrature_inner_product(r3, r7, rule)) < 1e-8);

    std::mt19937_64 rng(51);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexVector u(32);
    ComplexVector v(32);
    for (int k = 0; k < 32; ++k) {
        u(k) = k < 15 ? Complex(g(rng), g(rng)) : 0.0;
        v(k) = k < 15 ? Complex(g(rng), g(rng)) : 0.0;
    }
    const Complex q = quadrature_inner_product(coherent_transform(u, wh, rule), coherent_transform(v, wh, rule), rule);
    CHECK(std::abs(q - inner_product(u, v)) < 1e-8 * u.norm() * v.norm());
    CHECK_THROWS_AS(coherent_transform(basis_vector(5, 0), wh, rule), DimensionError);
}

TEST_CASE("property: POV box probabilities are non-negative") {
    std::mt19937_64 rng(52);
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const CoherentFamily spin = SpinFamily{build_spin_rep(half(6))};
    const QuadratureRule srule = sphere_quadrature(half(6), 8, 13);
    const CoherentFamily wh = WeylHeisenbergFamily{FockSpace(24)};
    const QuadratureRule prule = plane_quadrature(8.0, 60, 32);
    for (int t = 0; t < 40; ++t) {
        const bool use_spin = t % 2 == 0;
        const int d = use_spin ? 7 : 24;
        ComplexVector psi(d);
        for (int k = 0; k < d; ++k) {
            psi(k) = Complex(g(rng), g(rng));
        }
        psi.normalize();
        double lo = u01(rng);
        double hi = u01(rng);
        if (lo > hi) {
            std::swap(lo, hi);
        }
        double alo = 2 * kPi * u01(rng);
        double ahi = 2 * kPi * u01(rng);
        if (alo > ahi) {
            std::swap(alo, ahi);
        }
        const double box = use_spin ? pov_box_probability(psi, spin, srule, lo * kPi, hi * kPi, alo, ahi)
                                    : pov_box_probability(psi, wh, prule, lo * 8.0, hi * 8.0, alo, ahi);
        CHECK(box >= -1e-12);
        const double whole = use_spin ? pov_box_probability(psi, spin, srule, 0.0, kPi, 0.0, 2 * kPi)
                                      : pov_box_probability(psi, wh, prule, 0.0, 8.0, 0.0, 2 * kPi);
        CHECK(box <= whole + 1e-12);
        if (use_spin) {
            CHECK(std::abs(whole - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("joint density is independent of the azimuthal angle") {
    const WeylHeisenbergFamily wh{FockSpace(30)};
    const SpinFamily sf{build_spin_rep(half(9))};
    for (double r : {0.1, 1.0, 3.3}) {
        const Eigen::VectorXd ref = wh.amplitudes(r, 0.0).cwiseAbs2();
        for (double a : {0.7, 2.0, 5.9}) {
            CHECK((wh.amplitudes(r, a).cwiseAbs2() - ref).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    for (double theta : {0.2, 1.5, 2.7}) {
        const Eigen::VectorXd ref = sf.amplitudes(theta, 0.0).cwiseAbs2();
        for (double gamma : {0.7, 2.0, 5.9}) {
            CHECK((sf.amplitudes(theta, gamma).cwiseAbs2() - ref).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("inferred densities from the POV route") {
    const std::vector<double> grid0 = lambda_grid(0);
    const InferredDistribution d0 = infer_poisson_pov(0, grid0);
    CHECK(d0.parameter == "lambda");
    for (std::size_t i = 0; i < grid0.size(); i += 50) {
        CHECK(std::abs(d0.density[i] - std::exp(-grid0[i])) < 1e-12);
    }
    CHECK(std::abs(d0.total_mass - 1.0) < d0.mass_tolerance());

    // Mass of [0, 1] by composite Gauss-Legendre over a fine POV tabulation.
    const GaussLegendreRule gl = gauss_legendre(20, 0.0, 1.0);
    const InferredDistribution unit = infer_poisson_pov(0, gl.nodes);
    double mass01 = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        mass01 += gl.weights[i] * unit.density[i];
    }
    CHECK(std::abs(mass01 - (1.0 - std::exp(-1.0))) < 1e-12);
    CHECK(std::abs(mass01 - 0.6321206) < 1e-7);

    const std::vector<double> pg = p_grid();
    const InferredDistribution b = infer_binomial_pov(2, 1, pg);
    CHECK(b.parameter == "p");
    for (std::size_t i = 0; i < pg.size(); ++i) {
        CHECK(std::abs(b.density[i] - 6 * pg[i] * (1 - pg[i])) < 1e-12);
    }
    const InferredDistribution b0 = infer_binomial_pov(7, 0, pg);
    CHECK(std::abs(b0.density.back()) < 1e-15);

    CHECK_THROWS_AS(infer_via_pov(0, WeylHeisenbergFamily{FockSpace(8)}, plane_quadrature(3.0, 20, 8), lambda_grid(5)),
                    ConvergenceError);
    CHECK_THROWS_AS(infer_binomial_pov(3, 4, pg), DomainError);
}

TEST_CASE("property: POV and analytic routes agree for n up to 30") {
    for (int n : {0, 3, 11, 30}) {
        const std::vector<double> grid = lambda_grid(n, 401);
        CHECK(max_abs_diff(infer_poisson_pov(n, grid).density, analytic_poisson_posterior(n, grid).density) < 1e-8);
    }
    const std::vector<double> pg = p_grid(301);
    for (int n : {0, 1, 6, 17, 30}) {
        for (int k : {0, n / 3, n}) {
            const InferredDistribution pov = infer_binomial_pov(n, k, pg);
            CHECK(max_abs_diff(pov.density, analytic_binomial_posterior(n, k, pg).density) < 1e-10);
            CHECK(std::abs(pov.total_mass - 1.0) < pov.mass_tolerance());
        }
    }
}

TEST_CASE("analytic posteriors") {
    CHECK(inferred_density_poisson(0, 0.0) == 1.0);
    for (int n : {0, 1, 5, 20}) {
        const InferredDistribution d = analytic_poisson_posterior(n, lambda_grid(n));
        CHECK(std::abs(d.total_mass - 1.0) < 1e-10);
        // Mean n + 1 by Gauss-Legendre panels.
        const double hi = n + 1 + 40 * std::sqrt(n + 1.0);
        double mean = 0.0;
        for (int p = 0; p < 64; ++p) {
            const GaussLegendreRule r = gauss_legendre(16, hi * p / 64, hi * (p + 1) / 64);
            for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                mean += r.weights[i] * r.nodes[i] * inferred_density_poisson(n, r.nodes[i]);
            }
        }
        CHECK(std::abs(mean - (n + 1)) < 1e-8);
    }
    for (double lambda : {0.3, 2.0, 17.5}) {
        for (int n : {0, 4, 25}) {
            const double a = poisson_pmf(std::sqrt(lambda), n);
            const double b = inferred_density_poisson(n, lambda);
            CHECK(std::abs(a - b) <= 1e-15 * std::max(a, 1e-300));
        }
    }

    for (double p : {0.0, 0.3, 0.5, 1.0}) {
        CHECK(inferred_density_binomial(0, 0, p) == 1.0);
        CHECK(std::abs(inferred_density_binomial(2, 1, p) - 6 * p * (1 - p)) < 1e-15);
        CHECK(std::abs(inferred_density_binomial(2, 2, p) - 3 * p * p) < 1e-15);
    }
    const InferredDistribution b22 = analytic_binomial_posterior(2, 1, p_grid());
    double mean = 0.0;
    const GaussLegendreRule gl = gauss_legendre(8, 0.0, 1.0);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        mean += gl.weights[i] * gl.nodes[i] * inferred_density_binomial(2, 1, gl.nodes[i]);
    }
    CHECK(std::abs(mean - 0.5) < 1e-15);
    CHECK(std::abs(b22.total_mass - 1.0) < 1e-12);
    const InferredDistribution b31 = analytic_binomial_posterior(2, 2, p_grid());
    CHECK(std::max_element(b31.density.begin(), b31.density.end()) == b31.density.end() - 1);
    CHECK_THROWS_AS(inferred_density_binomial(2, 1, 1.5), DomainError);
}

TEST_CASE("credible intervals") {
    const InferredDistribution beta22 = analytic_binomial_posterior(2, 1, p_grid());
    const CredibleInterval half_mass = credible_interval(beta22, 0.5);
    CHECK(std::abs((half_mass.low + half_mass.high) / 2 - 0.5) <= 1e-3);
    CHECK(half_mass.mass >= 0.5);

    const InferredDistribution gamma1 = analytic_poisson_posterior(0, lambda_grid(0));
    const CredibleInterval g = credible_interval(gamma1, 0.5);
    const double step = gamma1.grid[1] - gamma1.grid[0];
    CHECK(g.low == 0.0);
    CHECK(std::abs(g.high - std::log(2.0)) <= step);

    const CredibleInterval full = credible_interval(beta22, 1.0 - 1e-15);
    CHECK(full.low == 0.0);
    CHECK(full.high == 1.0);

    for (int n : {1, 4, 9}) {
        const InferredDistribution d = analytic_poisson_posterior(n, lambda_grid(n, 301));
        const InferredDistribution b = analytic_binomial_posterior(n, n / 3, p_grid(301));
        for (double m : {0.3, 0.5, 0.9, 0.95}) {
            for (const auto* dist : {&d, &b}) {
                const CredibleInterval fast = credible_interval(*dist, m);
                const CredibleInterval slow = brute_force_interval(*dist, m);
                CHECK(std::abs((fast.high - fast.low) - (slow.high - slow.low)) < 1e-12);
                CHECK(fast.low == slow.low);
            }
        }
    }
    CHECK_THROWS_AS(credible_interval(beta22, 1.0), DomainError);
    InferredDistribution tiny = beta22;
    tiny.grid.resize(2);
    tiny.density.resize(2);
    CHECK_THROWS_AS(credible_interval(tiny, 0.5), DomainError);
}
