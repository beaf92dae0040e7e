#include "cohstat/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cohstat/errors.hpp"

namespace cohstat {

double log_factorial(std::int64_t n) {
    if (n < 0) {
        throw DomainError("log_factorial: negative argument");
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double binomial_coefficient(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("binomial_coefficient: need 0 <= k <= n");
    }
    if (n <= 60) {
        // Multiplicative form stays integral at every step and C(60, 30) fits in 64 bits.
        k = std::min(k, n - k);
        std::uint64_t c = 1;
        for (std::int64_t i = 1; i <= k; ++i) {
            c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
        }
        return static_cast<double>(c);
    }
    return std::exp(log_binomial_coefficient(n, k));
}

double log_binomial_coefficient(std::int64_t n, std::int64_t k) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("log_binomial_coefficient: need 0 <= k <= n");
    }
    if (n <= 60) {
        return std::log(binomial_coefficient(n, k));
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

double poisson_probability(double lambda, std::int64_t n) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw DomainError("poisson_probability: lambda must be finite and >= 0");
    }
    if (n < 0) {
        throw DomainError("poisson_probability: n must be >= 0");
    }
    if (lambda == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(-lambda + static_cast<double>(n) * std::log(lambda) - log_factorial(n));
}

double binomial_probability(std::int64_t n, std::int64_t k, double p, double q) {
    if (n < 0 || k < 0 || k > n) {
        throw DomainError("binomial_probability: need 0 <= k <= n");
    }
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
        throw DomainError("binomial_probability: p and q must lie in [0, 1]");
    }
    if (n <= 60) {
        return binomial_coefficient(n, k) * std::pow(p, static_cast<double>(k)) *
               std::pow(q, static_cast<double>(n - k));
    }
    if ((p == 0.0 && k > 0) || (q == 0.0 && k < n)) {
        return 0.0;
    }
    const double log_p = k == 0 ? 0.0 : static_cast<double>(k) * std::log(p);
    const double log_q = k == n ? 0.0 : static_cast<double>(n - k) * std::log(q);
    return std::exp(log_binomial_coefficient(n, k) + log_p + log_q);
}

GaussLegendreRule gauss_legendre(int n, double a, double b) {
    if (n < 1) {
        throw DomainError("gauss_legendre: need at least one node, got " + std::to_string(n));
    }
    if (!(b > a)) {
        throw DomainError("gauss_legendre: need a < b");
    }
    GaussLegendreRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);

        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        rule.nodes[lo] = mid - half * x;
        rule.nodes[hi] = mid + half * x;
        rule.weights[lo] = half * w;
        rule.weights[hi] = half * w;
    }
    return rule;
}

} // namespace cohstat
