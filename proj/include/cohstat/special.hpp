#pragma once

#include <cstdint>
#include <vector>

namespace cohstat {

double log_factorial(std::int64_t n);

/// C(n, k). Exact integer arithmetic for n <= 60, log-gamma above that.
double binomial_coefficient(std::int64_t n, std::int64_t k);

/// log C(n, k).
double log_binomial_coefficient(std::int64_t n, std::int64_t k);

/// e^{-lambda} lambda^n / n!, evaluated in log space. lambda = 0 is handled
/// exactly (1 at n = 0, 0 elsewhere).
double poisson_probability(double lambda, std::int64_t n);

/// C(n, k) p^k q^(n-k), with q = 1 - p passed separately so callers can form
/// it without cancellation. Log space above n = 60.
double binomial_probability(std::int64_t n, std::int64_t k, double p, double q);

struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b], nodes ascending.
GaussLegendreRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

} // namespace cohstat
