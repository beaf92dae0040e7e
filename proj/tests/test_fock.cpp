#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "cohstat/errors.hpp"
#include "cohstat/fock.hpp"
#include "cohstat/special.hpp"

using namespace cohstat;

namespace {

constexpr Complex kI{0.0, 1.0};

double factorial(int k) { return std::tgamma(k + 1.0); }

} // namespace

TEST_CASE("ladder matrices for K = 2") {
    const LadderRep rep = build_ladder(2);
    ComplexMatrix a(2, 2);
    a << 0.0, 1.0, 0.0, 0.0;
    CHECK((rep.annihilation - a).norm() == 0.0);
    ComplexMatrix n = ComplexMatrix::Zero(2, 2);
    n(1, 1) = 1.0;
    CHECK((rep.number - n).norm() == 0.0);
    CHECK_THROWS_AS(build_ladder(1), DomainError);
}

TEST_CASE("ladder actions on every basis vector") {
    for (std::size_t k_dim : {2u, 17u, 256u}) {
        const LadderRep rep = build_ladder(k_dim);
        const auto kk = static_cast<std::size_t>(k_dim);
        for (std::size_t k = 0; k < kk; ++k) {
            const ComplexVector phi = basis_vector(kk, k);
            CHECK((rep.number * phi - static_cast<double>(k) * phi).norm() < 1e-12);
            const ComplexVector down = rep.annihilation * phi;
            if (k == 0) {
                CHECK(down.norm() == 0.0);
            } else {
                CHECK((down - std::sqrt(static_cast<double>(k)) * basis_vector(kk, k - 1)).norm() < 1e-12);
            }
            const ComplexVector up = rep.creation * phi;
            if (k + 1 == kk) {
                CHECK(up.norm() == 0.0);  // truncation artifact
            } else {
                CHECK((up - std::sqrt(static_cast<double>(k + 1)) * basis_vector(kk, k + 1)).norm() < 1e-12);
            }
        }
    }
}

TEST_CASE("iterated creation from the vacuum") {
    const std::size_t k_dim = 40;
    const LadderRep rep = build_ladder(k_dim);
    ComplexVector v = basis_vector(k_dim, 0);
    for (std::size_t k = 0; k < k_dim; ++k) {
        const double root = std::sqrt(factorial(static_cast<int>(k)));
        CHECK((v - root * basis_vector(k_dim, k)).norm() <= 1e-12 * root);
        v = rep.creation * v;
    }
}

TEST_CASE("Weyl-Heisenberg group law") {
    const WHGroupElement e{0.0, 0.0};
    const WHGroupElement g{0.4, Complex(1.5, -0.2)};
    const WHGroupElement ge = wh_multiply(g, e);
    CHECK(ge.s == g.s);
    CHECK(ge.alpha == g.alpha);

    const WHGroupElement p = wh_multiply({0.0, 1.0}, {0.0, kI});
    CHECK(p.s == doctest::Approx(-1.0));
    CHECK(std::abs(p.alpha - Complex(1.0, 1.0)) == 0.0);

    const WHGroupElement inv = wh_multiply(g, wh_inverse(g));
    CHECK(std::abs(inv.s) < 1e-15);
    CHECK(std::abs(inv.alpha) < 1e-15);

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int t = 0; t < 20; ++t) {
        const WHGroupElement a{u(rng), Complex(u(rng), u(rng))};
        const WHGroupElement b{u(rng), Complex(u(rng), u(rng))};
        const WHGroupElement c{u(rng), Complex(u(rng), u(rng))};
        const WHGroupElement l = wh_multiply(wh_multiply(a, b), c);
        const WHGroupElement r = wh_multiply(a, wh_multiply(b, c));
        CHECK(std::abs(l.s - r.s) < 1e-13);
        CHECK(std::abs(l.alpha - r.alpha) < 1e-13);
    }
}

TEST_CASE("closed-form coherent states") {
    const FockSpace space(64);
    const CoherentStateWH vac = coherent_closed_form(0.0, space);
    CHECK((vac.state.vector() - basis_vector(64, 0)).norm() == 0.0);

    const CoherentStateWH one = coherent_closed_form(1.0, space);
    CHECK(one.tail_mass < 1e-15);
    for (int n = 0; n < 20; ++n) {
        const double unnormalized = std::norm(wh_coherent_coefficient(static_cast<std::size_t>(n), 1.0));
        CHECK(std::abs(unnormalized - std::exp(-1.0) / factorial(n)) < 1e-16);
    }
    CHECK_THROWS_AS(coherent_closed_form(5.0, FockSpace(16)), TruncationError);
}

TEST_CASE("Poisson tail mass against a direct oracle") {
    for (double a : {0.5, 1.0, 2.0, 3.0}) {
        for (std::size_t k : {4u, 16u, 64u}) {
            double partial = 0.0;
            for (std::size_t n = 0; n < k; ++n) {
                partial += std::exp(-a * a) * std::pow(a * a, static_cast<double>(n)) / factorial(static_cast<int>(n));
            }
            const double tail = poisson_tail_mass(a, k);
            CHECK(std::abs((1.0 - partial) - tail) < 1e-14);
            double head = 0.0;
            for (std::size_t n = 0; n < k; ++n) {
                head += poisson_pmf(a, static_cast<std::int64_t>(n));
            }
            CHECK(std::abs(head - (1.0 - tail)) < 1e-12);
        }
    }
}

TEST_CASE("exponential and closed-form routes agree") {
    const CoherentStateWH zero = coherent_via_exponential(0.0, build_ladder(64));
    CHECK((zero.state.vector() - basis_vector(64, 0)).norm() < 1e-15);

    const LadderRep rep64 = build_ladder(64);
    const LadderRep rep128 = build_ladder(128);
    CHECK(phase_aligned_distance(coherent_via_exponential(1.0, rep64).state.vector(),
                                 coherent_closed_form(1.0, rep64.space).state.vector()) < 1e-10);
    CHECK(phase_aligned_distance(coherent_via_exponential(2.0 * kI, rep128).state.vector(),
                                 coherent_closed_form(2.0 * kI, rep128.space).state.vector()) < 1e-10);

    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> rad(0.0, 3.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    for (int t = 0; t < 12; ++t) {
        const Complex alpha = std::polar(rad(rng), ang(rng));
        const CoherentStateWH e = coherent_via_exponential(alpha, rep64);
        const CoherentStateWH c = coherent_closed_form(alpha, rep64.space);
        CHECK(phase_aligned_distance(e.state.vector(), c.state.vector()) < 1e-10);
        // Probabilities depend only on |alpha|.
        const Complex rotated = alpha * std::polar(1.0, 0.9);
        for (int n = 0; n < 30; ++n) {
            CHECK(std::abs(poisson_pmf(alpha, n) - poisson_pmf(rotated, n)) < 1e-15);
        }
    }
}

TEST_CASE("BCH identity residual") {
    CHECK(bch_check(0.0, build_ladder(64)) == 0.0);
    CHECK(bch_check(1.0, build_ladder(64)) < 1e-10);
    // Deliberately too small a space.
    CHECK(bch_check(3.0, build_ladder(16)) > 1e-3);
}

TEST_CASE("Poisson pmf values") {
    CHECK(poisson_pmf(0.0, 0) == 1.0);
    CHECK(std::abs(poisson_pmf(1.0, 1) - 0.36787944) < 1e-8);
    CHECK(std::abs(poisson_pmf(2.0, 4) - 0.19536681) < 1e-8);
    // Inner-product route.
    const CoherentStateWH s = coherent_closed_form(2.0, FockSpace(64));
    CHECK(std::abs(std::norm(s.state.vector()(4)) - poisson_pmf(2.0, 4)) < 1e-14);
    CHECK_THROWS_AS(poisson_pmf(1.0, -1), DomainError);
}

TEST_CASE("displacement translates coherent states up to a phase") {
    const LadderRep rep = build_ladder(64);
    const TranslationCheck trivial = displacement_translation_check(1.3, 0.0, rep);
    CHECK(std::abs(trivial.state_overlap - 1.0) < 1e-12);
    CHECK(std::abs(trivial.phase - 1.0) < 1e-12);

    const TranslationCheck t = displacement_translation_check(1.0, kI, rep);
    CHECK(std::abs(t.expected_phase - std::exp(kI)) < 1e-15);
    CHECK(std::abs(t.phase - std::exp(kI)) < 1e-8);

    const TranslationCheck same = displacement_translation_check(kI, kI, rep);
    CHECK(std::abs(same.expected_phase - 1.0) < 1e-15);
    CHECK(std::abs(same.phase - 1.0) < 1e-8);
}

TEST_CASE("default truncation keeps the tail below 1e-15") {
    for (double lambda : {0.0, 1.0, 9.0, 50.0, 400.0}) {
        const Complex alpha = std::sqrt(lambda);
        const std::size_t k = default_truncation(alpha);
        CHECK(k >= 64);
        CHECK(poisson_tail_mass(alpha, k) < 1e-15);
    }
}
