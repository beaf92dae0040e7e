#include "cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cohstat/errors.hpp"
#include "cohstat/fock.hpp"
#include "cohstat/inference.hpp"
#include "cohstat/pv_measure.hpp"
#include "cohstat/spin.hpp"

namespace cohstat::cli {

namespace {

using nlohmann::ordered_json;

ordered_json complex_json(Complex z) {
    return ordered_json::array({z.real(), z.imag()});
}

double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

CheckResult ladder_fock(std::size_t k) {
    const LadderRep rep = build_ladder(k);
    const auto n = static_cast<Eigen::Index>(k);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const ComplexVector phi = basis_vector(k, static_cast<std::size_t>(i));
        ComplexVector down = ComplexVector::Zero(n);
        if (i > 0) {
            down(i - 1) = std::sqrt(static_cast<double>(i));
        }
        ComplexVector up = ComplexVector::Zero(n);
        if (i + 1 < n) {
            up(i + 1) = std::sqrt(static_cast<double>(i + 1));
        }
        worst = std::max(worst, (rep.annihilation * phi - down).cwiseAbs().maxCoeff());
        worst = std::max(worst, (rep.creation * phi - up).cwiseAbs().maxCoeff());
        worst = std::max(worst, (rep.number * phi - static_cast<double>(i) * phi).cwiseAbs().maxCoeff());
    }
    // [A, A^dagger] is the identity except on the last level, where it is -(K-1).
    ComplexMatrix expected = ComplexMatrix::Identity(n, n);
    expected(n - 1, n - 1) = -static_cast<double>(n - 1);
    worst = std::max(worst, max_abs(commutator(rep.annihilation, rep.creation) - expected));
    // phi_k = (A^dagger)^k phi_0 / sqrt(k!), one power at a time to avoid overflow.
    ComplexVector v = basis_vector(k, 0);
    for (Eigen::Index i = 1; i < n; ++i) {
        v = rep.creation * v / std::sqrt(static_cast<double>(i));
        worst = std::max(worst, (v - basis_vector(k, static_cast<std::size_t>(i))).cwiseAbs().maxCoeff());
    }
    return {"ladder", ordered_json{{"part", "fock"}, {"K", k}}, worst, 1e-12};
}

CheckResult ladder_spin(HalfInteger j) {
    const SpinRep rep = build_spin_rep(j);
    const auto n = static_cast<Eigen::Index>(rep.dim());
    const double jv = j.value();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double m = rep.label_of(static_cast<std::size_t>(i)).value();
        const ComplexVector phi = basis_vector(rep.dim(), static_cast<std::size_t>(i));
        ComplexVector up = ComplexVector::Zero(n);
        if (i + 1 < n) {
            up(i + 1) = std::sqrt((jv - m) * (jv + m + 1.0));
        }
        ComplexVector down = ComplexVector::Zero(n);
        if (i > 0) {
            down(i - 1) = std::sqrt((jv + m) * (jv - m + 1.0));
        }
        worst = std::max(worst, (rep.j3 * phi - m * phi).cwiseAbs().maxCoeff());
        worst = std::max(worst, (rep.j_plus * phi - up).cwiseAbs().maxCoeff());
        worst = std::max(worst, (rep.j_minus * phi - down).cwiseAbs().maxCoeff());
    }
    worst = std::max(worst, max_abs(commutator(rep.j3, rep.j_plus) - rep.j_plus));
    worst = std::max(worst, max_abs(commutator(rep.j3, rep.j_minus) + rep.j_minus));
    worst = std::max(worst, max_abs(commutator(rep.j_plus, rep.j_minus) - 2.0 * rep.j3));
    return {"ladder", ordered_json{{"part", "spin"}, {"j", jv}}, worst, 1e-12};
}

CheckResult ladder_so3() {
    const auto e = so3_basis();
    auto bracket = [](const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) -> Eigen::Matrix3d {
        return a * b - b * a;
    };
    double worst = 0.0;
    worst = std::max(worst, (bracket(e[0], e[1]) - e[2]).cwiseAbs().maxCoeff());
    worst = std::max(worst, (bracket(e[1], e[2]) - e[0]).cwiseAbs().maxCoeff());
    worst = std::max(worst, (bracket(e[2], e[0]) - e[1]).cwiseAbs().maxCoeff());
    return {"ladder", ordered_json{{"part", "so3"}}, worst, 1e-12};
}

CheckResult example12_check() {
    const FinitePVMeasure pv = pv_from_observable(example12::observable());
    const std::array<double, 3> outcomes{1.0, 0.0, -1.0};
    const std::array<double, 3> exact_xi{1.0 / 14.0, 4.0 / 14.0, 9.0 / 14.0};
    const std::array<double, 3> exact_psi0{0.25, 0.5, 0.25};
    ordered_json xi = ordered_json::array();
    ordered_json psi0 = ordered_json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const double p_xi = born_probability(example12::xi(), pv, outcomes[i]);
        const double p_psi0 = born_probability(example12::psi0(), pv, outcomes[i]);
        xi.push_back(p_xi);
        psi0.push_back(p_psi0);
        worst = std::max({worst, std::abs(p_xi - exact_xi[i]), std::abs(p_psi0 - exact_psi0[i])});
    }
    ordered_json params{{"outcomes", outcomes}, {"probabilities_xi", xi}, {"probabilities_psi0", psi0}};
    return {"example12", params, worst, 1e-14};
}

CheckResult bch(Complex alpha, std::size_t k) {
    const double residual = bch_check(alpha, build_ladder(k));
    return {"bch", ordered_json{{"alpha", complex_json(alpha)}, {"K", k}}, residual, 1e-10};
}

CheckResult gauss(const SpinRep& rep, const SpherePoint& point) {
    const double residual = gauss_decomposition_check(rep, point);
    return {"gauss",
            ordered_json{{"j", rep.j.value()}, {"theta", point.theta()}, {"gamma", point.gamma()}},
            residual, 1e-9};
}

CheckResult translation(Complex alpha, Complex beta, std::size_t k) {
    const TranslationCheck t = displacement_translation_check(alpha, beta, build_ladder(k));
    const double residual = std::max(std::abs(t.state_overlap - 1.0), std::abs(t.phase - t.expected_phase));
    return {"translation",
            ordered_json{{"alpha", complex_json(alpha)},
                         {"beta", complex_json(beta)},
                         {"K", k},
                         {"phase", complex_json(t.phase)},
                         {"expected_phase", complex_json(t.expected_phase)}},
            residual, 1e-8};
}

std::vector<CheckResult> identity_checks(const VerifyParams& params, const RunConfig& config) {
    std::vector<CheckResult> rows;
    const HalfInteger j = HalfInteger::from_double(params.j.value_or(2.0));
    const int n_theta = config.n_theta.value_or(j.twice() + 2);
    const int n_gamma = config.n_gamma.value_or(std::max(2 * j.twice() + 1, 2));
    const double spin_residual = resolution_of_identity_check(
        SpinFamily{build_spin_rep(j)}, sphere_quadrature(j, n_theta, n_gamma));
    rows.push_back({"identity",
                    ordered_json{{"family", "spin"}, {"j", j.value()}, {"n_theta", n_theta}, {"n_gamma", n_gamma}},
                    spin_residual, 1e-12});

    // Plane family on the leading 20 levels of a K = 32 space, cutoff R = 10.
    const std::size_t k = config.trunc.value_or(32);
    constexpr double kRadius = 10.0;
    constexpr int kRadialNodes = 200;
    const int n_angle = std::max(config.n_angle, static_cast<int>(k));
    const std::size_t leading = std::min<std::size_t>(20, k);
    const double wh_residual = resolution_of_identity_check(
        WeylHeisenbergFamily{FockSpace(k)}, plane_quadrature(kRadius, kRadialNodes, n_angle), leading);
    rows.push_back({"identity",
                    ordered_json{{"family", "weyl-heisenberg"},
                                 {"K", k},
                                 {"R", kRadius},
                                 {"n_r", kRadialNodes},
                                 {"n_angle", n_angle},
                                 {"leading", leading}},
                    wh_residual, 1e-8});
    return rows;
}

} // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"ladder", "bch", "gauss", "identity", "translation",
                                                "example12"};
    return names;
}

std::vector<CheckResult> run_checks(const std::string& name, const VerifyParams& params,
                                    const RunConfig& config) {
    if (name == "all") {
        std::vector<CheckResult> rows;
        for (const auto& n : check_names()) {
            auto part = run_checks(n, params, config);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        return rows;
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<CheckResult> rows;

    if (name == "ladder") {
        rows.push_back(ladder_fock(config.trunc.value_or(256)));
        rows.push_back(ladder_spin(HalfInteger::from_double(params.j.value_or(25.0))));
        rows.push_back(ladder_so3());
    } else if (name == "bch") {
        rows.push_back(bch(params.alpha.value_or(Complex(1.0, 0.0)), config.trunc.value_or(64)));
    } else if (name == "gauss") {
        const SpinRep rep = build_spin_rep(HalfInteger::from_double(params.j.value_or(1.0)));
        rows.push_back(gauss(rep, SpherePoint(params.theta.value_or(std::numbers::pi / 3.0),
                                              params.gamma.value_or(0.7))));
        for (int s = 0; s < params.samples; ++s) {
            const double theta = 0.9 * std::numbers::pi * unit(rng);
            const double gamma = 2.0 * std::numbers::pi * unit(rng);
            rows.push_back(gauss(rep, SpherePoint(theta, gamma)));
        }
    } else if (name == "identity") {
        rows = identity_checks(params, config);
    } else if (name == "translation") {
        const Complex alpha = params.alpha.value_or(Complex(1.0, 0.0));
        const Complex beta = params.beta.value_or(Complex(0.0, 1.0));
        const std::size_t k =
            config.trunc.value_or(std::max(default_truncation(alpha), default_truncation(alpha + beta)));
        rows.push_back(translation(alpha, beta, k));
        for (int s = 0; s < params.samples; ++s) {
            const Complex a = std::polar(2.0 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
            const Complex b = std::polar(2.0 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
            rows.push_back(translation(a, b, config.trunc.value_or(64)));
        }
    } else if (name == "example12") {
        rows.push_back(example12_check());
    } else {
        throw ConfigError("unknown check '" + name + "'");
    }
    return rows;
}

} // namespace cohstat::cli
