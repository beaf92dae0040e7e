#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cohstat/errors.hpp"
#include "cohstat/fock.hpp"
#include "cohstat/inference.hpp"
#include "cohstat/linops.hpp"
#include "cohstat/pv_measure.hpp"
#include "cohstat/special.hpp"
#include "cohstat/spin.hpp"

namespace py = pybind11;
using namespace cohstat;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Coherent states, Poisson and binomial families, inferred Gamma and Beta distributions";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", error);
    py::register_exception<DomainError>(m, "DomainError", error);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", error);
    py::register_exception<TruncationError>(m, "TruncationError", error);
    py::register_exception<InvariantError>(m, "InvariantError", error);

    // linops
    m.def("matrix_exponential", &matrix_exponential, py::arg("m"), py::arg("tol") = kDefaultExpTol);
    m.def("commutator", &commutator);
    m.def("is_hermitian", &is_hermitian, py::arg("m"), py::arg("tol") = kDefaultHermitianTol);
    m.def("phase_aligned_distance", &phase_aligned_distance);
    m.def("operator_norm", &operator_norm);
    m.def(
        "hermitian_eigendecomposition",
        [](const ComplexMatrix& mat, double tol) {
            const SpectralDecomposition s = hermitian_eigendecomposition(mat, tol);
            return py::make_tuple(s.eigenvalues, s.eigenvectors);
        },
        py::arg("m"), py::arg("tol") = kDefaultHermitianTol);

    // special
    m.def("poisson_probability", &poisson_probability);
    m.def("binomial_probability", &binomial_probability);
    m.def(
        "gauss_legendre",
        [](int n, double a, double b) {
            const GaussLegendreRule r = gauss_legendre(n, a, b);
            return py::make_tuple(r.nodes, r.weights);
        },
        py::arg("n"), py::arg("a") = -1.0, py::arg("b") = 1.0);

    // pv_measure
    py::class_<Observable>(m, "Observable")
        .def(py::init<const ComplexMatrix&, double>(), py::arg("matrix"), py::arg("tol") = kDefaultHermitianTol)
        .def("matrix", &Observable::matrix)
        .def("dim", &Observable::dim);
    py::class_<VectorState>(m, "VectorState")
        .def(py::init<ComplexVector>())
        .def_static("normalized", &VectorState::normalized)
        .def("vector", &VectorState::vector)
        .def("dim", &VectorState::dim);
    py::class_<FinitePVMeasure>(m, "FinitePVMeasure")
        .def_readonly("outcomes", &FinitePVMeasure::outcomes)
        .def_readonly("projectors", &FinitePVMeasure::projectors);
    m.def("pv_from_observable", &pv_from_observable);
    m.def("born_probability",
          py::overload_cast<const VectorState&, const FinitePVMeasure&, double>(&born_probability));
    m.def("example12_observable", &example12::observable);
    m.def("example12_xi", &example12::xi);
    m.def("example12_psi0", &example12::psi0);
    m.def("gaussian_position_probability", [](double sigma, double a, double b) {
        auto bound = [](double x) {
            if (std::isinf(x)) {
                return x < 0 ? IntegrationBound::minus_infinity() : IntegrationBound::plus_infinity();
            }
            return IntegrationBound(x);
        };
        return gaussian_position_probability(sigma, bound(a), bound(b));
    });

    // fock
    py::class_<LadderRep>(m, "LadderRep")
        .def_property_readonly("dim", &LadderRep::dim)
        .def_readonly("annihilation", &LadderRep::annihilation)
        .def_readonly("creation", &LadderRep::creation)
        .def_readonly("number", &LadderRep::number);
    m.def("build_ladder", &build_ladder, py::arg("truncation"));
    m.def("default_truncation", &default_truncation);
    m.def("wh_multiply", [](double s, Complex a, double t, Complex b) {
        const WHGroupElement g = wh_multiply({s, a}, {t, b});
        return py::make_tuple(g.s, g.alpha);
    });
    m.def(
        "coherent_state",
        [](Complex alpha, std::size_t truncation, double tol) {
            return coherent_via_exponential(alpha, build_ladder(truncation), tol).state.vector();
        },
        py::arg("alpha"), py::arg("truncation"), py::arg("tol") = 1e-10);
    m.def(
        "coherent_closed_form",
        [](Complex alpha, std::size_t truncation, double tail_tol) {
            return coherent_closed_form(alpha, FockSpace(truncation), tail_tol).state.vector();
        },
        py::arg("alpha"), py::arg("truncation"), py::arg("tail_tol") = 1e-12);
    m.def("bch_check", [](Complex alpha, std::size_t truncation) {
        return bch_check(alpha, build_ladder(truncation));
    });
    m.def("poisson_pmf", &poisson_pmf);
    m.def("translation_check", [](Complex alpha, Complex beta, std::size_t truncation) {
        const TranslationCheck c = displacement_translation_check(alpha, beta, build_ladder(truncation));
        return py::make_tuple(c.state_overlap, c.phase, c.expected_phase);
    });

    // spin
    py::class_<SpinRep>(m, "SpinRep")
        .def_property_readonly("j", [](const SpinRep& r) { return r.j.value(); })
        .def_property_readonly("dim", &SpinRep::dim)
        .def_readonly("j3", &SpinRep::j3)
        .def_readonly("j_plus", &SpinRep::j_plus)
        .def_readonly("j_minus", &SpinRep::j_minus);
    m.def("build_spin_rep", [](double j) { return build_spin_rep(HalfInteger::from_double(j)); });
    m.def("so3_basis", &so3_basis);
    m.def("coset_element", [](double theta, double gamma) { return coset_element(SpherePoint(theta, gamma)); });
    m.def("spin_coherent_state", [](double j, double theta, double gamma) {
        return spin_coherent_via_exponential(build_spin_rep(HalfInteger::from_double(j)), SpherePoint(theta, gamma))
            .state.vector();
    });
    m.def("spin_coherent_coefficients", [](double j, double theta, double gamma) {
        return spin_coherent_coefficients(build_spin_rep(HalfInteger::from_double(j)), theta, gamma);
    });
    m.def("gauss_decomposition_check", [](double j, double theta, double gamma) {
        return gauss_decomposition_check(build_spin_rep(HalfInteger::from_double(j)), SpherePoint(theta, gamma));
    });

    // inference
    py::class_<InferredDistribution>(m, "InferredDistribution")
        .def_readonly("parameter", &InferredDistribution::parameter)
        .def_readonly("grid", &InferredDistribution::grid)
        .def_readonly("density", &InferredDistribution::density)
        .def_readonly("total_mass", &InferredDistribution::total_mass)
        .def("mass_tolerance", &InferredDistribution::mass_tolerance);
    m.def("lambda_grid", &lambda_grid, py::arg("n"), py::arg("points") = 2001);
    m.def("p_grid", &p_grid, py::arg("points") = 1001);
    m.def("infer_poisson_pov", &infer_poisson_pov, py::arg("n"), py::arg("grid"), py::arg("n_r") = 256,
          py::arg("n_angle") = 64);
    m.def("infer_binomial_pov", &infer_binomial_pov);
    m.def("analytic_poisson_posterior", &analytic_poisson_posterior);
    m.def("analytic_binomial_posterior", &analytic_binomial_posterior);
    m.def("inferred_density_poisson", &inferred_density_poisson);
    m.def("inferred_density_binomial", &inferred_density_binomial);
    m.def("credible_interval", [](const InferredDistribution& d, double mass) {
        const CredibleInterval c = credible_interval(d, mass);
        return py::make_tuple(c.low, c.high, c.mass);
    });
    m.def(
        "resolution_of_identity_spin",
        [](double j, int n_theta, int n_gamma) {
            const HalfInteger h = HalfInteger::from_double(j);
            return resolution_of_identity_check(SpinFamily{build_spin_rep(h)}, sphere_quadrature(h, n_theta, n_gamma));
        });
}
