#include <doctest.h>

#include <cmath>

#include "qeigen/errors.hpp"
#include "qeigen/numerics.hpp"
#include "test_support.hpp"

using namespace qeigen;
using namespace qeigen::numerics;
using test_support::random_hermitian;

namespace {

ComplexMatrix diag2(double a, double b) {
    ComplexMatrix m(2);
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    return m;
}

} // namespace

TEST_CASE("eigendecomposition of diagonal input sorts ascending") {
    const auto eig = hermitian_eigendecomposition(diag2(0.7, 0.3));
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.7).epsilon(1e-14));
    // ground vector is e2, excited is e1
    CHECK(std::abs(eig.eigenvectors.at(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(eig.eigenvectors.at(0, 1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eigendecomposition of 2x2 symmetric closed form") {
    ComplexMatrix m = diag2(0.5, 0.5);
    m.at(0, 1) = 0.1;
    m.at(1, 0) = 0.1;
    const auto eig = hermitian_eigendecomposition(m);
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("eigendecomposition reconstruction residual on random Hermitian") {
    Rng rng(0x5eed5eedULL);
    for (std::size_t n : {2u, 3u, 5u, 8u, 16u, 32u}) {
        const ComplexMatrix h = random_hermitian(n, rng);
        const auto eig = hermitian_eigendecomposition(h);

        // orthonormality
        CHECK(eig.eigenvectors.unitarity_defect() <= 1e-10);

        // HV = V Lambda and V Lambda V† = H
        ComplexMatrix vl(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                vl.at(i, j) = eig.eigenvectors.at(i, j) * eig.eigenvalues[j];
        CHECK((h * eig.eigenvectors).max_abs_diff(vl) <= 1e-10);
        CHECK((vl * eig.eigenvectors.adjoint()).max_abs_diff(h) <= 1e-10);

        for (std::size_t j = 1; j < n; ++j) CHECK(eig.eigenvalues[j - 1] <= eig.eigenvalues[j]);
    }
}

TEST_CASE("eigendecomposition handles degenerate spectra") {
    Rng rng(0xdecadeULL);
    const ComplexMatrix h =
        test_support::hermitian_with_spectrum({0.3, 0.3, 0.7, 0.7}, rng);
    const auto eig = hermitian_eigendecomposition(h);
    CHECK(eig.eigenvalues[0] == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(eig.eigenvalues[1] == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(eig.eigenvalues[2] == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(eig.eigenvalues[3] == doctest::Approx(0.7).epsilon(1e-10));
    CHECK(eig.eigenvectors.unitarity_defect() <= 1e-10);
    ComplexMatrix vl(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            vl.at(i, j) = eig.eigenvectors.at(i, j) * eig.eigenvalues[j];
    CHECK((vl * eig.eigenvectors.adjoint()).max_abs_diff(h) <= 1e-10);
}

TEST_CASE("eigendecomposition rejects non-Hermitian input") {
    ComplexMatrix m(2);
    m.at(0, 1) = cplx(0.3, 0.0);
    m.at(1, 0) = cplx(0.1, 0.0);
    CHECK_THROWS_AS(hermitian_eigendecomposition(m), NotHermitian);
}

TEST_CASE("unitary_from_hamiltonian basics") {
    CHECK(unitary_from_hamiltonian(ComplexMatrix(3), 1.0)
              .max_abs_diff(ComplexMatrix::identity(3)) <= 1e-12);

    ComplexMatrix quarter(1);
    quarter.at(0, 0) = 0.25;
    const auto u = unitary_from_hamiltonian(quarter, 1.0);
    CHECK(std::abs(u.at(0, 0) - cplx(0.0, 1.0)) <= 1e-12);

    ComplexMatrix half(1);
    half.at(0, 0) = 0.5;
    CHECK(std::abs(unitary_from_hamiltonian(half, 2.0).at(0, 0) - cplx(1.0, 0.0)) <= 1e-12);
}

TEST_CASE("unitarity of evolution operators") {
    Rng rng(42);
    for (int trial = 0; trial < 5; ++trial) {
        const auto u = unitary_from_hamiltonian(random_hermitian(8, rng), 1.7);
        CHECK(u.unitarity_defect() <= 1e-10);
    }
}

TEST_CASE("fidelity closed forms") {
    const std::vector<cplx> e0{1.0, 0.0};
    const std::vector<cplx> e1{0.0, 1.0};
    const auto rho0 = DensityMatrix::pure(e0);
    CHECK(fidelity(rho0, rho0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(fidelity(rho0, DensityMatrix::pure(e1)) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fidelity(DensityMatrix::maximally_mixed(2), rho0) ==
          doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("fidelity is symmetric and bounded on random states") {
    Rng rng(7);
    for (int trial = 0; trial < 4; ++trial) {
        // random mixed states from random spectra
        auto spec_a = test_support::spectrum_in_window(4, rng, 0.0, 1.0);
        auto spec_b = test_support::spectrum_in_window(4, rng, 0.0, 1.0);
        double sa = 0.0, sb = 0.0;
        for (double v : spec_a) sa += v;
        for (double v : spec_b) sb += v;
        for (auto& v : spec_a) v /= sa;
        for (auto& v : spec_b) v /= sb;
        const DensityMatrix rho(test_support::hermitian_with_spectrum(spec_a, rng));
        const DensityMatrix sigma(test_support::hermitian_with_spectrum(spec_b, rng));
        rho.validate();
        const double f1 = fidelity(rho, sigma);
        const double f2 = fidelity(sigma, rho);
        CHECK(f1 >= 0.0);
        CHECK(f1 <= 1.0);
        CHECK(std::abs(f1 - f2) <= 1e-9);
    }
    CHECK_THROWS_AS(fidelity(DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(4)),
                    DimensionMismatch);
}

TEST_CASE("trace_out on product and Bell states") {
    const double s = 1.0 / std::sqrt(2.0);
    // |0> (x) |+>
    StateVector plus{2, {s, s, 0.0, 0.0}};
    const auto rho_plus = trace_out(plus, {1});
    CHECK(rho_plus.matrix().at(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rho_plus.matrix().at(0, 1).real() == doctest::Approx(0.5).epsilon(1e-12));

    StateVector bell{2, {s, 0.0, 0.0, s}};
    const auto rho_bell = trace_out(bell, {0});
    CHECK(rho_bell.matrix().max_abs_diff(DensityMatrix::maximally_mixed(2).matrix()) <= 1e-12);
}

TEST_CASE("trace_out of a three-register tagged state recovers the mixture") {
    // sum_j a_j |mu_j>|psi_j>|conj psi_j> over 1+2+2 qubits; keeping the
    // middle register must give sum |a_j|^2 |psi_j><psi_j| / norm
    Rng rng(11);
    const auto basis = test_support::random_unitary(4, rng);
    const std::vector<double> a{0.8, 0.5, 0.2, 0.1};
    std::vector<cplx> mu0{cplx(0.6, 0.0), cplx(0.8, 0.0)};
    std::vector<cplx> mu1{cplx(0.0, 1.0), cplx(0.0, 0.0)};
    std::vector<std::vector<cplx>> mus{mu0, mu1, mu0, mu1};

    StateVector state{5, std::vector<cplx>(32, cplx{})};
    double norm_sq = 0.0;
    for (std::size_t j = 0; j < 4; ++j) norm_sq += a[j] * a[j];
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t m = 0; m < 2; ++m)
            for (std::size_t s1 = 0; s1 < 4; ++s1)
                for (std::size_t s2 = 0; s2 < 4; ++s2) {
                    const std::size_t idx = (m << 4) | (s1 << 2) | s2;
                    state.amplitudes[idx] += a[j] / std::sqrt(norm_sq) * mus[j][m] *
                                             basis.at(s1, j) * std::conj(basis.at(s2, j));
                }
    CHECK(state.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));

    const auto rho = trace_out(state, {1, 2});
    rho.validate();
    ComplexMatrix expected(4);
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
                expected.at(r, c) +=
                    a[j] * a[j] / norm_sq * basis.at(r, j) * std::conj(basis.at(c, j));
    CHECK(rho.matrix().max_abs_diff(expected) <= 1e-12);
}

TEST_CASE("trace_out validates qubit indices and preserves trace") {
    StateVector bad{2, {1.0, 0.0, 0.0, 0.0}};
    CHECK_THROWS_AS(trace_out(bad, {2}), IndexOutOfRange);

    Rng rng(3);
    std::vector<cplx> amps(16);
    double norm = 0.0;
    for (auto& v : amps) {
        v = cplx(test_support::gaussian(rng), test_support::gaussian(rng));
        norm += std::norm(v);
    }
    for (auto& v : amps) v /= std::sqrt(norm);
    StateVector state{4, amps};
    const auto rho = trace_out(state, {0, 3});
    CHECK(rho.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}
