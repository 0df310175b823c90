#include <doctest.h>

#include <cmath>

#include "qeigen/elasticity.hpp"
#include "qeigen/errors.hpp"
#include "qeigen/spectra.hpp"
#include "test_support.hpp"

using namespace qeigen;
using namespace qeigen::spectra;
using test_support::diagonal_operator;

TEST_CASE("gershgorin bound on small matrices") {
    CHECK(gershgorin_bound(diagonal_operator({0.3, 0.7})) == doctest::Approx(0.7));

    ComplexMatrix m(2);
    m.at(0, 0) = 0.5;
    m.at(1, 1) = 0.5;
    m.at(0, 1) = 0.1;
    m.at(1, 0) = 0.1;
    const auto op = HermitianOperator::from_dense(m);
    CHECK(gershgorin_bound(op) == doctest::Approx(0.6));
    const auto& eig = op.eigensystem();
    CHECK(std::abs(eig.eigenvalues.front()) <= 0.6);
    CHECK(std::abs(eig.eigenvalues.back()) <= 0.6);
}

TEST_CASE("gershgorin bound on the homogeneous string operator") {
    const elasticity::StringGeometry g{-6.0 / 17.0, 10.0 / 17.0, 1.0};
    const auto d = elasticity::assemble_d(16, g);
    CHECK(gershgorin_bound(d) == doctest::Approx(34.0).epsilon(1e-14));
    CHECK(std::abs(d.eigensystem().eigenvalues.front()) == doctest::Approx(33.7105).epsilon(1e-4));
}

TEST_CASE("gershgorin dominates the spectral radius on random operators") {
    Rng rng(100);
    for (int trial = 0; trial < 10; ++trial) {
        const auto op =
            HermitianOperator::from_dense(test_support::random_hermitian(8, rng));
        const auto& eig = op.eigensystem();
        const double radius = std::max(std::abs(eig.eigenvalues.front()),
                                       std::abs(eig.eigenvalues.back()));
        CHECK(gershgorin_bound(op) >= radius - 1e-12);
    }
}

TEST_CASE("rescale_operator maps the spectrum into [0, 1]") {
    const auto [scaled, map] = rescale_operator(diagonal_operator({-1.0, 1.0}), 2.0);
    CHECK(scaled.dense().at(0, 0).real() == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(scaled.dense().at(1, 1).real() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(map.backward(map.forward(0.37)) == doctest::Approx(0.37).epsilon(1e-12));

    const auto [half, map0] = rescale_operator(diagonal_operator({0.0, 0.0}), 1.0);
    CHECK(half.dense().at(0, 0).real() == doctest::Approx(0.5));
    CHECK(half.dense().at(1, 1).real() == doctest::Approx(0.5));
    CHECK(map0.factor == doctest::Approx(0.5));

    CHECK_THROWS_AS(rescale_operator(diagonal_operator({0.1, 0.2}), 0.0), InvalidNorm);
}

TEST_CASE("rescaled elasticity operator round-trips the smallest eigenvalue") {
    const elasticity::StringGeometry g{-6.0 / 17.0, 10.0 / 17.0, 5.0};
    const auto d = elasticity::assemble_d(16, g);
    const double bound = gershgorin_bound(d);
    const auto [scaled, map] = rescale_operator(d, bound);

    const double lambda0 = d.eigensystem().eigenvalues.front();
    CHECK(lambda0 == doctest::Approx(-33.09).epsilon(2e-4));
    const double mapped = map.forward(lambda0);
    CHECK(scaled.eigensystem().eigenvalues.front() == doctest::Approx(mapped).epsilon(1e-12));
    CHECK(map.backward(mapped) == doctest::Approx(lambda0).epsilon(1e-9));

    // validator context used before pipeline runs
    CHECK(eigenvalue_window_check(scaled, std::ldexp(1.0, -5) / (2.0 * bound)));
}

TEST_CASE("spectral map keeps eigenvalues and projectors") {
    Rng rng(5);
    const auto op = HermitianOperator::from_dense(test_support::random_hermitian(8, rng));
    const double bound = gershgorin_bound(op);
    const auto [scaled, map] = rescale_operator(op, bound);
    const auto& before = op.eigensystem();
    const auto& after = scaled.eigensystem();
    for (std::size_t j = 0; j < 8; ++j) {
        CHECK(after.eigenvalues[j] == doctest::Approx(map.forward(before.eigenvalues[j]))
                                          .epsilon(1e-10));
        // same one-dimensional projectors for a nondegenerate spectrum
        cplx ov{};
        for (std::size_t i = 0; i < 8; ++i)
            ov += std::conj(after.eigenvectors.at(i, j)) * before.eigenvectors.at(i, j);
        CHECK(std::abs(ov) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("oracle_query walks rows in column order and counts queries") {
    const elasticity::StringGeometry g{-6.0 / 17.0, 10.0 / 17.0, 1.0};
    const auto d = elasticity::assemble_d(16, g);
    QueryLedger ledger;
    const auto [col, value] = oracle_query(d, 1, 0, ledger);
    CHECK(col == 0);
    CHECK(value.real() == doctest::Approx(8.5));
    CHECK(ledger.oracle_queries() == 1);

    const auto diag = diagonal_operator({0.1, 0.2, 0.3, 0.4});
    for (std::size_t i = 0; i < 4; ++i) {
        const auto [c, v] = oracle_query(diag, i, 0, ledger);
        CHECK(c == i);
        CHECK(v.real() == doctest::Approx(0.1 * static_cast<double>(i + 1)));
    }
    CHECK(ledger.oracle_queries() == 5);

    // row with no structural nonzeros
    const auto sparse = HermitianOperator::from_triplets(2, {{0, 0, cplx(1.0, 0.0)}});
    CHECK_THROWS_AS(oracle_query(sparse, 1, 0, ledger), OutOfRange);
}

TEST_CASE("materializing every oracle answer reconstructs the operator") {
    Rng rng(8);
    const auto op = HermitianOperator::from_dense(test_support::random_hermitian(4, rng));
    QueryLedger ledger;
    ComplexMatrix rebuilt(4);
    for (std::size_t row = 0; row < 4; ++row)
        for (std::size_t k = 0; k < op.row_nonzero_count(row); ++k) {
            const auto [col, value] = oracle_query(op, row, k, ledger);
            rebuilt.at(row, col) = value;
        }
    CHECK(rebuilt.max_abs_diff(op.dense()) == 0.0);
}

TEST_CASE("triplet construction validates structure") {
    CHECK_THROWS_AS(HermitianOperator::from_triplets(2, {{1, 0, cplx(1.0, 0.0)}}),
                    ValidationError);
    CHECK_THROWS_AS(HermitianOperator::from_triplets(
                        2, {{0, 1, cplx(1.0, 0.0)}, {0, 1, cplx(2.0, 0.0)}}),
                    ValidationError);
    CHECK_THROWS_AS(HermitianOperator::from_triplets(2, {{0, 0, cplx(1.0, 0.5)}}), NotHermitian);

    const auto op = HermitianOperator::from_triplets(2, {{0, 1, cplx(0.1, 0.2)}});
    CHECK(op.dense().at(1, 0) == std::conj(op.dense().at(0, 1)));
}

TEST_CASE("eigenvalue_window_check") {
    CHECK(eigenvalue_window_check(diagonal_operator({0.3, 0.7}), 0.1));
    CHECK_FALSE(eigenvalue_window_check(diagonal_operator({0.05, 0.7}), 0.1));
}

TEST_CASE("ledger charges nominal evolution segments per A application") {
    QueryLedger ledger;
    ledger.record_a_applications(3, 5, 4); // 3 applications, c=5, t=4
    CHECK(ledger.a_applications() == 3);
    CHECK(ledger.oracle_queries() == 3 * 5 * 15);
}
