#include "qeigen/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qeigen/errors.hpp"

namespace qeigen::spectra {

namespace {

std::size_t log2_exact(std::size_t n) {
    std::size_t bits = 0;
    std::size_t v = n;
    while (v > 1) {
        v >>= 1;
        ++bits;
    }
    if ((std::size_t{1} << bits) != n)
        throw DimNotPowerOfTwo("operator dimension must be a power of two");
    return bits;
}

} // namespace

HermitianOperator HermitianOperator::from_dense(ComplexMatrix m) {
    if (m.dim() < 2) throw InvalidInput("operator dimension must be at least 2");
    HermitianOperator op;
    op.qubits_ = log2_exact(m.dim());
    if (m.hermiticity_defect() > 1e-12)
        throw NotHermitian("dense operator input violates Hermitian symmetry");
    op.dense_ = std::move(m);
    op.max_abs_ = op.dense_.max_abs();
    op.index_rows();
    return op;
}

HermitianOperator HermitianOperator::from_triplets(std::size_t dim, std::vector<Triplet> entries) {
    if (dim < 2) throw InvalidInput("operator dimension must be at least 2");
    HermitianOperator op;
    op.qubits_ = log2_exact(dim);
    ComplexMatrix m(dim);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& t : entries) {
        if (t.row >= dim || t.col >= dim)
            throw IndexOutOfRange("triplet index beyond operator dimension");
        if (t.row > t.col) throw ValidationError("triplets must satisfy row <= col");
        if (!seen.insert({t.row, t.col}).second)
            throw ValidationError("duplicate triplet position");
        if (t.row == t.col && std::abs(t.value.imag()) > 1e-12)
            throw NotHermitian("diagonal triplet has a nonzero imaginary part");
        m.at(t.row, t.col) = t.value;
        if (t.row != t.col) m.at(t.col, t.row) = std::conj(t.value);
    }
    op.dense_ = std::move(m);
    op.max_abs_ = op.dense_.max_abs();
    op.index_rows();
    return op;
}

void HermitianOperator::index_rows() {
    const std::size_t n = dense_.dim();
    rows_.assign(n, {});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (dense_.at(i, j) != cplx{}) rows_[i].emplace_back(j, dense_.at(i, j));
}

std::size_t HermitianOperator::row_nonzero_count(std::size_t row) const {
    if (row >= dim()) throw IndexOutOfRange("row index beyond operator dimension");
    return rows_[row].size();
}

const numerics::EigenDecomposition& HermitianOperator::eigensystem() const {
    if (!eig_cache_)
        eig_cache_ = std::make_shared<const numerics::EigenDecomposition>(
            numerics::hermitian_eigendecomposition(dense_));
    return *eig_cache_;
}

double gershgorin_bound(const HermitianOperator& h) {
    const std::size_t n = h.dim();
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(h.dense().at(i, j));
        bound = std::max(bound, row);
    }
    return bound;
}

std::pair<HermitianOperator, RescaleMap> rescale_operator(const HermitianOperator& h,
                                                          double norm_estimate) {
    if (!(norm_estimate > 0.0)) throw InvalidNorm("norm estimate must be positive");
    RescaleMap map{norm_estimate, 1.0 / (2.0 * norm_estimate)};
    ComplexMatrix m = h.dense();
    for (std::size_t i = 0; i < m.dim(); ++i) m.at(i, i) += norm_estimate;
    m = m.scaled(map.factor);
    return {HermitianOperator::from_dense(std::move(m)), map};
}

std::pair<std::size_t, cplx> oracle_query(const HermitianOperator& h, std::size_t row,
                                          std::size_t k, QueryLedger& ledger) {
    const std::size_t count = h.row_nonzero_count(row);
    if (k >= count) throw OutOfRange("oracle query index beyond row nonzero count");
    ledger.record_oracle_queries(1);
    // rows are stored in ascending column order already
    const std::size_t n = h.dim();
    std::size_t seen = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx v = h.dense().at(row, j);
        if (v == cplx{}) continue;
        if (seen == k) return {j, v};
        ++seen;
    }
    throw OutOfRange("oracle query walked past the row end"); // unreachable
}

bool eigenvalue_window_check(const HermitianOperator& h, double eps) {
    const auto& eig = h.eigensystem();
    return eig.eigenvalues.front() > eps && eig.eigenvalues.back() < 1.0 - eps;
}

} // namespace qeigen::spectra
