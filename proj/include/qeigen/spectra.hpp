#pragma once

// Operator-level model: Hermitian input (dense or symmetric triplets), the
// sparse-access oracle with query accounting, Gershgorin norm bounds, and the
// shift-and-rescale map that brings a general spectrum into [0, 1].

#include <atomic>
#include <cstdint>
#include <memory>
#include <vector>

#include "qeigen/complex_matrix.hpp"
#include "qeigen/numerics.hpp"

namespace qeigen::spectra {

struct Triplet {
    std::size_t row = 0;
    std::size_t col = 0; // row <= col; the mirrored entry is implied
    cplx value;
};

class HermitianOperator {
  public:
    // Dense input; must be Hermitian to 1e-12 and have power-of-two dim.
    static HermitianOperator from_dense(ComplexMatrix m);
    // Upper-triangle triplets (row <= col, one per position, real diagonal).
    static HermitianOperator from_triplets(std::size_t dim, std::vector<Triplet> entries);

    std::size_t dim() const { return dense_.dim(); }
    std::size_t qubit_count() const { return qubits_; }
    const ComplexMatrix& dense() const { return dense_; }
    double max_abs() const { return max_abs_; }

    std::size_t row_nonzero_count(std::size_t row) const;

    const numerics::EigenDecomposition& eigensystem() const;

  private:
    HermitianOperator() = default;
    void index_rows();

    ComplexMatrix dense_;
    std::size_t qubits_ = 0;
    double max_abs_ = 0.0;
    // Per-row nonzeros in ascending column order, for the access oracle.
    std::vector<std::vector<std::pair<std::size_t, cplx>>> rows_;
    // Shared so copies of an immutable operator reuse one decomposition.
    mutable std::shared_ptr<const numerics::EigenDecomposition> eig_cache_;
};

// lambda' = (lambda + shift) * factor with factor = 1/(2 shift).
struct RescaleMap {
    double shift = 0.0;
    double factor = 0.0;

    double forward(double lambda) const { return (lambda + shift) * factor; }
    double backward(double lambda_prime) const { return lambda_prime / factor - shift; }
};

// Query accounting. Hamiltonian evolution is computed exactly here, so
// controlled-evolution work is charged nominally: one application of A or A†
// costs copies*(2^t - 1) oracle segments (2^t - 1 controlled powers per t-bit
// phase estimation, one per copy). Counters are atomic so concurrent trials
// may share a ledger.
class QueryLedger {
  public:
    void record_oracle_queries(std::uint64_t n) { oracle_.fetch_add(n, std::memory_order_relaxed); }
    void record_a_applications(std::uint64_t count, unsigned copies, unsigned clock_bits) {
        a_apps_.fetch_add(count, std::memory_order_relaxed);
        const std::uint64_t segments = copies * ((std::uint64_t{1} << clock_bits) - 1);
        oracle_.fetch_add(count * segments, std::memory_order_relaxed);
    }

    std::uint64_t oracle_queries() const { return oracle_.load(std::memory_order_relaxed); }
    std::uint64_t a_applications() const { return a_apps_.load(std::memory_order_relaxed); }

  private:
    std::atomic<std::uint64_t> oracle_{0};
    std::atomic<std::uint64_t> a_apps_{0};
};

struct LedgerSnapshot {
    std::uint64_t oracle_queries = 0;
    std::uint64_t a_applications = 0;
};

inline LedgerSnapshot snapshot(const QueryLedger& ledger) {
    return {ledger.oracle_queries(), ledger.a_applications()};
}

// max_i (|H_ii| + sum_{j != i} |H_ij|); upper bound on the spectral norm.
double gershgorin_bound(const HermitianOperator& h);

// H' = (H + estimate I) / (2 estimate); spectrum lands in [0, 1] whenever the
// estimate dominates the spectral norm.
std::pair<HermitianOperator, RescaleMap> rescale_operator(const HermitianOperator& h,
                                                          double norm_estimate);

// k-th structural nonzero of `row` in ascending column order.
std::pair<std::size_t, cplx> oracle_query(const HermitianOperator& h, std::size_t row,
                                          std::size_t k, QueryLedger& ledger);

// Exact-diagonalization validator: all eigenvalues strictly inside
// (eps, 1 - eps). Test-time helper, not part of the algorithm.
bool eigenvalue_window_check(const HermitianOperator& h, double eps);

} // namespace qeigen::spectra
