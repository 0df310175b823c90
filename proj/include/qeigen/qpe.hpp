#pragma once

// Phase-estimation statistics: exact t-bit outcome laws, the median-of-c
// boost (order statistics), parameter selection for clock bits and copy
// counts, and the structured profile that models the eigenvalue register of
// A|0> one eigenvalue at a time.

#include <cstddef>
#include <vector>

#include "qeigen/spectra.hpp"

namespace qeigen::qpe {

struct QPEConfig {
    unsigned clock_bits = 1;   // t
    unsigned copies = 1;       // c, odd
    double per_copy_budget = 0.25; // zeta
};

struct ProfileEntry {
    double lambda = 0.0;       // eigenphase in [0, 1)
    double weight = 0.0;       // 1/N
    std::vector<double> pmf;   // outcome law over {0, ..., 2^t - 1}
};

// Median-boosted eigenvalue-register statistics of A|0>. `copies` == 1 makes
// this the plain per-copy profile.
struct MedianProfile {
    unsigned clock_bits = 0;
    unsigned copies = 1;
    std::vector<ProfileEntry> entries;

    std::size_t bin_count() const { return std::size_t{1} << clock_bits; }
};

// Exact t-bit QPE law for eigenphase phi:
// Pr[x] = |2^-t sum_s exp(2 pi i s (phi - x/2^t))|^2 in closed form.
std::vector<double> qpe_distribution(double phi, unsigned t);

// Law of the median of c independent draws from `pmf`, via the order
// statistic Pr[median <= v] = sum_{i>=ceil(c/2)} C(c,i) F(v)^i (1-F(v))^(c-i).
std::vector<double> median_distribution(const std::vector<double>& pmf, unsigned c);

// t = m + ceil(log2(2 + 1/(2 zeta))); zeta = 1/4 gives t = m + 2.
unsigned choose_t(unsigned precision_bits, double zeta = 0.25);

// Smallest odd c with Pr[Binomial(c, 1/4) >= ceil(c/2)] < delta.
unsigned choose_c(double delta);

// Pr[Binomial(n, p) >= k], exact summation.
double binomial_upper_tail(unsigned n, double p, unsigned k);

// Diagonalizes H' (eigenvalues must lie in [0, 1)) and attaches the
// median-boosted outcome law to every eigenvalue at weight 1/N. Charges one
// application of A to the ledger when one is supplied.
MedianProfile build_profile(const spectra::HermitianOperator& h_prime, const QPEConfig& cfg,
                            spectra::QueryLedger* ledger = nullptr);

// p = sum_j weight_j * Pr_j[x / 2^t < y], strict comparison.
double probability_below(const MedianProfile& profile, double y);

// Mirror image under lambda -> 1 - lambda; bin x maps to (2^t - x) mod 2^t.
MedianProfile reflect_profile(const MedianProfile& profile);

// Full statevector of A|0>: Bell-pair preparation, c serial t-bit phase
// estimations, median XOR, clock uncompute. Register order is clocks |
// median | system | conjugate, most significant first. Throws TooManyQubits
// past the cap.
numerics::StateVector faithful_a_statevector(const spectra::HermitianOperator& h_prime,
                                             const QPEConfig& cfg, unsigned max_qubits = 24);

} // namespace qeigen::qpe
