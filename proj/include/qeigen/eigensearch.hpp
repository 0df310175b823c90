#pragma once

// The m-step binary search for the smallest eigenvalue: parameter derivation
// (k, delta, M, q, t, c, r), the search itself driven by boosted amplitude
// estimates, the shift-and-rescale wrapper for general spectra, the
// nearest-to-one-half variant, and a post-hoc trace validator.

#include <cmath>
#include <vector>

#include "qeigen/amplitude.hpp"
#include "qeigen/qpe.hpp"
#include "qeigen/rng.hpp"
#include "qeigen/spectra.hpp"

namespace qeigen::eigensearch {

struct SearchParams {
    std::size_t matrix_dim = 0;  // N
    unsigned precision_bits = 1; // m, epsilon = 2^-m
    unsigned k = 537;
    double delta = 0.0;     // 1/(2N+2)
    unsigned qae_grid = 2;  // M, even, >= sqrt(kN/(1-delta))
    double threshold = 0.0; // q
    unsigned clock_bits = 0;
    unsigned copies = 1;
    unsigned repeats = 1;
    double nu = 0.9;

    double epsilon() const { return std::ldexp(1.0, -static_cast<int>(precision_bits)); }
};

enum class Decision { Lower, Upper };

struct SearchStep {
    unsigned index = 0;  // i, 1-based
    double y_prev = 0.0; // candidate the predicate was evaluated at
    double p_good = 0.0; // exact good probability at y_prev
    double p_tilde = 0.0;
    Decision decision = Decision::Upper;
    double y = 0.0;
};

struct SearchTrace {
    std::vector<SearchStep> steps;
};

struct EstimationResult {
    double estimate = 0.0;
    double epsilon = 0.0;
    SearchParams params;
    SearchTrace trace;
    spectra::LedgerSnapshot ledger;
};

// nu is the end-to-end success target used to pick the per-step QAE repeat
// count; k below 537 is rejected.
SearchParams derive_params(std::size_t matrix_dim, double epsilon, double nu, unsigned k = 537);

enum class SearchPredicate { LessThan, HalfRestricted };

// Binary search over a prebuilt profile. Steps charge the ledger with
// repeats * (2M - 1) applications of A each.
EstimationResult run_search(const qpe::MedianProfile& profile, const SearchParams& params,
                            Rng& rng, spectra::QueryLedger& ledger,
                            SearchPredicate predicate = SearchPredicate::LessThan);

// Profile construction plus run_search; eigenvalues of h_prime are assumed
// inside (epsilon, 1 - epsilon).
EstimationResult eigenvalue_estimation(const spectra::HermitianOperator& h_prime, double epsilon,
                                       const SearchParams& params, Rng& rng,
                                       spectra::QueryLedger* external_ledger = nullptr);

struct GeneralEstimate {
    double estimate = 0.0; // original spectrum units
    spectra::RescaleMap map;
    EstimationResult internal;
};

// Shift-and-rescale by norm_estimate, search at internal precision
// epsilon / (2 norm_estimate), map back.
GeneralEstimate estimate_general(const spectra::HermitianOperator& h, double epsilon,
                                 double norm_estimate, double nu, Rng& rng,
                                 spectra::QueryLedger* external_ledger = nullptr,
                                 unsigned k = 537);

struct NearestToHalf {
    double nearest = 0.0;
    bool upper_found = false;
    double upper = 0.0; // min{lambda >= 1/2} estimate when found
    bool lower_found = false;
    double lower = 0.0; // max{lambda <= 1/2} estimate when found
};

// Searches both half-spectra with the MSB-restricted predicate (the lower
// side through the reflected profile) and keeps whichever estimate sits
// closer to 1/2. Throws NoEigenvalueInHalf when both sides read empty.
NearestToHalf find_nearest_to_half(const spectra::HermitianOperator& h_prime, double epsilon,
                                   const SearchParams& params, Rng& rng);

struct TraceValidation {
    bool envelope_ok = true;                  // |y_i - lambda0| <= 2^-(i+1) + eps/2 at every step
    bool final_ok = true;                     // |y_m - lambda0| <= eps
    std::vector<unsigned> violating_steps;    // step indices breaking the envelope
    std::vector<unsigned> tail_event_steps;   // steps whose boosted estimate left the QAE band
    bool violations_explained = true;         // every violation preceded by a tail event
};

TraceValidation validate_trace(const EstimationResult& result, double lambda0_exact);

} // namespace qeigen::eigensearch
