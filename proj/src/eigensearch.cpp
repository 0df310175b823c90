#include "qeigen/eigensearch.hpp"

#include <algorithm>
#include <cmath>

#include "qeigen/errors.hpp"

namespace qeigen::eigensearch {

SearchParams derive_params(std::size_t matrix_dim, double epsilon, double nu, unsigned k) {
    if (matrix_dim < 2 || (matrix_dim & (matrix_dim - 1)) != 0)
        throw InvalidInput("derive_params: matrix dimension must be a power of two >= 2");
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw InvalidInput("derive_params: epsilon outside (0, 1/2)");
    if (!(nu > 0.0 && nu < 1.0)) throw InvalidInput("derive_params: nu outside (0, 1)");
    if (k < 537) throw InvalidInput("derive_params: k below 537");

    SearchParams p;
    p.matrix_dim = matrix_dim;
    p.k = k;
    p.nu = nu;

    // epsilon normalized down to a power of two; the relative slack absorbs
    // rounding when epsilon arrives as a product of rescale factors
    unsigned m = 1;
    while (std::ldexp(1.0, -static_cast<int>(m)) > epsilon * (1.0 + 1e-12)) ++m;
    p.precision_bits = m;

    const double n = static_cast<double>(matrix_dim);
    p.delta = 1.0 / (2.0 * n + 2.0);

    const double grid_raw = std::sqrt(static_cast<double>(k) * n / (1.0 - p.delta));
    unsigned grid = 2 * static_cast<unsigned>(std::ceil(grid_raw / 2.0));
    while (static_cast<double>(grid) < grid_raw) grid += 2;
    p.qae_grid = grid;

    p.threshold = (1.0 - p.delta) / n *
                  (0.5 + std::sqrt(2.0) * M_PI / std::sqrt(static_cast<double>(k)) +
                   M_PI * M_PI / static_cast<double>(k));

    p.clock_bits = qpe::choose_t(m);
    p.copies = qpe::choose_c(p.delta);
    p.repeats = amplitude::choose_repeats(nu, m);
    return p;
}

EstimationResult run_search(const qpe::MedianProfile& profile, const SearchParams& params,
                            Rng& rng, spectra::QueryLedger& ledger, SearchPredicate predicate) {
    EstimationResult result;
    result.params = params;
    result.epsilon = params.epsilon();

    const unsigned m = params.precision_bits;
    const std::uint64_t apps_per_step =
        static_cast<std::uint64_t>(params.repeats) * (2ull * params.qae_grid - 1);

    double y = 0.5;
    for (unsigned i = 1; i <= m; ++i) {
        const auto chi = predicate == SearchPredicate::LessThan
                             ? amplitude::Predicate::less_than(y, params.clock_bits)
                             : amplitude::Predicate::half_restricted_less_than(y, params.clock_bits);
        const double p_good = amplitude::good_probability(profile, chi).p_good;
        const double p_tilde =
            amplitude::boosted_qae(p_good, params.qae_grid, params.repeats, rng);
        ledger.record_a_applications(apps_per_step, params.copies, params.clock_bits);

        SearchStep step;
        step.index = i;
        step.y_prev = y;
        step.p_good = p_good;
        step.p_tilde = p_tilde;
        const double halving = std::ldexp(1.0, -static_cast<int>(i) - 1);
        if (p_tilde > params.threshold) {
            step.decision = Decision::Lower;
            y -= halving;
        } else {
            step.decision = Decision::Upper;
            y += halving;
        }
        step.y = y;
        result.trace.steps.push_back(step);
    }
    result.estimate = y;
    result.ledger = spectra::snapshot(ledger);
    return result;
}

EstimationResult eigenvalue_estimation(const spectra::HermitianOperator& h_prime, double epsilon,
                                       const SearchParams& params, Rng& rng,
                                       spectra::QueryLedger* external_ledger) {
    if (std::ldexp(1.0, -static_cast<int>(params.precision_bits)) > epsilon + 1e-15)
        throw InvalidInput("eigenvalue_estimation: params were derived for a coarser epsilon");
    spectra::QueryLedger local;
    spectra::QueryLedger& ledger = external_ledger ? *external_ledger : local;
    const qpe::QPEConfig cfg{params.clock_bits, params.copies, 0.25};
    const auto profile = qpe::build_profile(h_prime, cfg, &ledger);
    return run_search(profile, params, rng, ledger);
}

GeneralEstimate estimate_general(const spectra::HermitianOperator& h, double epsilon,
                                 double norm_estimate, double nu, Rng& rng,
                                 spectra::QueryLedger* external_ledger, unsigned k) {
    if (!(norm_estimate > 0.0)) throw InvalidNorm("estimate_general: norm estimate must be positive");
    if (!(epsilon > 0.0)) throw InvalidInput("estimate_general: epsilon must be positive");
    auto [h_prime, map] = spectra::rescale_operator(h, norm_estimate);
    const double internal_eps = epsilon * map.factor;
    if (internal_eps >= 0.5)
        throw InvalidInput("estimate_general: requested precision is coarser than the spectrum window");
    const SearchParams params = derive_params(h.dim(), internal_eps, nu, k);
    GeneralEstimate out;
    out.map = map;
    out.internal = eigenvalue_estimation(h_prime, internal_eps, params, rng, external_ledger);
    out.estimate = map.backward(out.internal.estimate);
    return out;
}

namespace {

// Empty-side probe: boosted estimate of the restricted mass at y = 1.
bool side_has_mass(const qpe::MedianProfile& profile, const SearchParams& params, Rng& rng,
                   spectra::QueryLedger& ledger) {
    const auto chi = amplitude::Predicate::half_restricted_less_than(1.0, params.clock_bits);
    const double p_good = amplitude::good_probability(profile, chi).p_good;
    const double p_tilde = amplitude::boosted_qae(p_good, params.qae_grid, params.repeats, rng);
    ledger.record_a_applications(
        static_cast<std::uint64_t>(params.repeats) * (2ull * params.qae_grid - 1), params.copies,
        params.clock_bits);
    return p_tilde > params.threshold;
}

} // namespace

NearestToHalf find_nearest_to_half(const spectra::HermitianOperator& h_prime, double epsilon,
                                   const SearchParams& params, Rng& rng) {
    if (std::ldexp(1.0, -static_cast<int>(params.precision_bits)) > epsilon + 1e-15)
        throw InvalidInput("find_nearest_to_half: params were derived for a coarser epsilon");
    spectra::QueryLedger ledger;
    const qpe::QPEConfig cfg{params.clock_bits, params.copies, 0.25};
    const auto profile = qpe::build_profile(h_prime, cfg, &ledger);
    const auto mirrored = qpe::reflect_profile(profile);

    NearestToHalf out;
    if (side_has_mass(profile, params, rng, ledger)) {
        out.upper_found = true;
        out.upper = run_search(profile, params, rng, ledger, SearchPredicate::HalfRestricted)
                        .estimate;
    }
    if (side_has_mass(mirrored, params, rng, ledger)) {
        out.lower_found = true;
        out.lower =
            1.0 -
            run_search(mirrored, params, rng, ledger, SearchPredicate::HalfRestricted).estimate;
    }
    if (!out.upper_found && !out.lower_found)
        throw NoEigenvalueInHalf("both half-spectrum searches read an empty side");
    if (!out.lower_found || (out.upper_found && std::abs(out.upper - 0.5) <= std::abs(out.lower - 0.5)))
        out.nearest = out.upper;
    else
        out.nearest = out.lower;
    return out;
}

TraceValidation validate_trace(const EstimationResult& result, double lambda0_exact) {
    TraceValidation v;
    const double eps = result.epsilon;
    bool tail_seen = false;
    for (const auto& step : result.trace.steps) {
        const double band =
            amplitude::qae_error_bound(step.p_good, result.params.qae_grid);
        const bool tail = std::abs(step.p_tilde - step.p_good) > band + 1e-15;
        if (tail) {
            v.tail_event_steps.push_back(step.index);
            tail_seen = true;
        }
        const double envelope = std::ldexp(1.0, -static_cast<int>(step.index) - 1) + 0.5 * eps;
        if (std::abs(step.y - lambda0_exact) > envelope + 1e-12) {
            v.envelope_ok = false;
            v.violating_steps.push_back(step.index);
            if (!tail_seen) v.violations_explained = false;
        }
    }
    if (std::abs(result.estimate - lambda0_exact) > eps + 1e-12) v.final_ok = false;
    return v;
}

} // namespace qeigen::eigensearch
