#include "qeigen/groundstate.hpp"

#include <algorithm>
#include <cmath>

#include "qeigen/amplitude.hpp"
#include "qeigen/errors.hpp"
#include "qeigen/qpe.hpp"
#include "qeigen/sim.hpp"

namespace qeigen::groundstate {

GroundStatePlan make_plan(const spectra::HermitianOperator& h_prime, double epsilon,
                          double theta0, const PrepareOptions& opts) {
    if (!(epsilon > 0.0 && epsilon < 0.5)) throw InvalidInput("prepare_rho: epsilon outside (0, 1/2)");
    GroundStatePlan plan;
    plan.theta0 = theta0;
    plan.epsilon = epsilon;
    plan.mode = opts.mode;

    // precision eps/4 for the phase-estimation component
    unsigned m4 = 1;
    while (std::ldexp(1.0, -static_cast<int>(m4)) > 0.25 * epsilon * (1.0 + 1e-12)) ++m4;
    plan.qpe_precision_bits = m4;
    plan.clock_bits = qpe::choose_t(m4);
    const double delta = 1.0 / (2.0 * static_cast<double>(h_prime.dim()) + 2.0);
    plan.copies = opts.copies_override != 0 ? opts.copies_override : qpe::choose_c(delta);
    if (plan.copies % 2 == 0) throw InvalidInput("prepare_rho: copy count must be odd");
    return plan;
}

namespace {

PreparedState postselect_mode(const spectra::HermitianOperator& h_prime,
                              const GroundStatePlan& plan, spectra::QueryLedger* ledger) {
    const qpe::QPEConfig cfg{plan.clock_bits, plan.copies, 0.25};
    const auto profile = qpe::build_profile(h_prime, cfg, ledger);
    const auto chi = amplitude::Predicate::window(plan.theta0, plan.epsilon, plan.clock_bits);
    const auto table = chi.acceptance_table();

    const auto& eig = h_prime.eigensystem();
    const std::size_t n = h_prime.dim();
    PreparedState out;
    out.window_mass.resize(n, 0.0);
    double total = 0.0;
    ComplexMatrix rho(n);
    for (std::size_t j = 0; j < n; ++j) {
        double mass = 0.0;
        for (std::size_t x = 0; x < profile.entries[j].pmf.size(); ++x)
            if (table[x]) mass += profile.entries[j].pmf[x];
        const double a_sq = mass / static_cast<double>(n);
        out.window_mass[j] = a_sq;
        total += a_sq;
    }
    if (total <= 0.0)
        throw PreconditionViolated("prepare_rho: window captures no amplitude; theta0 is off");
    for (std::size_t j = 0; j < n; ++j) {
        const double w = out.window_mass[j] / total;
        if (w == 0.0) continue;
        const auto psi = eig.eigenvector(j);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) rho.at(r, c) += w * psi[r] * std::conj(psi[c]);
    }
    out.rho = numerics::DensityMatrix(std::move(rho));
    out.p_good = total;
    out.attempts = 1;
    return out;
}

PreparedState grover_mode(const spectra::HermitianOperator& h_prime, const GroundStatePlan& plan,
                          const PrepareOptions& opts, Rng& rng) {
    const sim::FaithfulA a(h_prime, plan.clock_bits, plan.copies, opts.max_qubits);
    const auto chi = amplitude::Predicate::window(plan.theta0, plan.epsilon, plan.clock_bits);
    const auto keep = chi.acceptance_table();

    sim::RegisterState psi = a.prepared_state();
    double p_good = 0.0;
    {
        const auto marginal = psi.register_marginal(a.median_register());
        for (std::size_t x = 0; x < marginal.size(); ++x)
            if (keep[x]) p_good += marginal[x];
    }
    if (p_good <= 0.0)
        throw PreconditionViolated("prepare_rho: window captures no amplitude; theta0 is off");

    const double theta_a = std::asin(std::min(1.0, std::sqrt(p_good)));
    const unsigned iterations =
        theta_a >= M_PI / 4.0 ? 0u : static_cast<unsigned>(std::floor(M_PI / (4.0 * theta_a)));

    PreparedState out;
    out.p_good = p_good;
    out.grover_iterations = iterations;

    // one retry on a failed flag
    for (unsigned attempt = 1; attempt <= 2; ++attempt) {
        sim::RegisterState state = psi;
        for (unsigned it = 0; it < iterations; ++it)
            amplitude::apply_grover_operator(a, chi, state);
        // measure the window flag
        double success = 0.0;
        const auto marginal = state.register_marginal(a.median_register());
        for (std::size_t x = 0; x < marginal.size(); ++x)
            if (keep[x]) success += marginal[x];
        if (opts.ledger)
            opts.ledger->record_a_applications(1 + 2ull * iterations, plan.copies,
                                               plan.clock_bits);
        out.attempts = attempt;
        if (rng.next_double() < success) {
            state.project_register(a.median_register(), keep);
            state.normalize();
            const auto flat = sim::flatten(state);
            out.rho = numerics::trace_out(flat, a.system_qubit_indices());
            // per-eigenvalue window masses from the structured law, for diagnostics
            const auto& eig = h_prime.eigensystem();
            out.window_mass.resize(h_prime.dim());
            for (std::size_t j = 0; j < h_prime.dim(); ++j) {
                const auto pmf = qpe::median_distribution(
                    qpe::qpe_distribution(std::clamp(eig.eigenvalues[j], 0.0, 1.0 - 1e-15),
                                          plan.clock_bits),
                    plan.copies);
                double mass = 0.0;
                for (std::size_t x = 0; x < pmf.size(); ++x)
                    if (keep[x]) mass += pmf[x];
                out.window_mass[j] = mass / static_cast<double>(h_prime.dim());
            }
            return out;
        }
    }
    throw NumericalError("prepare_rho: amplification flag failed twice");
}

} // namespace

PreparedState prepare_rho(const spectra::HermitianOperator& h_prime, double epsilon,
                          double theta0, const PrepareOptions& opts, Rng& rng) {
    const GroundStatePlan plan = make_plan(h_prime, epsilon, theta0, opts);
    if (plan.mode == Mode::Postselect) return postselect_mode(h_prime, plan, opts.ledger);
    return grover_mode(h_prime, plan, opts, rng);
}

ComplexMatrix projector_low_energy(const spectra::HermitianOperator& h, double epsilon) {
    const auto& eig = h.eigensystem();
    const std::size_t n = h.dim();
    const double lambda0 = eig.eigenvalues.front();
    ComplexMatrix pi(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(eig.eigenvalues[j] - lambda0 < epsilon)) continue;
        const auto psi = eig.eigenvector(j);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) pi.at(r, c) += psi[r] * std::conj(psi[c]);
    }
    return pi;
}

double overlap(const numerics::DensityMatrix& rho, const ComplexMatrix& projector) {
    if (rho.dim() != projector.dim())
        throw DimensionMismatch("overlap: projector and state dimensions differ");
    cplx tr{};
    const std::size_t n = rho.dim();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) tr += projector.at(r, c) * rho.matrix().at(c, r);
    return std::clamp(tr.real(), 0.0, 1.0);
}

} // namespace qeigen::groundstate
