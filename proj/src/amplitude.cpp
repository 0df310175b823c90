#include "qeigen/amplitude.hpp"

#include <algorithm>
#include <cmath>

#include "qeigen/errors.hpp"

namespace qeigen::amplitude {

Predicate Predicate::window(double theta0, double eps, unsigned t) {
    const double bins = std::ldexp(1.0, static_cast<int>(t));
    const double snapped = std::round(theta0 * bins) / bins;
    return {Kind::Window, 0.0, snapped, eps, t};
}

bool Predicate::accepts(std::size_t x) const {
    const double bins = std::ldexp(1.0, static_cast<int>(bits_));
    const double value = static_cast<double>(x) / bins;
    switch (kind_) {
        case Kind::LessThan:
            return value < y_;
        case Kind::Window:
            return std::abs(value - theta0_) < 0.5 * eps_;
        case Kind::HalfRestrictedLessThan:
            return value >= 0.5 && value < y_;
    }
    return false;
}

std::vector<char> Predicate::acceptance_table() const {
    const std::size_t bins = std::size_t{1} << bits_;
    std::vector<char> table(bins);
    for (std::size_t x = 0; x < bins; ++x) table[x] = accepts(x) ? 1 : 0;
    return table;
}

AmplitudeSplit good_probability(const qpe::MedianProfile& profile, const Predicate& chi) {
    if (chi.bits() != profile.clock_bits)
        throw BitWidthMismatch("predicate bit width differs from profile clock bits");
    const auto table = chi.acceptance_table();
    double p = 0.0;
    for (const auto& entry : profile.entries) {
        double mass = 0.0;
        for (std::size_t x = 0; x < entry.pmf.size(); ++x)
            if (table[x]) mass += entry.pmf[x];
        p += entry.weight * mass;
    }
    p = std::clamp(p, 0.0, 1.0);
    return {p, 1.0 - p};
}

namespace {

// Phase-estimation kernel |<y|FT†|omega>|^2 at offset `delta` turns, exact in
// the on-grid limit.
double pe_kernel(double delta, unsigned m) {
    double d = delta - std::round(delta);
    const double s = std::sin(M_PI * d);
    const double mf = static_cast<double>(m);
    if (std::abs(s) < 1e-300) return 1.0;
    const double amp = std::sin(M_PI * mf * d) / (mf * s);
    return amp * amp;
}

} // namespace

std::vector<QAEOutcome> qae_distribution(double p_good, unsigned grid) {
    if (grid < 2 || grid % 2 != 0) throw InvalidInput("qae grid size must be even and >= 2");
    if (!(p_good >= 0.0 && p_good <= 1.0)) throw InvalidInput("p_good outside [0, 1]");
    const double theta = std::asin(std::sqrt(p_good));
    const double omega = theta / M_PI; // eigenphase in turns, in [0, 1/2]
    const unsigned half = grid / 2;
    std::vector<QAEOutcome> outcomes(half + 1);
    const double mf = static_cast<double>(grid);
    for (unsigned a = 0; a <= half; ++a) {
        const double est = std::pow(std::sin(M_PI * static_cast<double>(a) / mf), 2);
        double mass;
        if (a == 0 || a == half) {
            mass = pe_kernel(omega - static_cast<double>(a) / mf, grid);
        } else {
            mass = pe_kernel(omega - static_cast<double>(a) / mf, grid) +
                   pe_kernel(omega + static_cast<double>(a) / mf, grid);
        }
        outcomes[a] = {est, mass};
    }
    return outcomes;
}

double qae_sample(double p_good, unsigned grid, Rng& rng) {
    const auto outcomes = qae_distribution(p_good, grid);
    const double u = rng.next_double();
    double cum = 0.0;
    for (const auto& o : outcomes) {
        cum += o.mass;
        if (u < cum) return o.estimate;
    }
    return outcomes.back().estimate;
}

double qae_error_bound(double p_good, unsigned grid) {
    const double mf = static_cast<double>(grid);
    return 2.0 * M_PI * std::sqrt(p_good * (1.0 - p_good)) / mf + M_PI * M_PI / (mf * mf);
}

double boosted_qae(double p_good, unsigned grid, unsigned repeats, Rng& rng) {
    if (repeats % 2 == 0 || repeats == 0) throw InvalidInput("qae repeat count must be odd");
    if (repeats == 1) return qae_sample(p_good, grid, rng);
    std::vector<double> samples(repeats);
    for (auto& s : samples) s = qae_sample(p_good, grid, rng);
    std::nth_element(samples.begin(), samples.begin() + repeats / 2, samples.end());
    return samples[repeats / 2];
}

unsigned choose_repeats(double nu, unsigned steps) {
    if (!(nu > 0.0 && nu < 1.0)) throw InvalidInput("target success probability outside (0, 1)");
    if (steps == 0) throw InvalidInput("step count must be positive");
    const double per_step_budget = 1.0 - std::pow(nu, 1.0 / static_cast<double>(steps));
    const double fail = 1.0 - 8.0 / (M_PI * M_PI);
    for (unsigned r = 1;; r += 2) {
        if (qpe::binomial_upper_tail(r, fail, (r + 1) / 2) <= per_step_budget) return r;
        if (r > 2001) throw NoConvergence("no odd repeat count under 2001 meets the budget");
    }
}

namespace {

void apply_grover_core(const sim::FaithfulA& a, const std::vector<char>& flip,
                       sim::RegisterState& state) {
    state.phase_flip_register(a.median_register(), flip);
    a.apply(state, /*adjoint=*/true);
    state.phase_flip_zero();
    a.apply(state, /*adjoint=*/false);
    for (auto& amp : state.amplitudes()) amp = -amp;
}

} // namespace

void apply_grover_operator(const sim::FaithfulA& a, const Predicate& chi,
                           sim::RegisterState& state) {
    if (chi.bits() != a.clock_bits())
        throw BitWidthMismatch("predicate bit width differs from clock register");
    apply_grover_core(a, chi.acceptance_table(), state);
}

ComplexMatrix faithful_grover_operator(const sim::FaithfulA& a, const Predicate& chi) {
    if (a.total_qubits() > 12)
        throw TooManyQubits("explicit Grover matrix capped at 12 qubits");
    if (chi.bits() != a.clock_bits())
        throw BitWidthMismatch("predicate bit width differs from clock register");
    const auto flip = chi.acceptance_table();
    const std::size_t dim = std::size_t{1} << a.total_qubits();
    ComplexMatrix q(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        sim::RegisterState state = a.initial_state();
        auto& amps = state.amplitudes();
        amps[0] = 0.0;
        amps[col] = 1.0;
        apply_grover_core(a, flip, state);
        for (std::size_t row = 0; row < dim; ++row) q.at(row, col) = state.amplitudes()[row];
    }
    return q;
}

double extract_grover_probability(const sim::FaithfulA& a, const Predicate& chi) {
    sim::RegisterState psi = a.prepared_state();
    sim::RegisterState qpsi = psi;
    apply_grover_operator(a, chi, qpsi);
    double cos2theta = 0.0;
    for (std::size_t i = 0; i < psi.amplitudes().size(); ++i)
        cos2theta += (std::conj(psi.amplitudes()[i]) * qpsi.amplitudes()[i]).real();
    cos2theta = std::clamp(cos2theta, -1.0, 1.0);
    const double theta = 0.5 * std::acos(cos2theta);
    const double s = std::sin(theta);
    return s * s;
}

} // namespace qeigen::amplitude
