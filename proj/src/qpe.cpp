#include "qeigen/qpe.hpp"

#include <algorithm>
#include <cmath>

#include "qeigen/errors.hpp"
#include "qeigen/sim.hpp"

namespace qeigen::qpe {

std::vector<double> qpe_distribution(double phi, unsigned t) {
    if (t < 1) throw InvalidInput("qpe_distribution: need at least one clock bit");
    if (t > 26) throw InvalidInput("qpe_distribution: clock register beyond 26 bits");
    if (!(phi >= 0.0 && phi < 1.0)) throw InvalidInput("qpe_distribution: phase outside [0, 1)");
    const std::size_t bins = std::size_t{1} << t;
    const double tf = static_cast<double>(bins);
    std::vector<double> pmf(bins);
    for (std::size_t x = 0; x < bins; ++x) {
        const double delta = phi - static_cast<double>(x) / tf;
        const double s = std::sin(M_PI * delta);
        if (std::abs(s) < 1e-300) {
            pmf[x] = 1.0;
            continue;
        }
        const double num = std::sin(M_PI * tf * delta);
        const double amp = num / (tf * s);
        pmf[x] = amp * amp;
    }
    return pmf;
}

double binomial_upper_tail(unsigned n, double p, unsigned k) {
    if (k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return 1.0;
    double tail = 0.0;
    // terms C(n,i) p^i q^(n-i) built iteratively from i = n downward
    double term = std::pow(p, static_cast<double>(n));
    for (unsigned i = n;; --i) {
        if (i >= k) tail += term;
        if (i == 0 || i <= k) break;
        // C(n,i-1)/C(n,i) = i/(n-i+1)
        term *= static_cast<double>(i) / static_cast<double>(n - i + 1);
        term *= (1.0 - p) / p;
    }
    return tail;
}

std::vector<double> median_distribution(const std::vector<double>& pmf, unsigned c) {
    if (c % 2 == 0 || c == 0) throw InvalidInput("median_distribution: copy count must be odd");
    if (c == 1) return pmf;
    const unsigned half = (c + 1) / 2;
    std::vector<double> out(pmf.size());
    double cum = 0.0;
    double prev_tail = 0.0;
    for (std::size_t v = 0; v < pmf.size(); ++v) {
        cum = std::min(1.0, cum + pmf[v]);
        const double tail = binomial_upper_tail(c, cum, half);
        out[v] = std::max(0.0, tail - prev_tail);
        prev_tail = tail;
    }
    return out;
}

unsigned choose_t(unsigned precision_bits, double zeta) {
    if (precision_bits < 1) throw InvalidInput("choose_t: need at least one precision bit");
    if (!(zeta > 0.0 && zeta < 1.0)) throw InvalidInput("choose_t: budget outside (0, 1)");
    const double target = 2.0 + 1.0 / (2.0 * zeta);
    unsigned extra = 0;
    while (std::ldexp(1.0, static_cast<int>(extra)) < target * (1.0 - 1e-12)) ++extra;
    return precision_bits + extra;
}

unsigned choose_c(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("choose_c: delta outside (0, 1)");
    for (unsigned c = 1;; c += 2) {
        if (binomial_upper_tail(c, 0.25, (c + 1) / 2) < delta) return c;
        if (c > 20001) throw NoConvergence("choose_c: no odd copy count under 20001 suffices");
    }
}

MedianProfile build_profile(const spectra::HermitianOperator& h_prime, const QPEConfig& cfg,
                            spectra::QueryLedger* ledger) {
    const auto& eig = h_prime.eigensystem();
    MedianProfile profile;
    profile.clock_bits = cfg.clock_bits;
    profile.copies = cfg.copies;
    profile.entries.reserve(eig.eigenvalues.size());
    const double weight = 1.0 / static_cast<double>(eig.eigenvalues.size());
    for (double lambda : eig.eigenvalues) {
        // tolerate rounding at the window edges, reject genuine violations
        double phi = lambda;
        if (phi < 0.0) {
            if (phi < -1e-9) throw InvalidInput("build_profile: eigenvalue below 0");
            phi = 0.0;
        }
        if (phi >= 1.0) {
            if (phi > 1.0 + 1e-9) throw InvalidInput("build_profile: eigenvalue beyond 1");
            phi = std::nextafter(1.0, 0.0);
        }
        ProfileEntry entry;
        entry.lambda = phi;
        entry.weight = weight;
        entry.pmf = median_distribution(qpe_distribution(phi, cfg.clock_bits), cfg.copies);
        profile.entries.push_back(std::move(entry));
    }
    if (ledger) ledger->record_a_applications(1, cfg.copies, cfg.clock_bits);
    return profile;
}

double probability_below(const MedianProfile& profile, double y) {
    const double bins = static_cast<double>(profile.bin_count());
    // strict x/2^t < y: count = ceil(y * 2^t) works for integer and
    // non-integer cutoffs alike
    const double cut = std::ceil(std::clamp(y, 0.0, 1.0) * bins);
    const std::size_t count = static_cast<std::size_t>(std::min(cut, bins));
    double p = 0.0;
    for (const auto& entry : profile.entries) {
        double mass = 0.0;
        for (std::size_t x = 0; x < count; ++x) mass += entry.pmf[x];
        p += entry.weight * mass;
    }
    return std::clamp(p, 0.0, 1.0);
}

numerics::StateVector faithful_a_statevector(const spectra::HermitianOperator& h_prime,
                                             const QPEConfig& cfg, unsigned max_qubits) {
    sim::FaithfulA a(h_prime, cfg.clock_bits, cfg.copies, max_qubits);
    return sim::flatten(a.prepared_state());
}

MedianProfile reflect_profile(const MedianProfile& profile) {
    MedianProfile out;
    out.clock_bits = profile.clock_bits;
    out.copies = profile.copies;
    out.entries.reserve(profile.entries.size());
    const std::size_t bins = profile.bin_count();
    for (const auto& entry : profile.entries) {
        ProfileEntry mirrored;
        mirrored.lambda = entry.lambda == 0.0 ? 0.0 : 1.0 - entry.lambda;
        mirrored.weight = entry.weight;
        mirrored.pmf.resize(bins);
        for (std::size_t x = 0; x < bins; ++x) mirrored.pmf[(bins - x) % bins] = entry.pmf[x];
        out.entries.push_back(std::move(mirrored));
    }
    return out;
}

} // namespace qeigen::qpe
