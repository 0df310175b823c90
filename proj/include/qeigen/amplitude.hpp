#pragma once

// Amplitude-estimation statistics: good/bad predicates over the median
// register, the exact outcome law of phase estimation on the Grover rotation
// angle, its error envelope, median-boosted repetition, and a faithful
// Grover-operator construction for cross-checks at tiny sizes.

#include <cstddef>
#include <vector>

#include "qeigen/qpe.hpp"
#include "qeigen/rng.hpp"
#include "qeigen/sim.hpp"

namespace qeigen::amplitude {

// Good/bad classifier on t-bit median strings.
class Predicate {
  public:
    enum class Kind { LessThan, Window, HalfRestrictedLessThan };

    static Predicate less_than(double y, unsigned t) { return {Kind::LessThan, y, 0.0, 0.0, t}; }
    // |0.x - theta0| < eps/2 with theta0 snapped to the t-bit grid.
    static Predicate window(double theta0, double eps, unsigned t);
    // As less_than but the most significant bit must be set.
    static Predicate half_restricted_less_than(double y, unsigned t) {
        return {Kind::HalfRestrictedLessThan, y, 0.0, 0.0, t};
    }

    bool accepts(std::size_t x) const;
    unsigned bits() const { return bits_; }
    Kind kind() const { return kind_; }
    double threshold() const { return y_; }

    std::vector<char> acceptance_table() const;

  private:
    Predicate(Kind kind, double y, double theta0, double eps, unsigned t)
        : kind_(kind), y_(y), theta0_(theta0), eps_(eps), bits_(t) {}

    Kind kind_;
    double y_ = 0.0;
    double theta0_ = 0.0;
    double eps_ = 0.0;
    unsigned bits_ = 0;
};

struct AmplitudeSplit {
    double p_good = 0.0;
    double p_bad = 1.0;
};

// One point mass of the QAE outcome law.
struct QAEOutcome {
    double estimate = 0.0;
    double mass = 0.0;
};

AmplitudeSplit good_probability(const qpe::MedianProfile& profile, const Predicate& chi);

// Exact law of M-point phase estimation on the two Grover eigenphases
// +-theta/pi with sin^2(theta) = p_g, folded onto the estimate grid
// sin^2(pi a / M), a = 0..M/2.
std::vector<QAEOutcome> qae_distribution(double p_good, unsigned grid);

double qae_sample(double p_good, unsigned grid, Rng& rng);

// Error envelope 2 pi sqrt(pg(1-pg))/M + pi^2/M^2.
double qae_error_bound(double p_good, unsigned grid);

// Median of `repeats` independent samples.
double boosted_qae(double p_good, unsigned grid, unsigned repeats, Rng& rng);

// Smallest odd r whose median-of-r failure tail stays below 1 - nu^(1/m).
unsigned choose_repeats(double nu, unsigned steps);

// Q = -A S0 A† S_chi as an explicit unitary (column-by-column through the
// circuit). Only sensible at cross-check sizes; capped at 12 total qubits.
ComplexMatrix faithful_grover_operator(const sim::FaithfulA& a, const Predicate& chi);

// One in-place application of Q to a register state.
void apply_grover_operator(const sim::FaithfulA& a, const Predicate& chi,
                           sim::RegisterState& state);

// Rotation angle of Q on the A|0> plane via <psi|Q|psi> = cos(2 theta);
// returns sin^2(theta), the faithful estimate of p_good.
double extract_grover_probability(const sim::FaithfulA& a, const Predicate& chi);

} // namespace qeigen::amplitude
