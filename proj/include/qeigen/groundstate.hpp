#pragma once

// Low-energy state preparation: given an estimate theta0 of the smallest
// eigenvalue (precision eps/4), amplify the eigenvalue-register window
// |x - theta0| < eps/2. Postselect mode conditions the mixture analytically;
// grover mode runs the amplification circuit on the faithful backend.

#include <vector>

#include "qeigen/numerics.hpp"
#include "qeigen/rng.hpp"
#include "qeigen/spectra.hpp"

namespace qeigen::groundstate {

enum class Mode { Postselect, Grover };

struct GroundStatePlan {
    double theta0 = 0.0;
    double epsilon = 0.0;   // window width; half-width eps/2, QPE precision eps/4
    Mode mode = Mode::Postselect;
    double gamma = 2.0 / 3.0;

    unsigned qpe_precision_bits = 0; // bits resolving eps/4
    unsigned clock_bits = 0;
    unsigned copies = 1;
};

struct PreparedState {
    numerics::DensityMatrix rho;     // system register
    double p_good = 0.0;             // window mass of A|0>, sum_j |a_j|^2
    std::vector<double> window_mass; // |a_j|^2 per eigenvalue, ascending order
    unsigned grover_iterations = 0;  // zero in postselect mode
    unsigned attempts = 0;           // amplification rounds consumed
};

struct PrepareOptions {
    Mode mode = Mode::Postselect;
    // Overrides choose_c for the faithful path, whose register footprint is
    // copies*t + t + 2n qubits; 0 keeps the derived default.
    unsigned copies_override = 0;
    unsigned max_qubits = 24;
    spectra::QueryLedger* ledger = nullptr;
};

GroundStatePlan make_plan(const spectra::HermitianOperator& h_prime, double epsilon,
                          double theta0, const PrepareOptions& opts);

// Caller supplies theta0 from an estimation run at precision eps/4.
PreparedState prepare_rho(const spectra::HermitianOperator& h_prime, double epsilon,
                          double theta0, const PrepareOptions& opts, Rng& rng);

// Pi = sum over eigenvectors with lambda_j - lambda_0 < eps.
ComplexMatrix projector_low_energy(const spectra::HermitianOperator& h, double epsilon);

// Tr(Pi rho), clamped to [0, 1].
double overlap(const numerics::DensityMatrix& rho, const ComplexMatrix& projector);

} // namespace qeigen::groundstate
