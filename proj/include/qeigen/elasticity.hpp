#pragma once

// Composite-string elasticity: tent-function FEM assembly of the tridiagonal
// operator D, the semi-analytical piecewise-wave solver for the fundamental
// mode, grid discretization, and the end-to-end estimate-then-amplify
// pipeline driver.

#include <cstddef>
#include <vector>

#include "qeigen/eigensearch.hpp"
#include "qeigen/groundstate.hpp"
#include "qeigen/rng.hpp"
#include "qeigen/spectra.hpp"

namespace qeigen::elasticity {

struct StringGeometry {
    double z0 = 0.0;        // insert center
    double width = 0.0;     // insert width d
    double eps_ratio = 1.0; // coefficient inside the insert, 1 outside

    double left() const { return z0 - 0.5 * width; }
    double right() const { return z0 + 0.5 * width; }
    void validate() const; // insert strictly inside (-1, 1), ratio >= 1
};

struct Grid {
    std::size_t n = 0; // interior point count
    double h = 0.0;    // 2/(n+1)
    std::vector<double> points;

    static Grid make(std::size_t n);
    // Both interfaces must sit on interior grid points to 1e-12.
    void check_alignment(const StringGeometry& g) const;
};

// eps_ratio inside the closed insert interval, 1 outside.
double coefficient(double z, const StringGeometry& g);

// Tridiagonal FEM operator with element-midpoint coefficients; symmetric by
// construction (shared-element midpoint on the off-diagonals).
spectra::HermitianOperator assemble_d(std::size_t n, const StringGeometry& g);

// Piecewise sinusoidal fundamental mode. The three segments carry wavenumbers
// k_out, k_in, k_out; interfaces match value continuity and flux continuity
// of (1/eps_r) dPhi/dz, the natural condition of the FEM operator above.
struct ModeSolution {
    double lambda = 0.0;
    StringGeometry geometry;
    double k_outer = 0.0;
    double k_inner = 0.0;
    double alpha = 0.0; // middle-segment sine coefficient
    double beta = 0.0;  // middle-segment cosine coefficient
    double gamma = 0.0; // right-segment amplitude
    double scale = 1.0; // normalizes max |Phi| to 1

    double evaluate(double z) const;
    std::vector<std::pair<double, double>> samples; // (z, Phi(z)), 1001 points
};

// Transcendental matching determinant; roots are eigenvalues.
double matching_determinant(double lambda, const StringGeometry& g);

// Bracketing scan over [-10 pi^2/4, -1e-6] with 1e4 subdivisions, bisection
// to 1e-12; returns the smallest-|lambda| mode normalized to max |Phi| = 1.
ModeSolution semianalytic_fundamental(const StringGeometry& g);

// (Phi(p_1), ..., Phi(p_N)) at unit Euclidean norm.
std::vector<double> discretize_mode(const ModeSolution& mode, const Grid& grid);

struct PipelineReport {
    std::size_t n = 0;
    StringGeometry geometry;
    unsigned clock_bits = 0;
    double gershgorin = 0.0;
    double lambda_min_exact = 0.0;
    double lambda_min_magnitude_exact = 0.0; // smallest |lambda|, for reference
    double estimate = 0.0;                   // from the quantum pipeline
    double abs_error = 0.0;
    double resolution = 0.0; // 2 * gershgorin * 2^-clock_bits
    double theta0_internal = 0.0;
    double p_good = 0.0;
    double fidelity_vs_exact = 0.0;
    double pi_overlap = 0.0;
    double semianalytic_lambda = 0.0;
    double mode_overlap = 0.0; // |<discretized semi-analytic, FEM fundamental>|
    eigensearch::EstimationResult estimation;
    spectra::LedgerSnapshot ledger;
    std::vector<double> grid_z;
    std::vector<double> mode_semianalytic; // unit norm
    std::vector<double> mode_fem;          // unit norm, sign-aligned
    std::vector<cplx> rho_entries;         // row-major system density matrix
};

// Assemble, rescale by the Gershgorin bound, estimate at the given clock
// budget, prepare rho (estimating theta0 at quarter precision first), and
// collect diagnostics.
PipelineReport elasticity_pipeline(std::size_t n, const StringGeometry& g, unsigned clock_bits,
                                   Rng& rng, groundstate::Mode mode = groundstate::Mode::Postselect,
                                   double nu = 0.9);

} // namespace qeigen::elasticity
