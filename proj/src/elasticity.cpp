#include "qeigen/elasticity.hpp"

#include <algorithm>
#include <cmath>

#include "qeigen/errors.hpp"
#include "qeigen/numerics.hpp"

namespace qeigen::elasticity {

void StringGeometry::validate() const {
    if (!(width > 0.0)) throw InvalidInput("string geometry: insert width must be positive");
    if (!(left() > -1.0 && right() < 1.0))
        throw InvalidInput("string geometry: insert must lie strictly inside (-1, 1)");
    if (!(eps_ratio >= 1.0)) throw InvalidInput("string geometry: coefficient ratio below 1");
}

Grid Grid::make(std::size_t n) {
    if (n < 2 || (n & (n - 1)) != 0)
        throw DimNotPowerOfTwo("grid: interior point count must be a power of two");
    Grid grid;
    grid.n = n;
    grid.h = 2.0 / static_cast<double>(n + 1);
    grid.points.resize(n);
    for (std::size_t i = 1; i <= n; ++i)
        grid.points[i - 1] = -1.0 + static_cast<double>(i) * grid.h;
    return grid;
}

void Grid::check_alignment(const StringGeometry& g) const {
    for (double iface : {g.left(), g.right()}) {
        const double idx = (iface + 1.0) / h;
        const double nearest = std::round(idx);
        if (std::abs(iface - (-1.0 + nearest * h)) > 1e-12 || nearest < 1.0 ||
            nearest > static_cast<double>(n))
            throw InterfaceMisaligned("material interface does not sit on an interior grid point");
    }
}

double coefficient(double z, const StringGeometry& g) {
    return (z >= g.left() && z <= g.right()) ? g.eps_ratio : 1.0;
}

spectra::HermitianOperator assemble_d(std::size_t n, const StringGeometry& g) {
    g.validate();
    const Grid grid = Grid::make(n);
    grid.check_alignment(g);
    const double h = grid.h;
    const double inv_h = 1.0 / h;
    // element k spans [p_k, p_{k+1}], k = 0..n; coefficient at its midpoint
    auto element_coef = [&](std::size_t k) {
        const double midpoint = -1.0 + static_cast<double>(k) * h + 0.5 * h;
        return coefficient(midpoint, g);
    };
    ComplexMatrix m(n);
    for (std::size_t i = 1; i <= n; ++i) {
        m.at(i - 1, i - 1) = -inv_h / element_coef(i - 1) - inv_h / element_coef(i);
        if (i < n) {
            const double off = inv_h / element_coef(i);
            m.at(i - 1, i) = off;
            m.at(i, i - 1) = off;
        }
    }
    return spectra::HermitianOperator::from_dense(std::move(m));
}

namespace {

struct Branches {
    double k_outer, k_inner, alpha, beta, value_b, deriv_b_over_eps;
};

Branches middle_branch(double lambda, const StringGeometry& g) {
    Branches br{};
    br.k_outer = std::sqrt(-lambda);
    br.k_inner = std::sqrt(-lambda * g.eps_ratio);
    const double a = g.left();
    const double b = g.right();
    br.beta = std::sin(br.k_outer * (a + 1.0));
    // flux continuity of Phi'/eps_r: Phi'_in(a) = eps * Phi'_out(a)
    br.alpha = g.eps_ratio * br.k_outer * std::cos(br.k_outer * (a + 1.0)) / br.k_inner;
    const double arg = br.k_inner * (b - a);
    br.value_b = br.alpha * std::sin(arg) + br.beta * std::cos(arg);
    const double deriv_b = br.k_inner * (br.alpha * std::cos(arg) - br.beta * std::sin(arg));
    br.deriv_b_over_eps = deriv_b / g.eps_ratio;
    return br;
}

} // namespace

double matching_determinant(double lambda, const StringGeometry& g) {
    const Branches br = middle_branch(lambda, g);
    const double b = g.right();
    // right segment gamma sin(k_out(1-z)): value and flux must both match
    return br.value_b * (-br.k_outer * std::cos(br.k_outer * (1.0 - b))) -
           std::sin(br.k_outer * (1.0 - b)) * br.deriv_b_over_eps;
}

double ModeSolution::evaluate(double z) const {
    const double a = geometry.left();
    const double b = geometry.right();
    double v;
    if (z <= a)
        v = std::sin(k_outer * (z + 1.0));
    else if (z <= b)
        v = alpha * std::sin(k_inner * (z - a)) + beta * std::cos(k_inner * (z - a));
    else
        v = gamma * std::sin(k_outer * (1.0 - z));
    return scale * v;
}

ModeSolution semianalytic_fundamental(const StringGeometry& g) {
    g.validate();
    const double lo = -10.0 * M_PI * M_PI / 4.0;
    const double hi = -1e-6;
    const int subdivisions = 10000;

    double bracket_lo = 0.0, bracket_hi = 0.0;
    double prev_lambda = hi;
    double prev_f = matching_determinant(hi, g);
    bool found = false;
    for (int s = 1; s <= subdivisions; ++s) {
        const double lambda = hi + (lo - hi) * static_cast<double>(s) / subdivisions;
        const double f = matching_determinant(lambda, g);
        if ((prev_f < 0.0) != (f < 0.0) || f == 0.0) {
            bracket_hi = prev_lambda; // closer to zero
            bracket_lo = lambda;
            found = true;
            break;
        }
        prev_lambda = lambda;
        prev_f = f;
    }
    if (!found) throw NoBracket("matching determinant does not change sign on the scan range");

    double x1 = bracket_lo, x2 = bracket_hi;
    double f1 = matching_determinant(x1, g);
    while (std::abs(x2 - x1) > 1e-12) {
        const double xm = 0.5 * (x1 + x2);
        const double fm = matching_determinant(xm, g);
        if ((fm < 0.0) == (f1 < 0.0)) {
            x1 = xm;
            f1 = fm;
        } else {
            x2 = xm;
        }
    }
    const double root = 0.5 * (x1 + x2);

    ModeSolution mode;
    mode.lambda = root;
    mode.geometry = g;
    const Branches br = middle_branch(root, g);
    mode.k_outer = br.k_outer;
    mode.k_inner = br.k_inner;
    mode.alpha = br.alpha;
    mode.beta = br.beta;
    const double sin_right = std::sin(br.k_outer * (1.0 - g.right()));
    if (std::abs(sin_right) > 1e-9)
        mode.gamma = br.value_b / sin_right;
    else
        mode.gamma = br.deriv_b_over_eps / (-br.k_outer * std::cos(br.k_outer * (1.0 - g.right())));
    mode.scale = 1.0;

    double peak = 0.0;
    double peak_value = 0.0;
    const int probe = 4000;
    for (int i = 0; i <= probe; ++i) {
        const double z = -1.0 + 2.0 * static_cast<double>(i) / probe;
        const double v = mode.evaluate(z);
        if (std::abs(v) > peak) {
            peak = std::abs(v);
            peak_value = v;
        }
    }
    if (peak == 0.0) throw NumericalError("semi-analytic mode vanished identically");
    mode.scale = (peak_value > 0.0 ? 1.0 : -1.0) / peak;

    mode.samples.reserve(1001);
    for (int i = 0; i <= 1000; ++i) {
        const double z = -1.0 + 2.0 * static_cast<double>(i) / 1000.0;
        mode.samples.emplace_back(z, mode.evaluate(z));
    }
    return mode;
}

std::vector<double> discretize_mode(const ModeSolution& mode, const Grid& grid) {
    std::vector<double> values(grid.n);
    double norm = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        values[i] = mode.evaluate(grid.points[i]);
        norm += values[i] * values[i];
    }
    norm = std::sqrt(norm);
    if (norm > 0.0)
        for (auto& v : values) v /= norm;
    return values;
}

PipelineReport elasticity_pipeline(std::size_t n, const StringGeometry& g, unsigned clock_bits,
                                   Rng& rng, groundstate::Mode mode, double nu) {
    if (clock_bits < 1) throw InvalidInput("pipeline: need at least one clock bit");
    PipelineReport report;
    report.n = n;
    report.geometry = g;
    report.clock_bits = clock_bits;

    const auto d = assemble_d(n, g);
    const auto& eig = d.eigensystem();
    report.lambda_min_exact = eig.eigenvalues.front();
    report.lambda_min_magnitude_exact = *std::min_element(
        eig.eigenvalues.begin(), eig.eigenvalues.end(),
        [](double x, double y) { return std::abs(x) < std::abs(y); });

    report.gershgorin = spectra::gershgorin_bound(d);
    const double eps_internal = std::ldexp(1.0, -static_cast<int>(clock_bits));
    report.resolution = 2.0 * report.gershgorin * eps_internal;

    spectra::QueryLedger ledger;
    auto general =
        eigensearch::estimate_general(d, report.resolution, report.gershgorin, nu, rng, &ledger);
    report.estimate = general.estimate;
    report.abs_error = std::abs(report.estimate - report.lambda_min_exact);
    report.estimation = general.internal;

    // theta0 at quarter precision on the same rescaled operator
    auto [h_prime, map] = spectra::rescale_operator(d, report.gershgorin);
    const double eps_quarter = 0.25 * eps_internal;
    const auto params4 = eigensearch::derive_params(n, eps_quarter, nu);
    const auto theta_run =
        eigensearch::eigenvalue_estimation(h_prime, eps_quarter, params4, rng, &ledger);
    report.theta0_internal = theta_run.estimate;

    groundstate::PrepareOptions opts;
    opts.mode = mode;
    opts.ledger = &ledger;
    const auto prepared =
        groundstate::prepare_rho(h_prime, eps_internal, report.theta0_internal, opts, rng);
    report.p_good = prepared.p_good;

    const auto rho_exact = numerics::DensityMatrix::pure(eig.eigenvector(0));
    report.fidelity_vs_exact = numerics::fidelity(prepared.rho, rho_exact);
    const auto projector = groundstate::projector_low_energy(d, report.resolution);
    report.pi_overlap = groundstate::overlap(prepared.rho, projector);
    report.rho_entries = prepared.rho.matrix().entries();

    const Grid grid = Grid::make(n);
    const auto semi = semianalytic_fundamental(g);
    report.semianalytic_lambda = semi.lambda;
    report.grid_z = grid.points;
    report.mode_semianalytic = discretize_mode(semi, grid);

    // FEM fundamental = smallest-|lambda| eigenvector, unit norm, sign-aligned
    std::size_t fundamental = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (std::abs(eig.eigenvalues[j]) < std::abs(eig.eigenvalues[fundamental])) fundamental = j;
    const auto fem_vec = eig.eigenvector(fundamental);
    report.mode_fem.resize(n);
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        report.mode_fem[i] = fem_vec[i].real();
        dot += report.mode_fem[i] * report.mode_semianalytic[i];
    }
    if (dot < 0.0)
        for (auto& v : report.mode_fem) v = -v;
    report.mode_overlap = std::abs(dot);

    report.ledger = spectra::snapshot(ledger);
    return report;
}

} // namespace qeigen::elasticity
