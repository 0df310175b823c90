// Command-line surface: seeded experiment drivers over the library, emitting
// CSV/JSON with a config header in every file. Exit codes: 0 success,
// 2 validation error, 3 numerical failure.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qeigen/elasticity.hpp"
#include "qeigen/errors.hpp"
#include "qeigen/matrix_io.hpp"
#include "qeigen/output.hpp"
#include "qeigen/version.hpp"

namespace {

using nlohmann::ordered_json;
using namespace qeigen;

ordered_json json_header(const out::RunConfig& config) {
    ordered_json j;
    j["tool"] = kToolName;
    j["version"] = kVersion;
    j["config"] = {{"seed", config.seed},     {"epsilon_bits", config.epsilon_bits},
                   {"k", config.k},           {"nu", config.nu},
                   {"backend", config.backend}, {"mode", config.mode}};
    return j;
}

ordered_json params_json(const eigensearch::SearchParams& p) {
    return {{"n", p.matrix_dim}, {"m", p.precision_bits}, {"k", p.k},
            {"delta", p.delta},  {"M", p.qae_grid},       {"q", p.threshold},
            {"t", p.clock_bits}, {"c", p.copies},         {"r", p.repeats},
            {"nu", p.nu}};
}

ordered_json ledger_json(const spectra::LedgerSnapshot& s) {
    return {{"oracle_queries", s.oracle_queries}, {"a_applications", s.a_applications}};
}

ordered_json rho_json(std::size_t dim, const std::vector<cplx>& entries) {
    ordered_json rows = ordered_json::array();
    for (const auto& e : entries) rows.push_back({e.real(), e.imag()});
    return {{"dim", dim}, {"format", "dense"}, {"entries", rows}};
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        out::write_text_file(path, content);
}

std::string trace_csv(const out::RunConfig& config, const eigensearch::EstimationResult& result) {
    out::CsvWriter csv(config);
    csv.header("i,y_prev,p_tilde,decision,y");
    for (const auto& step : result.trace.steps)
        csv.row(step.index, step.y_prev, step.p_tilde,
                step.decision == eigensearch::Decision::Lower ? "lower" : "upper", step.y);
    return csv.str();
}

int cmd_qpe(double phase, unsigned bits, unsigned copies, const std::string& out_path) {
    out::RunConfig config;
    config.epsilon_bits = bits;
    const auto pmf = qpe::median_distribution(qpe::qpe_distribution(phase, bits), copies);
    out::CsvWriter csv(config);
    csv.comment("phase=" + out::format_double(phase) + ",bits=" + std::to_string(bits) +
                ",copies=" + std::to_string(copies));
    csv.header("x_value,prob");
    const double bins = static_cast<double>(pmf.size());
    for (std::size_t x = 0; x < pmf.size(); ++x)
        csv.row(static_cast<double>(x) / bins, pmf[x]);
    emit(out_path, csv.str());
    return 0;
}

int cmd_estimate(const std::string& matrix_path, unsigned epsilon_bits, std::uint64_t seed,
                 const std::string& rescale, double nu, unsigned k, const std::string& out_path,
                 const std::string& trace_path) {
    out::RunConfig config;
    config.seed = seed;
    config.epsilon_bits = epsilon_bits;
    config.nu = nu;
    config.k = k;

    const auto loaded = io::parse_matrix_file(matrix_path);
    Rng rng(seed);
    spectra::QueryLedger ledger;
    const double eps = std::ldexp(1.0, -static_cast<int>(epsilon_bits));

    ordered_json j = json_header(config);
    if (loaded.bond_length_angstrom) j["bond_length_angstrom"] = *loaded.bond_length_angstrom;

    eigensearch::EstimationResult internal;
    if (rescale == "auto") {
        const double bound = spectra::gershgorin_bound(loaded.op);
        // requested epsilon applies to the original spectrum
        auto general = eigensearch::estimate_general(loaded.op, eps, bound, nu, rng, &ledger, k);
        internal = general.internal;
        j["estimate"] = general.estimate;
        j["rescale"] = {{"norm_estimate", bound},
                        {"factor", general.map.factor},
                        {"internal_estimate", general.internal.estimate}};
    } else if (rescale == "none") {
        auto params = eigensearch::derive_params(loaded.op.dim(), eps, nu, k);
        internal = eigensearch::eigenvalue_estimation(loaded.op, eps, params, rng, &ledger);
        j["estimate"] = internal.estimate;
    } else {
        throw InvalidInput("--rescale must be auto or none");
    }
    j["epsilon"] = eps;
    j["params"] = params_json(internal.params);
    j["ledger"] = ledger_json(internal.ledger);
    emit(out_path, j.dump(2) + "\n");
    if (!trace_path.empty()) out::write_text_file(trace_path, trace_csv(config, internal));
    return 0;
}

int cmd_converge(std::size_t n, unsigned epsilon_bits, unsigned trials, std::uint64_t seed,
                 double nu, const std::string& out_path) {
    out::RunConfig config;
    config.seed = seed;
    config.epsilon_bits = epsilon_bits;
    config.nu = nu;

    const double eps = std::ldexp(1.0, -static_cast<int>(epsilon_bits));
    const auto params = eigensearch::derive_params(n, eps, nu);
    const unsigned m = params.precision_bits;

    std::vector<double> avg(m + 1, 0.0);
    std::vector<double> worst(m + 1, 0.0);

    out::CsvWriter csv(config);
    csv.comment("n=" + std::to_string(n) + ",trials=" + std::to_string(trials));
    csv.header("series,trial,step,value");
    for (unsigned trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_stream(seed, trial);
        ComplexMatrix diag(n);
        std::vector<double> eigs(n);
        for (auto& lambda : eigs) lambda = eps + (1.0 - 2.0 * eps) * rng.next_double();
        for (std::size_t i = 0; i < n; ++i) diag.at(i, i) = eigs[i];
        const double lambda0 = *std::min_element(eigs.begin(), eigs.end());
        const auto op = spectra::HermitianOperator::from_dense(std::move(diag));
        spectra::QueryLedger ledger;
        const auto result = eigensearch::eigenvalue_estimation(op, eps, params, rng, &ledger);

        const double e0 = std::abs(0.5 - lambda0);
        csv.row("trial", trial, 0u, e0);
        avg[0] += e0;
        worst[0] = std::max(worst[0], e0);
        for (const auto& step : result.trace.steps) {
            const double err = std::abs(step.y - lambda0);
            csv.row("trial", trial, step.index, err);
            avg[step.index] += err;
            worst[step.index] = std::max(worst[step.index], err);
        }
    }
    for (unsigned i = 0; i <= m; ++i)
        csv.row("average", -1, i, avg[i] / static_cast<double>(trials));
    for (unsigned i = 0; i <= m; ++i) csv.row("maximum", -1, i, worst[i]);
    for (unsigned i = 0; i <= m; ++i)
        csv.row("envelope", -1, i, std::ldexp(1.0, -static_cast<int>(i) - 1) + 0.5 * eps);
    emit(out_path, csv.str());
    return 0;
}

int cmd_elasticity(std::size_t n, double z0, double d, double eps_r, unsigned clock_bits,
                   std::uint64_t seed, const std::string& mode, double nu,
                   const std::string& prefix) {
    out::RunConfig config;
    config.seed = seed;
    config.epsilon_bits = clock_bits;
    config.nu = nu;
    config.mode = mode;
    config.backend = mode == "grover" ? "faithful" : "structured";

    const auto gs_mode =
        mode == "grover" ? groundstate::Mode::Grover : groundstate::Mode::Postselect;
    if (mode != "grover" && mode != "postselect")
        throw InvalidInput("--mode must be postselect or grover");

    elasticity::StringGeometry geometry{z0, d, eps_r};
    Rng rng(seed);
    out::log_info("running elasticity pipeline, n=" + std::to_string(n));
    const auto report = elasticity::elasticity_pipeline(n, geometry, clock_bits, rng, gs_mode, nu);

    ordered_json j = json_header(config);
    j["geometry"] = {{"z0", z0}, {"d", d}, {"eps_r", eps_r}};
    j["n"] = n;
    j["clock_bits"] = clock_bits;
    j["gershgorin"] = report.gershgorin;
    j["lambda_min_exact"] = report.lambda_min_exact;
    j["lambda_min_magnitude_exact"] = report.lambda_min_magnitude_exact;
    j["estimate"] = report.estimate;
    j["abs_error"] = report.abs_error;
    j["resolution"] = report.resolution;
    j["theta0_internal"] = report.theta0_internal;
    j["p_good"] = report.p_good;
    j["fidelity_vs_exact"] = report.fidelity_vs_exact;
    j["pi_overlap"] = report.pi_overlap;
    j["semianalytic_lambda"] = report.semianalytic_lambda;
    j["mode_overlap"] = report.mode_overlap;
    j["params"] = params_json(report.estimation.params);
    j["ledger"] = ledger_json(report.ledger);
    out::write_text_file(prefix + "_report.json", j.dump(2) + "\n");

    out::CsvWriter csv(config);
    csv.header("z,phi_semianalytic,phi_fem");
    for (std::size_t i = 0; i < report.grid_z.size(); ++i)
        csv.row(report.grid_z[i], report.mode_semianalytic[i], report.mode_fem[i]);
    csv.write_file(prefix + "_mode.csv");

    ordered_json rj = json_header(config);
    rj["rho"] = rho_json(n, report.rho_entries);
    out::write_text_file(prefix + "_rho.json", rj.dump(2) + "\n");
    return 0;
}

int cmd_groundstate(const std::string& matrix_path, unsigned epsilon_bits, const std::string& mode,
                    std::uint64_t seed, double nu, unsigned copies_override,
                    const std::string& out_path) {
    out::RunConfig config;
    config.seed = seed;
    config.epsilon_bits = epsilon_bits;
    config.nu = nu;
    config.mode = mode;
    config.backend = mode == "grover" ? "faithful" : "structured";
    if (mode != "grover" && mode != "postselect")
        throw InvalidInput("--mode must be postselect or grover");

    const auto loaded = io::parse_matrix_file(matrix_path);
    const double eps = std::ldexp(1.0, -static_cast<int>(epsilon_bits));
    if (!spectra::eigenvalue_window_check(loaded.op, eps))
        throw InvalidInput("matrix spectrum must lie in (epsilon, 1 - epsilon); "
                           "use `estimate --rescale auto` for general spectra");

    Rng rng(seed);
    spectra::QueryLedger ledger;
    const auto params4 = eigensearch::derive_params(loaded.op.dim(), 0.25 * eps, nu);
    const auto theta_run =
        eigensearch::eigenvalue_estimation(loaded.op, 0.25 * eps, params4, rng, &ledger);

    groundstate::PrepareOptions opts;
    opts.mode = mode == "grover" ? groundstate::Mode::Grover : groundstate::Mode::Postselect;
    opts.copies_override = copies_override;
    opts.ledger = &ledger;
    const auto prepared = groundstate::prepare_rho(loaded.op, eps, theta_run.estimate, opts, rng);

    const auto& eig = loaded.op.eigensystem();
    const auto rho_exact = numerics::DensityMatrix::pure(eig.eigenvector(0));
    const auto projector = groundstate::projector_low_energy(loaded.op, eps);

    ordered_json j = json_header(config);
    j["epsilon"] = eps;
    j["theta0"] = theta_run.estimate;
    j["p_good"] = prepared.p_good;
    j["trace_pi_rho"] = groundstate::overlap(prepared.rho, projector);
    j["fidelity_vs_ground"] = numerics::fidelity(prepared.rho, rho_exact);
    j["window_mass"] = prepared.window_mass;
    j["grover_iterations"] = prepared.grover_iterations;
    j["attempts"] = prepared.attempts;
    j["ledger"] = ledger_json(spectra::snapshot(ledger));
    j["rho"] = rho_json(prepared.rho.dim(), prepared.rho.matrix().entries());
    emit(out_path, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolName) + " " + kVersion +
                 " - smallest-eigenvalue estimation experiments"};
    app.require_subcommand(1);

    // qpe
    double phase = 0.0;
    unsigned bits = 6, copies = 1;
    std::string qpe_out;
    auto* qpe_cmd = app.add_subcommand("qpe", "eigenvalue-register outcome distribution");
    qpe_cmd->add_option("--phase", phase, "phase in [0,1)")->required();
    qpe_cmd->add_option("--bits", bits, "clock bits t")->required();
    qpe_cmd->add_option("--copies", copies, "odd median copy count");
    qpe_cmd->add_option("--out", qpe_out, "CSV path (default stdout)");

    // estimate
    std::string matrix_path, rescale = "auto", est_out, trace_out;
    unsigned epsilon_bits = 5, k = 537;
    std::uint64_t seed = 0;
    double nu = 0.9;
    auto* est = app.add_subcommand("estimate", "smallest-eigenvalue binary search");
    est->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    est->add_option("--epsilon-bits", epsilon_bits, "precision bits m")->required();
    est->add_option("--seed", seed, "rng seed");
    est->add_option("--rescale", rescale, "auto | none");
    est->add_option("--nu", nu, "overall success target");
    est->add_option("--k", k, "QAE constant (>= 537)");
    est->add_option("--out", est_out, "JSON path (default stdout)");
    est->add_option("--trace-out", trace_out, "CSV trace path");

    // converge
    std::size_t conv_n = 8;
    unsigned conv_bits = 6, conv_trials = 1000;
    std::uint64_t conv_seed = 0;
    double conv_nu = 0.9;
    std::string conv_out;
    auto* conv = app.add_subcommand("converge", "per-step error sweep over random diagonals");
    conv->add_option("--n", conv_n, "matrix dimension (power of two)");
    conv->add_option("--epsilon-bits", conv_bits, "precision bits m");
    conv->add_option("--trials", conv_trials, "number of seeded trials");
    conv->add_option("--seed", conv_seed, "rng seed");
    conv->add_option("--nu", conv_nu, "overall success target");
    conv->add_option("--out", conv_out, "CSV path (default stdout)");

    // elasticity
    std::size_t el_n = 16;
    double z0 = -6.0 / 17.0, width = 10.0 / 17.0, eps_r = 5.0;
    unsigned clock_bits = 5;
    std::uint64_t el_seed = 0;
    double el_nu = 0.9;
    std::string el_mode = "postselect", el_prefix = "elasticity";
    auto* el = app.add_subcommand("elasticity", "composite-string pipeline");
    el->add_option("--n", el_n, "interior grid points (power of two)");
    el->add_option("--z0", z0, "insert center");
    el->add_option("--d", width, "insert width");
    el->add_option("--eps-r", eps_r, "coefficient ratio");
    el->add_option("--clock-bits", clock_bits, "precision bits for the search");
    el->add_option("--seed", el_seed, "rng seed");
    el->add_option("--mode", el_mode, "postselect | grover");
    el->add_option("--nu", el_nu, "overall success target");
    el->add_option("--out", el_prefix, "output prefix");

    // groundstate
    std::string gs_matrix, gs_mode = "postselect", gs_out;
    unsigned gs_bits = 5, gs_copies = 0;
    std::uint64_t gs_seed = 0;
    double gs_nu = 0.9;
    auto* gs = app.add_subcommand("groundstate", "low-energy state preparation");
    gs->add_option("--matrix", gs_matrix, "matrix JSON file (spectrum already in window)")
        ->required();
    gs->add_option("--epsilon-bits", gs_bits, "window precision bits m")->required();
    gs->add_option("--mode", gs_mode, "postselect | grover");
    gs->add_option("--seed", gs_seed, "rng seed");
    gs->add_option("--nu", gs_nu, "overall success target");
    gs->add_option("--copies", gs_copies, "override median copy count (grover mode)");
    gs->add_option("--out", gs_out, "JSON path (default stdout)");

    try {
        app.parse(argc, argv);
        if (qpe_cmd->parsed()) return cmd_qpe(phase, bits, copies, qpe_out);
        if (est->parsed())
            return cmd_estimate(matrix_path, epsilon_bits, seed, rescale, nu, k, est_out,
                                trace_out);
        if (conv->parsed())
            return cmd_converge(conv_n, conv_bits, conv_trials, conv_seed, conv_nu, conv_out);
        if (el->parsed())
            return cmd_elasticity(el_n, z0, width, eps_r, clock_bits, el_seed, el_mode, el_nu,
                                  el_prefix);
        if (gs->parsed())
            return cmd_groundstate(gs_matrix, gs_bits, gs_mode, gs_seed, gs_nu, gs_copies, gs_out);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const ValidationError& e) {
        out::log(out::LogLevel::Error, e.what());
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
