// Drives the built binary end to end: flag surface, file outputs, exit
// codes, and byte-level reproducibility.

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qeigen/output.hpp"

#ifndef QEIGEN_CLI_PATH
#error "QEIGEN_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qeigen_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(QEIGEN_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

// value of the `column`-th field in the first data row whose first field is
// `key` (comment lines skipped)
double csv_lookup(const std::string& text, const std::string& key, int column) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string field;
        std::getline(fields, field, ',');
        if (field != key) continue;
        for (int i = 1; i < column; ++i) std::getline(fields, field, ',');
        std::getline(fields, field, ',');
        return std::stod(field);
    }
    return std::nan("");
}

} // namespace

TEST_CASE("qpe command reproduces the reference rows") {
    TempDir tmp;
    const std::string out = tmp.file("qpe.csv");
    REQUIRE(run_cli("qpe --phase 0.37890625 --bits 6 --copies 1 --out " + out) == 0);
    const std::string text = slurp(out);
    CHECK(csv_lookup(text, "0.375", 1) == doctest::Approx(0.810610160468473).epsilon(1e-9));

    REQUIRE(run_cli("qpe --phase 0.37890625 --bits 6 --copies 5 --out " + out) == 0);
    CHECK(csv_lookup(slurp(out), "0.375", 1) == doctest::Approx(0.980269170094100).epsilon(1e-9));

    REQUIRE(run_cli("qpe --phase 0.375 --bits 6 --copies 1 --out " + out) == 0);
    CHECK(csv_lookup(slurp(out), "0.375", 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("estimate command: diagonal fixture, trace, reproducibility") {
    TempDir tmp;
    const std::string matrix = tmp.file("diag.json");
    write_file(matrix, R"({"dim": 4, "format": "coo",
        "entries": [[0,0,0.31,0],[1,1,0.55,0],[2,2,0.72,0],[3,3,0.9,0]]})");
    const std::string out = tmp.file("est.json");
    const std::string trace = tmp.file("trace.csv");

    REQUIRE(run_cli("estimate --matrix " + matrix +
                    " --epsilon-bits 5 --seed 7 --rescale none --out " + out + " --trace-out " +
                    trace) == 0);
    const auto j = json::parse(slurp(out));
    CHECK(std::abs(j["estimate"].get<double>() - 0.31) <= 1.0 / 32.0);
    CHECK(j["params"]["M"].get<int>() == 50);
    CHECK(j["ledger"]["a_applications"].get<long long>() > 0);

    const std::string trace_text = slurp(trace);
    CHECK(trace_text.find("i,y_prev,p_tilde,decision,y") != std::string::npos);
    CHECK(trace_text.find("seed=7") != std::string::npos);

    // byte-identical on repeat
    const std::string out2 = tmp.file("est2.json");
    REQUIRE(run_cli("estimate --matrix " + matrix +
                    " --epsilon-bits 5 --seed 7 --rescale none --out " + out2 + " --trace-out " +
                    tmp.file("trace2.csv")) == 0);
    CHECK(slurp(out) == slurp(out2));
    CHECK(trace_text == slurp(tmp.file("trace2.csv")));
}

TEST_CASE("estimate command auto-rescales general spectra") {
    TempDir tmp;
    const std::string matrix = tmp.file("gen.json");
    write_file(matrix, R"({"dim": 2, "format": "dense",
        "entries": [[-0.8,0],[0.3,0],[0.3,0],[0.5,0]]})");
    const std::string out = tmp.file("gen_out.json");
    REQUIRE(run_cli("estimate --matrix " + matrix + " --epsilon-bits 4 --seed 3 --out " + out) ==
            0);
    const auto j = json::parse(slurp(out));
    // exact smallest eigenvalue of [[-0.8, 0.3], [0.3, 0.5]]
    const double lambda0 = (-0.3 - std::sqrt(1.69 + 0.36)) / 2.0;
    CHECK(std::abs(j["estimate"].get<double>() - lambda0) <= j["epsilon"].get<double>());
    CHECK(j["rescale"]["norm_estimate"].get<double>() == doctest::Approx(1.1));
}

TEST_CASE("estimate command propagates file errors as exit code 2") {
    CHECK(run_cli("estimate --matrix /does/not/exist.json --epsilon-bits 4") == 2);
    TempDir tmp;
    const std::string bad = tmp.file("bad.json");
    write_file(bad, R"({"dim": 3, "format": "dense", "entries": []})");
    CHECK(run_cli("estimate --matrix " + bad + " --epsilon-bits 4") == 2);
}

TEST_CASE("converge command emits trials plus aggregates below the envelope") {
    TempDir tmp;
    const std::string out = tmp.file("conv.csv");
    REQUIRE(run_cli("converge --n 8 --epsilon-bits 6 --trials 20 --seed 11 --out " + out) == 0);
    const std::string text = slurp(out);
    std::istringstream in(text);
    std::string line;
    int trial_rows = 0;
    double max_at[7] = {0};
    double env_at[7] = {0};
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 's') continue;
        std::istringstream fields(line);
        std::string series, trial, step, value;
        std::getline(fields, series, ',');
        std::getline(fields, trial, ',');
        std::getline(fields, step, ',');
        std::getline(fields, value, ',');
        if (series == "trial") ++trial_rows;
        if (series == "maximum") max_at[std::stoi(step)] = std::stod(value);
        if (series == "envelope") env_at[std::stoi(step)] = std::stod(value);
    }
    CHECK(trial_rows == 20 * 7);
    for (int i = 0; i <= 6; ++i) CHECK(max_at[i] <= env_at[i]);

    const std::string out2 = tmp.file("conv2.csv");
    REQUIRE(run_cli("converge --n 8 --epsilon-bits 6 --trials 20 --seed 11 --out " + out2) == 0);
    CHECK(text == slurp(out2));

    const std::string single = tmp.file("conv1.csv");
    REQUIRE(run_cli("converge --n 8 --epsilon-bits 6 --trials 1 --seed 11 --out " + single) == 0);
    std::istringstream sin(slurp(single));
    int rows = 0;
    while (std::getline(sin, line))
        if (!line.empty() && line.rfind("trial,", 0) == 0) ++rows;
    CHECK(rows == 7);
}

TEST_CASE("elasticity command writes report, mode shape and rho") {
    TempDir tmp;
    const std::string prefix = tmp.file("string");
    REQUIRE(run_cli("elasticity --n 16 --clock-bits 5 --seed 1 --out " + prefix) == 0);
    const auto report = json::parse(slurp(prefix + "_report.json"));
    CHECK(std::abs(report["lambda_min_exact"].get<double>() + 33.09) <= 0.02);
    CHECK(report["fidelity_vs_exact"].get<double>() >= 0.999);
    CHECK(report["mode_overlap"].get<double>() >= 0.99);

    const std::string mode_csv = slurp(prefix + "_mode.csv");
    CHECK(mode_csv.find("z,phi_semianalytic,phi_fem") != std::string::npos);

    const auto rho = json::parse(slurp(prefix + "_rho.json"));
    CHECK(rho["rho"]["dim"].get<int>() == 16);
    CHECK(rho["rho"]["entries"].size() == 256);

    CHECK(run_cli("elasticity --n 16 --z0 -0.31 --clock-bits 4 --seed 1 --out " +
                  tmp.file("bad")) == 2);

    // homogeneous ratio: minimum matches the Toeplitz closed form
    const std::string homog = tmp.file("homog");
    REQUIRE(run_cli("elasticity --n 16 --eps-r 1 --clock-bits 5 --seed 1 --out " + homog) == 0);
    const auto hrep = json::parse(slurp(homog + "_report.json"));
    CHECK(hrep["lambda_min_exact"].get<double>() ==
          doctest::Approx(-17.0 * (1.0 + std::cos(M_PI / 17.0))).epsilon(1e-9));
}

TEST_CASE("groundstate command reports the overlap contract") {
    TempDir tmp;
    const std::string matrix = tmp.file("gs.json");
    write_file(matrix, R"({"dim": 4, "format": "coo",
        "entries": [[0,0,0.22,0],[1,1,0.47,0],[2,2,0.68,0],[3,3,0.91,0]]})");
    const std::string out = tmp.file("gs_out.json");
    REQUIRE(run_cli("groundstate --matrix " + matrix + " --epsilon-bits 4 --seed 5 --out " + out) ==
            0);
    const auto j = json::parse(slurp(out));
    CHECK(j["trace_pi_rho"].get<double>() > 2.0 / 3.0);
    CHECK(j["fidelity_vs_ground"].get<double>() > 0.9);
    CHECK(std::abs(j["theta0"].get<double>() - 0.22) <= 1.0 / 64.0);

    // grover backend agrees with postselection on a tiny windowed instance
    const std::string tiny = tmp.file("tiny.json");
    write_file(tiny, R"({"dim": 4, "format": "coo",
        "entries": [[0,0,0.28,0],[1,1,0.47,0],[2,2,0.58,0],[3,3,0.71,0]]})");
    const std::string out_g = tmp.file("gs_grover.json");
    REQUIRE(run_cli("groundstate --matrix " + tiny +
                    " --epsilon-bits 2 --mode grover --copies 1 --seed 5 --out " + out_g) == 0);
    const std::string out_p = tmp.file("gs_post.json");
    REQUIRE(run_cli("groundstate --matrix " + tiny +
                    " --epsilon-bits 2 --mode postselect --copies 1 --seed 5 --out " + out_p) == 0);
    const auto jg = json::parse(slurp(out_g));
    const auto jp = json::parse(slurp(out_p));
    const auto& eg = jg["rho"]["entries"];
    const auto& ep = jp["rho"]["entries"];
    REQUIRE(eg.size() == ep.size());
    double diff = 0.0;
    for (std::size_t i = 0; i < eg.size(); ++i) {
        diff = std::max(diff, std::abs(eg[i][0].get<double>() - ep[i][0].get<double>()));
        diff = std::max(diff, std::abs(eg[i][1].get<double>() - ep[i][1].get<double>()));
    }
    CHECK(diff <= 1e-8);

    // spectrum outside the window is a validation error
    const std::string wide = tmp.file("wide.json");
    write_file(wide, R"({"dim": 2, "format": "dense",
        "entries": [[-0.5,0],[0,0],[0,0],[0.5,0]]})");
    CHECK(run_cli("groundstate --matrix " + wide + " --epsilon-bits 4") == 2);
}
