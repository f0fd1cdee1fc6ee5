#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string cli = THERMOAC_CLI_PATH;
const fs::path source_dir = THERMOAC_SOURCE_DIR;

int run_cmd(const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string run_capture(const std::string& args) {
    const fs::path tmp = fs::temp_directory_path() / "thermoac_cli_capture.txt";
    const std::string cmd = cli + " " + args + " >" + tmp.string() + " 2>/dev/null";
    [[maybe_unused]] const int status = std::system(cmd.c_str());
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("cli run writes the expected files for a short case") {
    const fs::path dir = fresh_dir("thermoac_cli_run");
    const fs::path config = dir / "short.case";
    {
        std::ofstream out(config);
        out << "case_name = short\ngamma = 12.868\nB = 41.744\nEc_a = 0.007\n"
               "Pe_a = 1e5\nRe_a = inf\nr_eta = 0\nT0_hat = 1.0028672138047139\n"
               "rho0_hat = 0.68666167664670663\nN = 50\nCo = 0.95\nt_end_hat = 3\n"
               "pulse_q_hat = 0.001\npulse_tP_hat = 0.1\nintegrator = splitting\n"
               "snapshot_times = 1.5\n";
    }
    const int code = run_cmd("run --config " + config.string() + " --out " +
                             (dir / "out").string() + " --quiet");
    CHECK(code == 0);
    CHECK(fs::exists(dir / "out" / "probes.csv"));
    CHECK(fs::exists(dir / "out" / "ledger.csv"));
    CHECK(fs::exists(dir / "out" / "summary.csv"));
    CHECK(fs::exists(dir / "out" / "snapshot_1.5.csv"));
    const std::string probes = slurp(dir / "out" / "probes.csv");
    CHECK(probes.rfind("t_hat,", 0) == 0);
}

TEST_CASE("cli run is byte-deterministic") {
    const fs::path dir = fresh_dir("thermoac_cli_det");
    const fs::path config = source_dir / "data" / "cases" / "wave_pe1e5.case";
    REQUIRE(fs::exists(config));
    // Shorten the shipped case through a copy to keep the test quick.
    const fs::path short_config = dir / "wave_short.case";
    {
        std::ifstream in(config);
        std::ofstream out(short_config);
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("t_end_hat", 0) == 0) line = "t_end_hat = 2";
            if (line.rfind("snapshot_times", 0) == 0) line = "snapshot_times = 1";
            out << line << "\n";
        }
    }
    const int c1 = run_cmd("run --config " + short_config.string() + " --out " +
                           (dir / "a").string() + " --quiet");
    const int c2 = run_cmd("run --config " + short_config.string() + " --out " +
                           (dir / "b").string() + " --quiet");
    REQUIRE(c1 == 0);
    REQUIRE(c2 == 0);
    for (const std::string name : {"probes.csv", "ledger.csv", "summary.csv", "snapshot_1.csv"}) {
        CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
        CHECK(!slurp(dir / "a" / name).empty());
    }
}

TEST_CASE("cli rejects a malformed config without writing partial files") {
    const fs::path dir = fresh_dir("thermoac_cli_bad");
    const fs::path config = dir / "bad.case";
    {
        std::ofstream out(config);
        out << "case_name = broken\nnot_a_key = 1\n";
    }
    const int code = run_cmd("run --config " + config.string() + " --out " +
                             (dir / "out").string() + " --quiet");
    CHECK(code == 3);
    CHECK(!fs::exists(dir / "out"));
    const int missing = run_cmd("run --config " + (dir / "nope.case").string() + " --out " +
                                (dir / "out2").string() + " --quiet");
    CHECK(missing == 2);
    CHECK(!fs::exists(dir / "out2"));
}

TEST_CASE("cli params reproduces the published coefficients from the table") {
    const fs::path table = source_dir / "data" / "materials.csv";
    REQUIRE(fs::exists(table));
    const std::string out = run_capture("params --table " + table.string() +
                                        " --T 305 --p 7400000 --X 0.01 --Tc 304.128 "
                                        "--rhoc 467.6 --reta 6");
    CHECK(out.find("B = 41.746") != std::string::npos);
    CHECK(out.find("Gamma0 = 0.2843") != std::string::npos);
    CHECK(out.find("Pr = 5.785") != std::string::npos);

    const int missing_row = run_cmd("params --table " + table.string() +
                                    " --T 999 --p 1 --X 0.01 --Tc 304.128 --rhoc 467.6");
    CHECK(missing_row == 3);
}

TEST_CASE("cli params reports inf for an inviscid row") {
    const fs::path dir = fresh_dir("thermoac_cli_inviscid");
    const fs::path table = dir / "inviscid.csv";
    {
        std::ofstream out(table);
        out << "T,p,rho,cp,as,betap,gamma,nu,ath\n"
               "300,100000,1.8,850,270,0.003,1.3,0,1.1e-05\n";
    }
    const std::string args = "params --table " + table.string() +
                             " --T 300 --p 100000 --X 0.01 --Tc 304.128 --rhoc 467.6";
    CHECK(run_cmd(args) == 3);  // nu = 0 needs the explicit flag
    const std::string out = run_capture(args + " --inviscid");
    CHECK(out.find("Re_a = inf") != std::string::npos);
}

TEST_CASE("cli study grid emits deviations.csv") {
    const fs::path dir = fresh_dir("thermoac_cli_grid");
    const fs::path config = dir / "grid.case";
    {
        std::ofstream out(config);
        out << "case_name = grid\ngamma = 12.868\nB = 41.744\nEc_a = 0.007\n"
               "Pe_a = 1e5\nRe_a = inf\nr_eta = 0\nT0_hat = 1.0028672138047139\n"
               "rho0_hat = 0.68666167664670663\nN = 100\nCo = 0.95\nt_end_hat = 3\n"
               "pulse_q_hat = 0.001\npulse_tP_hat = 0.1\nintegrator = splitting\n";
    }
    const int code = run_cmd("study grid --config " + config.string() + " --out " +
                             (dir / "out").string() + " --cells 20,50 --ref-cells 100 --quiet");
    CHECK(code == 0);
    const std::string csv = slurp(dir / "out" / "deviations.csv");
    CHECK(csv.rfind("field,cells,ref_cells,deviation,deviation_full_scale,degenerate", 0) == 0);
    CHECK(csv.find("\nT,20,100,") != std::string::npos);
}
