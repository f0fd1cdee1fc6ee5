#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "thermoac/config_file.hpp"
#include "thermoac/io.hpp"
#include "thermoac/studies.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitMissingFile = 2;
constexpr int kExitValidation = 3;
constexpr int kExitInstability = 4;

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    bool quiet = false;
    bool seedless = false;  // reserved: no randomness is used anywhere
};

void note(const CommonOpts& opts, const std::string& msg) {
    if (!opts.quiet) std::cerr << msg << "\n";
}

thermoac::CaseFile load_config_or_exit(const CommonOpts& opts) {
    if (!std::filesystem::exists(opts.config_path)) {
        std::cerr << "error: config file '" << opts.config_path << "' not found\n";
        std::exit(kExitMissingFile);
    }
    return thermoac::load_case_file(opts.config_path);
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

int cmd_run(const CommonOpts& opts) {
    const thermoac::CaseFile c = load_config_or_exit(opts);
    note(opts, "case '" + c.name + "': N=" + std::to_string(c.config.num_cells) +
                   ", Co=" + fmt(c.config.courant) + ", t_end=" + fmt(c.config.t_end_hat));
    const thermoac::RunResult result = thermoac::run_simulation(c.config);
    for (const auto& w : result.warnings) note(opts, "warning: " + w);
    thermoac::write_run_outputs(opts.out_dir, c.config, result);
    note(opts, "completed " + std::to_string(result.steps_completed) + " steps in " +
                   fmt(result.wall_seconds) + " s");
    if (!result.stable) {
        std::cerr << "error: run went unstable at step " << result.failed_step << " ("
                  << result.message << "); partial results written\n";
        return kExitInstability;
    }
    return kExitOk;
}

int cmd_study(const CommonOpts& opts, const std::string& kind, int levels,
              const std::vector<int>& cells, int ref_cells) {
    const thermoac::CaseFile c = load_config_or_exit(opts);
    std::filesystem::create_directories(opts.out_dir);
    const std::filesystem::path out_dir(opts.out_dir);

    if (kind == "convergence") {
        const auto result = thermoac::convergence_study(c.config, levels);
        {
            std::ofstream out(out_dir / "orders.csv", std::ios::binary);
            thermoac::write_orders_csv(out, result);
        }
        {
            std::ofstream out(out_dir / "l2_errors.csv", std::ios::binary);
            thermoac::write_l2_errors_csv(out, result);
        }
        for (const auto& [field, slope] : result.slopes)
            note(opts, "order[" + field + "] = " + fmt(slope));
    } else if (kind == "grid") {
        const auto result = thermoac::grid_study(c.config, cells, ref_cells);
        std::ofstream out(out_dir / "deviations.csv", std::ios::binary);
        thermoac::write_deviations_csv(out, result);
        for (const auto& run : result.runs)
            for (const auto& [field, dev] : run.deviation)
                note(opts, "deviation[N=" + std::to_string(run.cells) + "][" + field +
                               "] = " + fmt(dev));
    } else if (kind == "compare") {
        const auto result = thermoac::compare_integrators(c.config);
        thermoac::write_run_outputs(out_dir / "splitting", c.config, result.splitting);
        thermoac::write_run_outputs(out_dir / "rk4", c.config, result.rk4);
        std::ofstream out(out_dir / "dispersion_metrics.csv", std::ios::binary);
        thermoac::write_dispersion_csv(out, result);
        note(opts, "undershoot splitting = " + fmt(result.splitting_metrics.max_undershoot) +
                       ", rk4 = " + fmt(result.rk4_metrics.max_undershoot));
        if (!result.splitting.stable || !result.rk4.stable) {
            std::cerr << "error: a comparison run went unstable\n";
            return kExitInstability;
        }
    } else {
        std::cerr << "error: unknown study kind '" << kind << "'\n";
        return kExitValidation;
    }
    return kExitOk;
}

int cmd_params(const std::string& table_path, double T, double p, double X, double T_c,
               double rho_c, double r_eta, bool inviscid, const std::string& csv_out) {
    if (!std::filesystem::exists(table_path)) {
        std::cerr << "error: material table '" << table_path << "' not found\n";
        return kExitMissingFile;
    }
    std::ifstream in(table_path);
    const auto table = thermoac::read_material_table(in);
    const auto row = thermoac::find_material_row(table, T, p);
    if (!row) {
        std::cerr << "error: no row with T=" << fmt(T) << " and p=" << fmt(p) << " in '"
                  << table_path << "'\n";
        return kExitValidation;
    }
    const thermoac::MaterialState mat = thermoac::to_material_state(*row, T_c, rho_c, r_eta);
    const thermoac::DimensionlessParams dp =
        thermoac::derive_dimensionless(mat, X, inviscid);

    std::cout << "gamma = " << fmt(dp.gamma) << "\n";
    std::cout << "B = " << fmt(dp.B) << "\n";
    std::cout << "Gamma0 = " << fmt(dp.Gamma0) << "\n";
    std::cout << "Ec_a = " << fmt(dp.Ec_a) << "\n";
    std::cout << "Pr = " << fmt(dp.Pr) << "\n";
    std::cout << "Re_a = " << fmt(dp.Re_a) << "\n";
    std::cout << "Pe_a = " << fmt(dp.Pe_a) << "\n";
    std::cout << "gamma_over_Pr = " << fmt(dp.gamma / dp.Pr) << "\n";
    std::cout << "r_eta = " << fmt(dp.r_eta) << "\n";
    std::cout << "T0_hat = " << fmt(dp.T0_hat) << "\n";
    std::cout << "rho0_hat = " << fmt(dp.rho0_hat) << "\n";
    std::cout << "p0_hat = " << fmt(dp.p0_hat) << "\n";

    if (!csv_out.empty()) {
        std::ofstream out(csv_out, std::ios::binary);
        out << "gamma,B,Gamma0,Ec_a,Pr,Re_a,Pe_a,r_eta,T0_hat,rho0_hat,p0_hat\n";
        out << thermoac::format_float(dp.gamma) << ',' << thermoac::format_float(dp.B) << ','
            << thermoac::format_float(dp.Gamma0) << ',' << thermoac::format_float(dp.Ec_a) << ','
            << thermoac::format_float(dp.Pr) << ',' << thermoac::format_float(dp.Re_a) << ','
            << thermoac::format_float(dp.Pe_a) << ',' << thermoac::format_float(dp.r_eta) << ','
            << thermoac::format_float(dp.T0_hat) << ',' << thermoac::format_float(dp.rho0_hat)
            << ',' << thermoac::format_float(dp.p0_hat) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1-D linear thermoacoustics simulator (staggered grid, split-step integrator)"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* run = app.add_subcommand("run", "integrate one case and write CSV outputs");
    run->add_option("--config", opts.config_path, "case file")->required();
    run->add_option("--out", opts.out_dir, "output directory")->required();
    run->add_flag("--quiet", opts.quiet, "suppress progress output");
    run->add_flag("--seedless", opts.seedless, "reserved (no randomness is used)");

    std::string study_kind;
    int levels = 4;
    std::vector<int> cells = {20, 50};
    int ref_cells = 100;
    auto* study = app.add_subcommand("study", "convergence / grid-independence / comparison runs");
    study->add_option("kind", study_kind, "one of: convergence, grid, compare")->required();
    study->add_option("--config", opts.config_path, "case file")->required();
    study->add_option("--out", opts.out_dir, "output directory")->required();
    study->add_option("--levels", levels, "resolution levels (convergence)");
    study->add_option("--cells", cells, "cell counts (grid)")->delimiter(',');
    study->add_option("--ref-cells", ref_cells, "reference cell count (grid)");
    study->add_flag("--quiet", opts.quiet, "suppress progress output");
    study->add_flag("--seedless", opts.seedless, "reserved (no randomness is used)");

    std::string table_path, csv_out;
    double T = 0, p = 0, X = 1.0, T_c = 0, rho_c = 0, r_eta = 0;
    bool inviscid = false;
    auto* params = app.add_subcommand("params", "dimensionless groups from a property table");
    params->add_option("--table", table_path, "CSV property table")->required();
    params->add_option("--T", T, "temperature of the row to select [K]")->required();
    params->add_option("--p", p, "pressure of the row to select [Pa]")->required();
    params->add_option("--X", X, "pipe length [m]")->required();
    params->add_option("--Tc", T_c, "critical temperature [K]")->required();
    params->add_option("--rhoc", rho_c, "critical density [kg/m^3]")->required();
    params->add_option("--reta", r_eta, "bulk-to-shear viscosity ratio");
    params->add_flag("--inviscid", inviscid, "accept nu = 0 (reports Re_a = inf)");
    params->add_option("--csv-out", csv_out, "also write the groups as one CSV row");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(opts);
        if (study->parsed()) return cmd_study(opts, study_kind, levels, cells, ref_cells);
        if (params->parsed())
            return cmd_params(table_path, T, p, X, T_c, rho_c, r_eta, inviscid, csv_out);
    } catch (const thermoac::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitValidation;
    } catch (const thermoac::InstabilityError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInstability;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitOther;
    }
    return kExitOther;
}
