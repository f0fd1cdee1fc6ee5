#include "thermoac/io.hpp"

#include <cstdio>
#include <fstream>

namespace thermoac {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw ValidationError("cannot open output file '" + path.string() + "'");
    return out;
}

// Compact label for snapshot file names (requested time, shortest round-trip).
std::string time_label(double t) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", t);
    return buf;
}

void snapshot_rows(std::ostream& out, const std::string& field, const Eigen::ArrayXd& values,
                   bool half_nodes, double dx, double t) {
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        const double x = half_nodes ? (static_cast<double>(i) + 0.5) * dx
                                    : static_cast<double>(i) * dx;
        out << field << ',' << i << ',' << format_float(x) << ',' << format_float(t) << ','
            << format_float(values[i]) << '\n';
    }
}

}  // namespace

std::string format_float(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

void write_probes_csv(std::ostream& out, const ProbeSeries& probes) {
    out << "t_hat,T_front,T_rear,rho_front_half,rho_rear_half,p_front,p_rear,v_mid,q0,"
           "t_hat_half\n";
    for (std::size_t i = 0; i < probes.t.size(); ++i) {
        out << format_float(probes.t[i]) << ',' << format_float(probes.T_front[i]) << ','
            << format_float(probes.T_rear[i]) << ',' << format_float(probes.rho_front[i]) << ','
            << format_float(probes.rho_rear[i]) << ',' << format_float(probes.p_front[i]) << ','
            << format_float(probes.p_rear[i]) << ',' << format_float(probes.v_mid[i]) << ','
            << format_float(probes.q0[i]) << ',' << format_float(probes.t_half[i]) << '\n';
    }
}

void write_snapshot_csv(std::ostream& out, const Snapshot& snap) {
    const Eigen::Index cells = snap.T.size();
    const double dx = cells > 0 ? 1.0 / static_cast<double>(cells) : 0.0;
    out << "field,index,x_hat,t_hat,value\n";
    snapshot_rows(out, "rho_hat", snap.rho_half, true, dx, snap.t_half);
    snapshot_rows(out, "T_hat", snap.T, true, dx, snap.t);
    snapshot_rows(out, "Pi_hat", snap.Pi, true, dx, snap.t);
    snapshot_rows(out, "p_hat", snap.p, true, dx, snap.t);
    snapshot_rows(out, "v_hat", snap.v, false, dx, snap.t);
    snapshot_rows(out, "q_hat", snap.q, false, dx, snap.t);
}

void write_ledger_csv(std::ostream& out, const LedgerSeries& ledger) {
    out << "t_hat,mass_drift_rel,heat_residual_cum,heat_injected_cum\n";
    for (std::size_t i = 0; i < ledger.t.size(); ++i) {
        out << format_float(ledger.t[i]) << ',' << format_float(ledger.mass_drift_rel[i]) << ','
            << format_float(ledger.heat_residual_cum[i]) << ','
            << format_float(ledger.heat_injected_cum[i]) << '\n';
    }
}

void write_summary_csv(std::ostream& out, const RunResult& r) {
    out << "key,value\n";
    out << "stable," << (r.stable ? 1 : 0) << '\n';
    out << "steps_completed," << r.steps_completed << '\n';
    out << "failed_step," << r.failed_step << '\n';
    out << "dt_hat," << format_float(r.dt_hat) << '\n';
    out << "dx_hat," << format_float(r.dx_hat) << '\n';
    out << "mass_drift_rel_max," << format_float(r.conservation.mass_drift_rel_max) << '\n';
    out << "heat_residual_cum," << format_float(r.conservation.heat_residual_cum) << '\n';
    out << "heat_injected_total," << format_float(r.conservation.heat_injected_total) << '\n';
    out << "heat_residual_rel," << format_float(r.conservation.heat_residual_rel) << '\n';
    out << "pressure_max_spread," << format_float(r.pressure.max_spread) << '\n';
    out << "pressure_mean_rise_final," << format_float(r.pressure.mean_rise_final) << '\n';
    out << "max_abs_v," << format_float(r.extrema.max_abs_v) << '\n';
    out << "max_T_dev," << format_float(r.extrema.max_T_dev) << '\n';
    out << "max_rho_dev," << format_float(r.extrema.max_rho_dev) << '\n';
}

void write_run_outputs(const std::filesystem::path& out_dir, const SimulationConfig& cfg,
                       const RunResult& result) {
    std::filesystem::create_directories(out_dir);
    {
        auto out = open_out(out_dir / "probes.csv");
        write_probes_csv(out, result.probes);
    }
    {
        auto out = open_out(out_dir / "ledger.csv");
        write_ledger_csv(out, result.ledger);
    }
    {
        auto out = open_out(out_dir / "summary.csv");
        write_summary_csv(out, result);
    }
    for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
        const Snapshot& snap = result.snapshots[k];
        if (snap.T.size() == 0) continue;  // not reached (unstable run)
        const double requested =
            k < cfg.snapshot_times.size() ? cfg.snapshot_times[k] : snap.t;
        auto out = open_out(out_dir / ("snapshot_" + time_label(requested) + ".csv"));
        write_snapshot_csv(out, snap);
    }
}

void write_orders_csv(std::ostream& out, const ConvergenceResult& result) {
    out << "field,order,degenerate,ref_cells,compare_t\n";
    for (const auto& [field, slope] : result.slopes)
        out << field << ',' << format_float(slope) << ",0," << result.ref_cells << ','
            << format_float(result.compare_t) << '\n';
    for (const auto& field : result.degenerate)
        out << field << ",nan,1," << result.ref_cells << ',' << format_float(result.compare_t)
            << '\n';
}

void write_l2_errors_csv(std::ostream& out, const ConvergenceResult& result) {
    out << "field,cells,dt_hat,l2_error\n";
    for (const auto& level : result.levels)
        for (const auto& [field, err] : level.l2)
            out << field << ',' << level.cells << ',' << format_float(level.dt_hat) << ','
                << format_float(err) << '\n';
}

void write_deviations_csv(std::ostream& out, const GridStudyResult& result) {
    out << "field,cells,ref_cells,deviation,deviation_full_scale,degenerate\n";
    for (const auto& run : result.runs)
        for (const auto& [field, dev] : run.deviation)
            out << field << ',' << run.cells << ',' << result.ref_cells << ','
                << format_float(dev) << ',' << format_float(run.deviation_full_scale.at(field))
                << ',' << (run.degenerate.count(field) ? 1 : 0) << '\n';
}

void write_dispersion_csv(std::ostream& out, const CompareResult& result) {
    out << "method,max_undershoot,oscillation_energy\n";
    out << "splitting," << format_float(result.splitting_metrics.max_undershoot) << ','
        << format_float(result.splitting_metrics.oscillation_energy) << '\n';
    out << "rk4," << format_float(result.rk4_metrics.max_undershoot) << ','
        << format_float(result.rk4_metrics.oscillation_energy) << '\n';
}

}  // namespace thermoac
