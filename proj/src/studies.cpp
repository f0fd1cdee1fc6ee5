#include "thermoac/studies.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "thermoac/numerics.hpp"

namespace thermoac {

namespace {

Eigen::ArrayXd restrict_nodes(const Eigen::ArrayXd& fine, int ratio) {
    const int coarse_cells = static_cast<int>((fine.size() - 1) / ratio);
    Eigen::ArrayXd out(coarse_cells + 1);
    for (int n = 0; n <= coarse_cells; ++n) out[n] = fine[static_cast<Eigen::Index>(n) * ratio];
    return out;
}

// Half-node positions only coincide across grids for odd ratios; for even
// ratios the mean of the two adjacent fine cells is a second-order-accurate
// restriction to the coarse cell center.
Eigen::ArrayXd restrict_half(const Eigen::ArrayXd& fine, int ratio) {
    const int coarse_cells = static_cast<int>(fine.size() / ratio);
    Eigen::ArrayXd out(coarse_cells);
    if (ratio % 2 == 1) {
        for (int n = 0; n < coarse_cells; ++n)
            out[n] = fine[static_cast<Eigen::Index>(n) * ratio + (ratio - 1) / 2];
    } else {
        for (int n = 0; n < coarse_cells; ++n) {
            const Eigen::Index k = static_cast<Eigen::Index>(n) * ratio + ratio / 2;
            out[n] = 0.5 * (fine[k - 1] + fine[k]);
        }
    }
    return out;
}

struct StudyField {
    std::string name;
    Staggering staggering;
    const Eigen::ArrayXd& (*extract)(const Snapshot&);
};

const Eigen::ArrayXd& get_rho(const Snapshot& s) { return s.rho_avg; }
const Eigen::ArrayXd& get_v(const Snapshot& s) { return s.v; }
const Eigen::ArrayXd& get_T(const Snapshot& s) { return s.T; }
const Eigen::ArrayXd& get_q(const Snapshot& s) { return s.q; }
const Eigen::ArrayXd& get_Pi(const Snapshot& s) { return s.Pi; }

Snapshot run_for_snapshot(const SimulationConfig& base, int cells, double compare_t) {
    SimulationConfig cfg = base;
    cfg.num_cells = cells;
    cfg.t_end_hat = compare_t;
    cfg.snapshot_times = {compare_t};
    cfg.probe_stride = std::numeric_limits<int>::max();
    cfg.extra_probes.clear();
    cfg.pressure_monitor_from = -1.0;
    RunResult result = run_simulation(cfg);
    if (!result.stable)
        throw InstabilityError(result.failed_step,
                               "convergence run with N=" + std::to_string(cells) +
                                   " went unstable: " + result.message);
    return result.snapshots.at(0);
}

}  // namespace

ConvergenceResult convergence_study(const SimulationConfig& base, int n_levels) {
    if (n_levels < 3) throw ValidationError("convergence_study: need at least 3 levels");
    constexpr double compare_t = 2.0;
    constexpr int ref_factor = 8;

    ConvergenceResult out;
    out.compare_t = compare_t;

    std::vector<int> level_cells(static_cast<std::size_t>(n_levels));
    for (int i = 0; i < n_levels; ++i) level_cells[i] = base.num_cells << i;
    out.ref_cells = level_cells.back() * ref_factor;

    const Snapshot ref = run_for_snapshot(base, out.ref_cells, compare_t);

    std::vector<StudyField> fields = {{"rho", Staggering::HalfNodes, &get_rho},
                                      {"v", Staggering::Nodes, &get_v},
                                      {"T", Staggering::HalfNodes, &get_T},
                                      {"q", Staggering::Nodes, &get_q}};
    const bool viscous = base.params.rho0_hat * (base.params.r_eta + 4.0 / 3.0) / base.params.Re_a > 0;
    if (viscous) fields.push_back({"Pi", Staggering::HalfNodes, &get_Pi});

    for (int cells : level_cells) {
        const Snapshot snap = run_for_snapshot(base, cells, compare_t);
        const int ratio = out.ref_cells / cells;
        ConvergenceLevel level;
        level.cells = cells;
        level.dt_hat = base.courant / cells;
        for (const auto& f : fields) {
            const Eigen::ArrayXd& fine = f.extract(ref);
            const Eigen::ArrayXd restricted = f.staggering == Staggering::Nodes
                                                  ? restrict_nodes(fine, ratio)
                                                  : restrict_half(fine, ratio);
            const double dx = 1.0 / cells;
            level.l2[f.name] =
                l2_error({f.extract(snap), f.staggering, dx}, {restricted, f.staggering, dx});
        }
        out.levels.push_back(std::move(level));
    }

    for (const auto& f : fields) {
        std::vector<double> log_dt, log_err;
        bool all_positive = true;
        for (const auto& level : out.levels) {
            const double err = level.l2.at(f.name);
            if (err <= 0) {
                all_positive = false;
                break;
            }
            log_dt.push_back(std::log(level.dt_hat));
            log_err.push_back(std::log(err));
        }
        if (all_positive)
            out.slopes[f.name] = least_squares_slope(log_dt, log_err);
        else
            out.degenerate.insert(f.name);
    }
    return out;
}

namespace {

// Reference-grid cells whose mean evaluates a coarse rear-cell center: exact
// cell for odd ratios, adjacent pair for even ones.
std::pair<int, int> rear_cells_on_reference(int coarse, int ref) {
    const int ratio = ref / coarse;
    if (ratio % 2 == 1) {
        const int k = ref - (ratio + 1) / 2;
        return {k, k};
    }
    return {ref - ratio / 2 - 1, ref - ratio / 2};
}

}  // namespace

GridStudyResult grid_study(const SimulationConfig& base, const std::vector<int>& cell_counts,
                           int ref_cells) {
    if (cell_counts.empty()) throw ValidationError("grid_study: no cell counts given");
    int common = ref_cells;
    for (int cells : cell_counts) {
        if (cells < 2 || ref_cells % cells != 0)
            throw ValidationError("grid_study: every cell count must divide the reference count");
        if (cells % 2 != 0 || ref_cells % 2 != 0)
            throw ValidationError("grid_study: cell counts must be even (shared mid node)");
        common = std::gcd(common, cells);
    }

    const auto run_with = [&](int cells, std::vector<Probe> probes) {
        SimulationConfig cfg = base;
        cfg.num_cells = cells;
        cfg.probe_stride = cells / common;
        cfg.snapshot_times.clear();
        cfg.pressure_monitor_from = -1.0;
        cfg.extra_probes = std::move(probes);
        RunResult result = run_simulation(cfg);
        if (!result.stable)
            throw InstabilityError(result.failed_step, "grid-study run with N=" +
                                                           std::to_string(cells) +
                                                           " went unstable: " + result.message);
        return result.probes;
    };

    // Reference probes: per coarse grid the position-matched rear cell for
    // T, rho, p (one or two cells each), plus the shared mid node for v, q.
    const std::vector<Probe::Field> rear_fields = {Probe::Field::T, Probe::Field::rho,
                                                   Probe::Field::p};
    std::vector<Probe> ref_probes;
    for (int cells : cell_counts) {
        const auto [lo, hi] = rear_cells_on_reference(cells, ref_cells);
        for (const auto field : rear_fields) {
            ref_probes.push_back({Probe::Location::HalfNodeIndex, field, lo});
            if (hi != lo) ref_probes.push_back({Probe::Location::HalfNodeIndex, field, hi});
        }
    }
    ref_probes.push_back({Probe::Location::NodeIndex, Probe::Field::v, ref_cells / 2});
    ref_probes.push_back({Probe::Location::NodeIndex, Probe::Field::q, ref_cells / 2});
    const ProbeSeries ref = run_with(ref_cells, ref_probes);

    // Collapse the reference probes to one matched series per coarse grid/field.
    std::map<int, std::array<std::vector<double>, 5>> ref_series;
    {
        std::size_t col = 0;
        for (int cells : cell_counts) {
            const auto [lo, hi] = rear_cells_on_reference(cells, ref_cells);
            for (std::size_t f = 0; f < rear_fields.size(); ++f) {
                std::vector<double> series = ref.extra[col++];
                if (hi != lo) {
                    const std::vector<double>& other = ref.extra[col++];
                    for (std::size_t i = 0; i < series.size(); ++i)
                        series[i] = 0.5 * (series[i] + other[i]);
                }
                ref_series[cells][f] = std::move(series);
            }
            ref_series[cells][3] = ref.extra[ref.extra.size() - 2];
            ref_series[cells][4] = ref.extra[ref.extra.size() - 1];
        }
    }

    const std::vector<std::string> names = {"T", "rho", "p", "v", "q"};
    const std::vector<double> equilibrium = {base.params.T0_hat, base.params.rho0_hat,
                                             base.params.p0_hat, 0.0, 0.0};

    GridStudyResult out;
    out.ref_cells = ref_cells;
    for (int cells : cell_counts) {
        const ProbeSeries sol = run_with(
            cells, {{Probe::Location::RearHalfCell, Probe::Field::T, 0},
                    {Probe::Location::RearHalfCell, Probe::Field::rho, 0},
                    {Probe::Location::RearHalfCell, Probe::Field::p, 0},
                    {Probe::Location::NodeIndex, Probe::Field::v, cells / 2},
                    {Probe::Location::NodeIndex, Probe::Field::q, cells / 2}});
        GridStudyRun run;
        run.cells = cells;
        for (std::size_t f = 0; f < names.size(); ++f) {
            const std::vector<double>& ref_values = ref_series[cells][f];
            double max_diff = 0.0, amplitude = 0.0, full_scale = 0.0;
            std::size_t i = 0, j = 0;
            while (i < sol.t.size() && j < ref.t.size()) {
                const double ts = sol.t[i], tr = ref.t[j];
                if (std::abs(ts - tr) <= 1e-9 * std::max(1.0, std::abs(tr))) {
                    max_diff = std::max(max_diff, std::abs(sol.extra[f][i] - ref_values[j]));
                    amplitude = std::max(amplitude, std::abs(ref_values[j] - equilibrium[f]));
                    full_scale = std::max(full_scale, std::abs(ref_values[j]));
                    ++i;
                    ++j;
                } else if (ts < tr) {
                    ++i;
                } else {
                    ++j;
                }
            }
            if (amplitude > 0) {
                run.deviation[names[f]] = max_diff / amplitude;
            } else {
                run.deviation[names[f]] =
                    max_diff > 0 ? std::numeric_limits<double>::infinity() : 0.0;
                run.degenerate.insert(names[f]);
            }
            run.deviation_full_scale[names[f]] =
                full_scale > 0 ? max_diff / full_scale : run.deviation[names[f]];
        }
        out.runs.push_back(std::move(run));
    }
    return out;
}

CompareResult compare_integrators(const SimulationConfig& base) {
    SimulationConfig split_cfg = base;
    split_cfg.integrator = Integrator::Splitting;
    SimulationConfig rk4_cfg = base;
    rk4_cfg.integrator = Integrator::RK4;

    CompareResult out{run_simulation(split_cfg), run_simulation(rk4_cfg), {}, {}};
    const double spacing = out.splitting.dt_hat * base.probe_stride;
    out.splitting_metrics =
        dispersion_metrics(out.splitting.probes.T_rear, base.params.T0_hat, spacing);
    out.rk4_metrics = dispersion_metrics(out.rk4.probes.T_rear, base.params.T0_hat, spacing);
    return out;
}

}  // namespace thermoac
