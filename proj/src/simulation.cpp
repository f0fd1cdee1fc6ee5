#include "thermoac/simulation.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "thermoac/numerics.hpp"

namespace thermoac {

namespace {

int probe_cell(const Probe& probe, const StaggeredGrid& grid) {
    switch (probe.location) {
        case Probe::Location::FrontHalfCell: return 0;
        case Probe::Location::RearHalfCell: return grid.num_cells - 1;
        default: return probe.index;
    }
}

void validate_probe(const Probe& probe, const StaggeredGrid& grid) {
    const bool half_field = probe.field == Probe::Field::T || probe.field == Probe::Field::rho ||
                            probe.field == Probe::Field::p;
    if (probe.location == Probe::Location::NodeIndex) {
        if (half_field) throw ValidationError("Probe: T/rho/p live at half-nodes, not nodes");
        if (probe.index < 0 || probe.index > grid.num_cells)
            throw ValidationError("Probe: node index out of range");
    } else if (probe.location == Probe::Location::HalfNodeIndex) {
        if (!half_field) throw ValidationError("Probe: v/q live at nodes, not half-nodes");
        if (probe.index < 0 || probe.index >= grid.num_cells)
            throw ValidationError("Probe: half-node index out of range");
    }
}

double eval_probe(const Probe& probe, const StaggeredGrid& grid, const DimensionlessParams& p,
                  const Eigen::ArrayXd& T, const Eigen::ArrayXd& rho_avg, const Eigen::ArrayXd& v,
                  const Eigen::ArrayXd& q) {
    const bool front = probe.location == Probe::Location::FrontHalfCell;
    const bool rear = probe.location == Probe::Location::RearHalfCell;
    switch (probe.field) {
        case Probe::Field::T: return T[probe_cell(probe, grid)];
        case Probe::Field::rho: return rho_avg[probe_cell(probe, grid)];
        case Probe::Field::p: {
            const int i = probe_cell(probe, grid);
            return pressure_value(T[i], rho_avg[i], p);
        }
        case Probe::Field::v: return v[front ? 0 : (rear ? grid.num_cells : probe.index)];
        case Probe::Field::q: return q[front ? 0 : (rear ? grid.num_cells : probe.index)];
    }
    return 0.0;
}

struct LevelFields {
    // All fields of one completed integer time level.
    const Eigen::ArrayXd& T;
    const Eigen::ArrayXd& v;
    const Eigen::ArrayXd& q;
    const Eigen::ArrayXd& Pi;
    const Eigen::ArrayXd& rho_below;  ///< rho at t - dt/2 (== level rho for RK4)
    const Eigen::ArrayXd& rho_avg;    ///< two-level average (== level rho for RK4)
    double t;
    double t_half;
};

class Recorder {
public:
    Recorder(const SimulationConfig& cfg, const StaggeredGrid& grid, RunResult& out)
        : cfg_(cfg), grid_(grid), out_(out) {
        for (const auto& probe : cfg.extra_probes) validate_probe(probe, grid);
        out_.probes.extra.resize(cfg.extra_probes.size());
    }

    bool needs_fields(long level, long final_level) const {
        if (level % cfg_.probe_stride == 0 || level == final_level) return true;
        if (cfg_.pressure_monitor_from >= 0) return true;
        for (long snap_level : snapshot_levels_)
            if (snap_level == level) return true;
        return false;
    }

    void level_done(long level, long final_level, const LevelFields& f) {
        if (level % cfg_.probe_stride == 0 || level == final_level) record_probes(f);
        if (cfg_.pressure_monitor_from >= 0 && f.t > cfg_.pressure_monitor_from)
            monitor_pressure(f);
        track_mean_rise(f);
        for (std::size_t k = 0; k < snapshot_levels_.size(); ++k)
            if (snapshot_levels_[k] == level) record_snapshot(k, f);
    }

    // One entry per requested snapshot time, in request order.
    void set_snapshot_levels(std::vector<long> levels) {
        snapshot_levels_ = std::move(levels);
        out_.snapshots.resize(snapshot_levels_.size());
    }

private:
    void record_probes(const LevelFields& f) {
        auto& pr = out_.probes;
        pr.t.push_back(f.t);
        pr.t_half.push_back(f.t_half);
        pr.T_front.push_back(f.T[0]);
        pr.T_rear.push_back(f.T[grid_.num_cells - 1]);
        pr.rho_front.push_back(f.rho_below[0]);
        pr.rho_rear.push_back(f.rho_below[grid_.num_cells - 1]);
        pr.p_front.push_back(pressure_value(f.T[0], f.rho_avg[0], cfg_.params));
        pr.p_rear.push_back(
            pressure_value(f.T[grid_.num_cells - 1], f.rho_avg[grid_.num_cells - 1], cfg_.params));
        pr.v_mid.push_back(f.v[grid_.mid_node()]);
        pr.q0.push_back(f.q[0]);
        pr.q_mid.push_back(f.q[grid_.mid_node()]);
        for (std::size_t k = 0; k < cfg_.extra_probes.size(); ++k)
            pr.extra[k].push_back(
                eval_probe(cfg_.extra_probes[k], grid_, cfg_.params, f.T, f.rho_avg, f.v, f.q));
    }

    void monitor_pressure(const LevelFields& f) {
        const Eigen::ArrayXd p = pressure_field(f.T, f.rho_avg, cfg_.params);
        out_.pressure.max_spread = std::max(out_.pressure.max_spread, p.maxCoeff() - p.minCoeff());
    }

    void track_mean_rise(const LevelFields& f) {
        if (cfg_.pressure_monitor_from < 0) return;
        const Eigen::ArrayXd p = pressure_field(f.T, f.rho_avg, cfg_.params);
        const double rise = p.mean() - cfg_.params.p0_hat;
        out_.pressure.mean_rise_final = rise;
        out_.pressure.max_mean_rise = std::max(out_.pressure.max_mean_rise, rise);
    }

    void record_snapshot(std::size_t request_idx, const LevelFields& f) {
        Snapshot snap;
        snap.t = f.t;
        snap.t_half = f.t_half;
        snap.rho_half = f.rho_below;
        snap.rho_avg = f.rho_avg;
        snap.v = f.v;
        snap.T = f.T;
        snap.q = f.q;
        snap.Pi = f.Pi;
        snap.p = pressure_field(f.T, f.rho_avg, cfg_.params);
        out_.snapshots[request_idx] = std::move(snap);
    }

    const SimulationConfig& cfg_;
    const StaggeredGrid& grid_;
    RunResult& out_;
    std::vector<long> snapshot_levels_;
};

std::vector<long> snapshot_levels(const SimulationConfig& cfg, double dt, long final_level) {
    std::vector<long> levels;
    levels.reserve(cfg.snapshot_times.size());
    for (double t : cfg.snapshot_times) {
        long level = std::lround(t / dt);
        level = std::max(0L, std::min(level, final_level));
        levels.push_back(level);
    }
    return levels;
}

}  // namespace

void validate(const SimulationConfig& cfg) {
    validate(cfg.params);
    validate(cfg.pulse);
    if (cfg.num_cells < 2) throw ValidationError("SimulationConfig: num_cells must be >= 2");
    if (!(cfg.courant > 0)) throw ValidationError("SimulationConfig: courant must be > 0");
    if (!(cfg.t_end_hat > 0)) throw ValidationError("SimulationConfig: t_end_hat must be > 0");
    if (cfg.probe_stride < 1) throw ValidationError("SimulationConfig: probe_stride must be >= 1");
    for (double t : cfg.snapshot_times)
        if (t < 0 || t > cfg.t_end_hat)
            throw ValidationError("SimulationConfig: snapshot time outside [0, t_end_hat]");
}

RunResult run_simulation(const SimulationConfig& cfg) {
    validate(cfg);
    const auto start_clock = std::chrono::steady_clock::now();

    const StaggeredGrid grid = StaggeredGrid::with_cells(cfg.num_cells);
    const DimensionlessParams& p = cfg.params;
    const double dt = cfg.courant * grid.dx_hat;
    const long final_level =
        static_cast<long>(std::ceil(cfg.t_end_hat / dt - 1e-9));  // first level with t >= t_end

    RunResult out;
    out.dt_hat = dt;
    out.dx_hat = grid.dx_hat;
    out.pressure.enabled = cfg.pressure_monitor_from >= 0;
    out.pressure.from_t = cfg.pressure_monitor_from;

    const DiffusionLimits limits = explicit_diffusion_limits(p, grid);
    if (dt > limits.heat_dt_max)
        out.warnings.push_back("dt exceeds the explicit heat-diffusion bound dx^2*Pe/(2*gamma)");
    if (dt > limits.viscous_dt_max)
        out.warnings.push_back(
            "dt exceeds the explicit viscous-diffusion bound dx^2*Re/(2*(r_eta+4/3))");

    Recorder recorder(cfg, grid, out);
    recorder.set_snapshot_levels(snapshot_levels(cfg, dt, final_level));

    const FluxSampler flux = pulse_sampler(cfg.pulse, p.rho0_hat);
    KahanSum heat_residual, heat_injected;
    double mass0 = 0.0;

    const auto track_extrema = [&](const Eigen::ArrayXd& rho, const Eigen::ArrayXd& v,
                                   const Eigen::ArrayXd& T) {
        out.extrema.max_abs_v = std::max(out.extrema.max_abs_v, v.abs().maxCoeff());
        out.extrema.max_T_dev = std::max(out.extrema.max_T_dev, (T - p.T0_hat).abs().maxCoeff());
        out.extrema.max_rho_dev =
            std::max(out.extrema.max_rho_dev, (rho - p.rho0_hat).abs().maxCoeff());
    };

    if (cfg.integrator == Integrator::Splitting) {
        FieldState state = init_equilibrium(grid, p);
        update_constitutive(state, p, grid, flux(0.0), 0.0);
        ScratchArrays scratch;
        FieldState prev = state;  // fields of the last completed integer level
        mass0 = kahan_total(state.rho);
        double mass_ref = std::abs(mass0) > 0 ? std::abs(mass0) : 1.0;
        double T_dev_sum_prev = kahan_total_deviation(state.T, p.T0_hat);

        for (long m = 1;; ++m) {
            const long done_level = m - 1;
            if (done_level > final_level) break;
            try {
                const StepReport report =
                    splitting_step(state, p, grid, dt, flux, (m - 1) * dt, scratch);

                const double mass_now = kahan_total(state.rho);
                out.conservation.mass_drift_rel_max =
                    std::max(out.conservation.mass_drift_rel_max,
                             std::abs(mass_now - mass0) / mass_ref);
                const double T_dev_sum = kahan_total_deviation(state.T, p.T0_hat);
                const double lhs = p.rho0_hat * grid.dx_hat * (T_dev_sum - T_dev_sum_prev);
                const double rhs =
                    0.5 * dt * (report.flux_quarter + report.flux_three_quarter);
                heat_residual.add(lhs - rhs);
                heat_injected.add(rhs);
                T_dev_sum_prev = T_dev_sum;
                track_extrema(state.rho, state.v, state.T);
            } catch (const InstabilityError& err) {
                out.stable = false;
                out.failed_step = m;
                out.message = err.what();
                break;
            }

            // state.rho now holds the half level above `done_level`; the
            // stored T carries its wave sublevel half a step behind it.
            if (recorder.needs_fields(done_level, final_level)) {
                const Eigen::ArrayXd rho_avg = 0.5 * (prev.rho + state.rho);
                const Eigen::ArrayXd T_sync = synchronized_temperature(prev, p, grid, dt);
                Eigen::ArrayXd q_sync = prev.q;
                q_sync.segment(1, grid.num_cells - 1) =
                    -(p.gamma * p.rho0_hat / p.Pe_a) / grid.dx_hat *
                    (T_sync.tail(grid.num_cells - 1) - T_sync.head(grid.num_cells - 1));
                recorder.level_done(done_level, final_level,
                                    {T_sync, prev.v, q_sync, prev.Pi, prev.rho, rho_avg,
                                     done_level * dt, done_level * dt - 0.5 * dt});
            }
            if (done_level % cfg.probe_stride == 0 || done_level == final_level) {
                out.ledger.t.push_back(done_level * dt);
                out.ledger.mass_drift_rel.push_back(out.conservation.mass_drift_rel_max);
                out.ledger.heat_residual_cum.push_back(heat_residual.value());
                out.ledger.heat_injected_cum.push_back(heat_injected.value());
            }

            prev.rho = state.rho;
            prev.v = state.v;
            prev.T = state.T;
            prev.q = state.q;
            prev.Pi = state.Pi;
            out.steps_completed = m;
        }
    } else {
        MolState mol{Eigen::ArrayXd::Constant(grid.num_cells, p.rho0_hat),
                     Eigen::ArrayXd::Zero(grid.num_nodes()),
                     Eigen::ArrayXd::Constant(grid.num_cells, p.T0_hat)};
        FieldState closure;  // carrier for the constitutive fields at record times
        closure.rho = mol.rho;
        closure.v = mol.v;
        closure.T = mol.T;
        closure.q = Eigen::ArrayXd::Zero(grid.num_nodes());
        closure.Pi = Eigen::ArrayXd::Zero(grid.num_cells);
        mass0 = kahan_total(mol.rho);
        const double mass_ref = std::abs(mass0) > 0 ? std::abs(mass0) : 1.0;
        double T_dev_sum_prev = kahan_total_deviation(mol.T, p.T0_hat);

        const auto finish_level = [&](long level) {
            closure.v = mol.v;
            closure.T = mol.T;
            update_constitutive(closure, p, grid, flux(level * dt), 0.0);
            recorder.level_done(level, final_level,
                                {mol.T, mol.v, closure.q, closure.Pi, mol.rho, mol.rho,
                                 level * dt, level * dt});
            if (level % cfg.probe_stride == 0 || level == final_level) {
                out.ledger.t.push_back(level * dt);
                out.ledger.mass_drift_rel.push_back(out.conservation.mass_drift_rel_max);
                out.ledger.heat_residual_cum.push_back(heat_residual.value());
                out.ledger.heat_injected_cum.push_back(heat_injected.value());
            }
        };

        finish_level(0);
        for (long m = 1; m <= final_level; ++m) {
            const double t0 = (m - 1) * dt;
            try {
                rk4_step(mol, p, grid, dt, flux, t0);
                const double mass_now = kahan_total(mol.rho);
                out.conservation.mass_drift_rel_max =
                    std::max(out.conservation.mass_drift_rel_max,
                             std::abs(mass_now - mass0) / mass_ref);
                const double T_dev_sum = kahan_total_deviation(mol.T, p.T0_hat);
                const double lhs = p.rho0_hat * grid.dx_hat * (T_dev_sum - T_dev_sum_prev);
                // RK4 telescopes its stage fluxes with Simpson weights.
                const double rhs =
                    dt / 6.0 * (flux(t0) + 4.0 * flux(t0 + 0.5 * dt) + flux(t0 + dt));
                heat_residual.add(lhs - rhs);
                heat_injected.add(rhs);
                T_dev_sum_prev = T_dev_sum;
                track_extrema(mol.rho, mol.v, mol.T);
            } catch (const InstabilityError& err) {
                out.stable = false;
                out.failed_step = m;
                out.message = err.what();
                break;
            }
            finish_level(m);
            out.steps_completed = m;
        }
    }

    out.conservation.mass_initial = mass0;
    out.conservation.heat_residual_cum = heat_residual.value();
    out.conservation.heat_injected_total = heat_injected.value();
    out.conservation.heat_residual_rel =
        std::abs(heat_residual.value()) /
        std::max(std::abs(heat_injected.value()), std::numeric_limits<double>::min());

    out.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_clock).count();
    return out;
}

}  // namespace thermoac
