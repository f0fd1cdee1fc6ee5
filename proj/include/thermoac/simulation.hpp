#pragma once

#include <string>
#include <vector>

#include "thermoac/integrators.hpp"
#include "thermoac/metrics.hpp"

namespace thermoac {

enum class Integrator { Splitting, RK4 };

/// Single-point probe; the standard output set (front/rear cells, mid node,
/// left-wall flux) is always recorded, this type addresses additional points.
/// T, rho, p live at half-nodes; v, q at nodes. Front means half-node 0 resp.
/// node 0, rear means half-node N-1 resp. node N.
struct Probe {
    enum class Location { FrontHalfCell, RearHalfCell, NodeIndex, HalfNodeIndex };
    enum class Field { T, rho, p, v, q };
    Location location = Location::FrontHalfCell;
    Field field = Field::T;
    int index = 0;  ///< used by NodeIndex / HalfNodeIndex
};

struct SimulationConfig {
    DimensionlessParams params;
    int num_cells = 100;
    double courant = 0.95;          ///< Co = dt/dx
    double t_end_hat = 1.0;
    HeatPulse pulse;
    Integrator integrator = Integrator::Splitting;
    int probe_stride = 1;           ///< steps between probe records
    std::vector<double> snapshot_times;
    std::vector<Probe> extra_probes;          ///< recorded as extra series, in order
    double pressure_monitor_from = -1.0;      ///< < 0 disables the spread monitor
};

void validate(const SimulationConfig& cfg);

/// Standard probe series. Columns indexed like rows of probes.csv: T, v, q, p
/// at integer levels t; rho native at the half level t_half = t - dt/2 (for
/// RK4 runs t_half == t). p uses the two-level rho average at t.
struct ProbeSeries {
    std::vector<double> t, t_half;
    std::vector<double> T_front, T_rear;
    std::vector<double> rho_front, rho_rear;
    std::vector<double> p_front, p_rear;
    std::vector<double> v_mid, q0, q_mid;
    std::vector<std::vector<double>> extra;  ///< one series per configured extra probe
};

/// Full-field snapshot at an integer time level.
struct Snapshot {
    double t = 0;
    double t_half = 0;          ///< level of rho_half
    Eigen::ArrayXd rho_half;    ///< native density at t - dt/2
    Eigen::ArrayXd rho_avg;     ///< two-level average at t
    Eigen::ArrayXd v, T, q, Pi; ///< at t
    Eigen::ArrayXd p;           ///< from T and rho_avg
};

struct LedgerSeries {
    std::vector<double> t;
    std::vector<double> mass_drift_rel;
    std::vector<double> heat_residual_cum;
    std::vector<double> heat_injected_cum;
};

struct ConservationSummary {
    double mass_initial = 0;
    double mass_drift_rel_max = 0;
    double heat_residual_cum = 0;
    double heat_injected_total = 0;
    double heat_residual_rel = 0;  ///< |residual| / max(|injected|, eps)
};

struct PressureStats {
    bool enabled = false;
    double from_t = 0;
    double max_spread = 0;      ///< max over monitored levels of max(p)-min(p)
    double mean_rise_final = 0; ///< spatial mean p at the last level minus p0
    double max_mean_rise = 0;
};

struct FieldExtrema {
    double max_abs_v = 0;
    double max_T_dev = 0;    ///< max |T - T0|
    double max_rho_dev = 0;  ///< max |rho - rho0|
};

struct RunResult {
    ProbeSeries probes;
    std::vector<Snapshot> snapshots;
    LedgerSeries ledger;
    ConservationSummary conservation;
    PressureStats pressure;
    FieldExtrema extrema;
    bool stable = true;
    long failed_step = -1;
    std::string message;
    std::vector<std::string> warnings;
    double dt_hat = 0, dx_hat = 0;
    long steps_completed = 0;
    double wall_seconds = 0;
};

/// Integrates the configured case from t = 0 to at least t_end_hat, recording
/// probes, snapshots and the conservation ledger. On instability the partial
/// results are retained and flagged instead of thrown away.
RunResult run_simulation(const SimulationConfig& cfg);

}  // namespace thermoac
