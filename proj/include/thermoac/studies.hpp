#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "thermoac/simulation.hpp"

namespace thermoac {

/// One resolution level of the convergence study.
struct ConvergenceLevel {
    int cells = 0;
    double dt_hat = 0;
    std::map<std::string, double> l2;  ///< per-field L2 error against the reference
};

struct ConvergenceResult {
    std::vector<ConvergenceLevel> levels;
    int ref_cells = 0;
    double compare_t = 0;
    std::map<std::string, double> slopes;   ///< per-field least-squares order
    std::set<std::string> degenerate;       ///< fields whose errors vanish identically
};

/// Runs the base case at N, 2N, 4N, ... (n_levels entries, fixed Courant
/// number) against a reference at 8x the finest resolution, comparing full
/// fields at t = 2 by index-aligned restriction, and fits the L2 order per
/// field. Fields: rho (two-level average), v, T, q, and Pi when viscous.
ConvergenceResult convergence_study(const SimulationConfig& base, int n_levels);

struct GridStudyRun {
    int cells = 0;
    std::map<std::string, double> deviation;  ///< max|u - u_ref| / max|u_ref - equilibrium|
    /// Same maximum normalized by max|u_ref| instead of the signal amplitude;
    /// for fields with a non-zero equilibrium this is the much smaller
    /// full-value relative deviation.
    std::map<std::string, double> deviation_full_scale;
    std::set<std::string> degenerate;  ///< reference signal identically zero
};

struct GridStudyResult {
    std::vector<GridStudyRun> runs;
    int ref_cells = 0;
};

/// Probe-based grid-independence study over the common probe times. T, rho, p
/// are taken in the coarse grid's rear half-cell, with the reference series
/// evaluated at the same physical position (exact cell for odd refinement
/// ratios, adjacent-cell mean for even ones); v and q sit at the shared mid
/// node. Cell counts must be even and divide the reference count.
GridStudyResult grid_study(const SimulationConfig& base, const std::vector<int>& cell_counts,
                           int ref_cells);

struct CompareResult {
    RunResult splitting;
    RunResult rk4;
    DispersionMetrics splitting_metrics;
    DispersionMetrics rk4_metrics;
};

/// Splitting vs RK4 with identical settings, including the time step;
/// dispersion metrics are evaluated on the rear-probe temperature series.
CompareResult compare_integrators(const SimulationConfig& base);

}  // namespace thermoac
