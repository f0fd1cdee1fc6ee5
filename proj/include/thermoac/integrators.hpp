#pragma once

#include <utility>

#include "thermoac/grid.hpp"
#include "thermoac/params.hpp"
#include "thermoac/pulse.hpp"

namespace thermoac {

/// Per-step diagnostics: the boundary flux samples actually used by the two
/// irreversible substeps and the largest field changes.
struct StepReport {
    long step_index = 0;
    double t_quarter = 0, flux_quarter = 0;
    double t_three_quarter = 0, flux_three_quarter = 0;
    double max_abs_drho = 0, max_abs_dv = 0, max_abs_dT = 0;
    bool stable = true;
};

/// Reusable buffers for stage values and step-start copies; one per simulation.
struct ScratchArrays {
    Eigen::ArrayXd half;
    Eigen::ArrayXd node;
    Eigen::ArrayXd prev_rho, prev_v, prev_T;
    void ensure(const StaggeredGrid& grid) {
        if (half.size() != grid.num_cells) half.resize(grid.num_cells);
        if (node.size() != grid.num_nodes()) node.resize(grid.num_nodes());
        if (prev_rho.size() != grid.num_cells) prev_rho.resize(grid.num_cells);
        if (prev_v.size() != grid.num_nodes()) prev_v.resize(grid.num_nodes());
        if (prev_T.size() != grid.num_cells) prev_T.resize(grid.num_cells);
    }
};

/// Fills q and Pi from T and v: interior q from the temperature gradient,
/// boundary q from the supplied values, Pi from the velocity gradient.
void update_constitutive(FieldState& state, const DimensionlessParams& p,
                         const StaggeredGrid& grid, double bc_flux_left, double bc_flux_right);

/// Explicit-midpoint half-step of the irreversible (diffusive) vector field:
/// a quarter-step stage from the current values, constitutive recomputation
/// at the quarter stage (boundary flux sampled at t_start + dt/4), then the
/// full dt/2 update applied from the original values with the quarter-stage
/// fluxes. rho is untouched; q and Pi are left at the quarter-stage values.
void irreversible_half_step(FieldState& state, const DimensionlessParams& p,
                            const StaggeredGrid& grid, double dt_hat, const FluxSampler& flux_at,
                            double t_start, ScratchArrays& scratch);
void irreversible_half_step(FieldState& state, const DimensionlessParams& p,
                            const StaggeredGrid& grid, double dt_hat, const FluxSampler& flux_at,
                            double t_start);

/// Quasi-symplectic step of the reversible (wave) vector field: rho and T are
/// advanced with the current v, then v is advanced with the new T and rho.
/// Boundary velocities are overwritten with bc_v. Constitutive fields are not
/// recomputed here.
void reversible_step(FieldState& state, const DimensionlessParams& p, const StaggeredGrid& grid,
                     double dt_hat, std::pair<double, double> bc_v, ScratchArrays& scratch);
void reversible_step(FieldState& state, const DimensionlessParams& p, const StaggeredGrid& grid,
                     double dt_hat, std::pair<double, double> bc_v);

/// One composite step: irreversible half-step, reversible step, irreversible
/// half-step, each followed by the constitutive recomputation at the matching
/// time label (t+1/4, t+1/2, t+3/4, t+1 in units of dt). Closed-wall boundary
/// conditions are enforced throughout.
StepReport splitting_step(FieldState& state, const DimensionlessParams& p,
                          const StaggeredGrid& grid, double dt_hat, const FluxSampler& flux_at,
                          double t_start, ScratchArrays& scratch);
StepReport splitting_step(FieldState& state, const DimensionlessParams& p,
                          const StaggeredGrid& grid, double dt_hat, const FluxSampler& flux_at,
                          double t_start);

/// Non-staggered state view used by the method-of-lines baseline and by the
/// tendency evaluators.
struct MolState {
    Eigen::ArrayXd rho;  ///< length N
    Eigen::ArrayXd v;    ///< length N+1, boundary entries 0
    Eigen::ArrayXd T;    ///< length N
};

struct MolTendencies {
    Eigen::ArrayXd rho;
    Eigen::ArrayXd v;
    Eigen::ArrayXd T;
};

/// Entropy-preserving (wave) part of the semi-discrete generator.
MolTendencies reversible_tendencies(const MolState& s, const DimensionlessParams& p,
                                    const StaggeredGrid& grid);

/// Entropy-producing (diffusive) part; needs the boundary flux at time t_hat.
/// Leaves the rho tendency identically zero.
MolTendencies irreversible_tendencies(const MolState& s, const DimensionlessParams& p,
                                      const StaggeredGrid& grid, double t_hat,
                                      const FluxSampler& flux_at);

/// Full semi-discrete right-hand side (both parts, one pass); used by RK4.
MolTendencies semi_discrete_rhs(const MolState& s, const DimensionlessParams& p,
                                const StaggeredGrid& grid, double t_hat,
                                const FluxSampler& flux_at);

/// Classical four-stage Runge-Kutta step on the non-staggered state; boundary
/// flux sampled at the stage times, constitutive relations evaluated inside
/// every stage.
void rk4_step(MolState& s, const DimensionlessParams& p, const StaggeredGrid& grid, double dt_hat,
              const FluxSampler& flux_at, double t_start);

/// Integer-level temperature readout. The stored T carries its wave
/// (thermal-expansion) sublevel half a step behind the step level, exactly as
/// rho lives at half levels; a forward half-kick of that tendency with the
/// step-level velocity aligns it: T_sync = T - (dt/2) B Ec (dv/dx).
/// With B Ec = 0 this is the identity.
Eigen::ArrayXd synchronized_temperature(const FieldState& s, const DimensionlessParams& p,
                                        const StaggeredGrid& grid, double dt_hat);

/// Explicit-diffusion step bounds dt <= dx^2 Pe/(2 gamma) and
/// dt <= dx^2 Re/(2 (r_eta + 4/3)); exceeding them earns a warning, not an error.
struct DiffusionLimits {
    double heat_dt_max;
    double viscous_dt_max;
};

DiffusionLimits explicit_diffusion_limits(const DimensionlessParams& p, const StaggeredGrid& grid);

}  // namespace thermoac
