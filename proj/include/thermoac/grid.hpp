#pragma once

#include <Eigen/Dense>

#include "thermoac/errors.hpp"
#include "thermoac/params.hpp"

namespace thermoac {

/// Uniform staggered grid on the unit dimensionless domain.
/// Cell centers (half-nodes) carry rho, T, Pi; nodes carry v, q.
struct StaggeredGrid {
    int num_cells = 0;
    double dx_hat = 0.0;

    static StaggeredGrid with_cells(int n) {
        if (n < 2) throw ValidationError("StaggeredGrid: need at least 2 cells");
        return {n, 1.0 / static_cast<double>(n)};
    }

    int num_nodes() const { return num_cells + 1; }
    int mid_node() const { return num_cells / 2; }
    double node_x(int n) const { return n * dx_hat; }
    double center_x(int n) const { return (n + 0.5) * dx_hat; }
};

/// Substep bookkeeping for the composite time step.
enum class StepPhase { AtStepStart, AfterFirstIrrev, AfterRev, Complete };

/// The five discrete fields with their space/time staggering.
///
/// With phase == Complete and step_index == j (completed composite steps):
/// v, T, q, Pi hold time level j*dt, while rho holds the half level
/// (j - 1/2)*dt. The initial state (j = 0) therefore carries rho extended
/// backwards to -dt/2.
struct FieldState {
    Eigen::ArrayXd rho;  ///< length N, half-nodes
    Eigen::ArrayXd v;    ///< length N+1, nodes
    Eigen::ArrayXd T;    ///< length N, half-nodes
    Eigen::ArrayXd q;    ///< length N+1, nodes
    Eigen::ArrayXd Pi;   ///< length N, half-nodes
    long step_index = 0;
    StepPhase phase = StepPhase::Complete;
};

void validate_shapes(const FieldState& state, const StaggeredGrid& grid);

/// Throws InstabilityError when any entry of the evolved fields is non-finite.
void check_finite(const FieldState& state, long step_index);

/// Central difference of a node array onto the half-nodes: out[n] = (u[n+1]-u[n])/dx.
Eigen::ArrayXd diff_nodes_to_half(const Eigen::ArrayXd& u, const StaggeredGrid& grid);

/// Central difference of a half-node array onto the interior nodes n = 1..N-1.
/// Boundary nodes are not produced; their fields are boundary-prescribed.
Eigen::ArrayXd diff_half_to_nodes(const Eigen::ArrayXd& w, const StaggeredGrid& grid);

/// Homogeneous static equilibrium. The backward half-step extension of rho
/// (and of the reversible sublevel of T) is the identity here, so the arrays
/// are filled with the reference values directly.
FieldState init_equilibrium(const StaggeredGrid& grid, const DimensionlessParams& p);

/// General initial condition (rho, v, T given at t = 0). rho and the
/// reversible sublevel of T are extended to -dt/2 with one explicit-midpoint
/// step of the reversible vector field, then q and Pi are filled from the
/// constitutive relations with the supplied boundary fluxes at t = 0.
FieldState init_from_profiles(const StaggeredGrid& grid, const DimensionlessParams& p,
                              const Eigen::ArrayXd& rho0, const Eigen::ArrayXd& v0,
                              const Eigen::ArrayXd& T0, double dt_hat, double q_left0 = 0.0,
                              double q_right0 = 0.0);

}  // namespace thermoac
