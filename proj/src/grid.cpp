#include "thermoac/grid.hpp"

#include <string>

#include "thermoac/integrators.hpp"

namespace thermoac {

void validate_shapes(const FieldState& state, const StaggeredGrid& grid) {
    const auto n = grid.num_cells;
    if (state.rho.size() != n || state.T.size() != n || state.Pi.size() != n ||
        state.v.size() != n + 1 || state.q.size() != n + 1)
        throw ValidationError("FieldState: array lengths do not match the grid");
}

void check_finite(const FieldState& state, long step_index) {
    if (state.rho.allFinite() && state.v.allFinite() && state.T.allFinite() &&
        state.q.allFinite() && state.Pi.allFinite())
        return;
    throw InstabilityError(step_index,
                           "non-finite field entry after step " + std::to_string(step_index));
}

Eigen::ArrayXd diff_nodes_to_half(const Eigen::ArrayXd& u, const StaggeredGrid& grid) {
    if (u.size() != grid.num_nodes())
        throw ValidationError("diff_nodes_to_half: expected node array of length N+1");
    const int n = grid.num_cells;
    return (u.tail(n) - u.head(n)) / grid.dx_hat;
}

Eigen::ArrayXd diff_half_to_nodes(const Eigen::ArrayXd& w, const StaggeredGrid& grid) {
    if (w.size() != grid.num_cells)
        throw ValidationError("diff_half_to_nodes: expected half-node array of length N");
    const int m = grid.num_cells - 1;
    return (w.tail(m) - w.head(m)) / grid.dx_hat;
}

FieldState init_equilibrium(const StaggeredGrid& grid, const DimensionlessParams& p) {
    validate(p);
    FieldState s;
    s.rho = Eigen::ArrayXd::Constant(grid.num_cells, p.rho0_hat);
    s.v = Eigen::ArrayXd::Zero(grid.num_nodes());
    s.T = Eigen::ArrayXd::Constant(grid.num_cells, p.T0_hat);
    s.q = Eigen::ArrayXd::Zero(grid.num_nodes());
    s.Pi = Eigen::ArrayXd::Zero(grid.num_cells);
    return s;
}

FieldState init_from_profiles(const StaggeredGrid& grid, const DimensionlessParams& p,
                              const Eigen::ArrayXd& rho0, const Eigen::ArrayXd& v0,
                              const Eigen::ArrayXd& T0, double dt_hat, double q_left0,
                              double q_right0) {
    validate(p);
    if (rho0.size() != grid.num_cells || T0.size() != grid.num_cells ||
        v0.size() != grid.num_nodes())
        throw ValidationError("init_from_profiles: profile lengths do not match the grid");
    if (!(dt_hat > 0)) throw ValidationError("init_from_profiles: dt_hat must be > 0");

    // One explicit-midpoint step of the reversible field, backwards by dt/2,
    // extends rho and the reversible sublevel of T to -dt/2. v keeps t = 0.
    const double h = -0.5 * dt_hat;
    const MolState x0{rho0, v0, T0};
    const MolTendencies k1 = reversible_tendencies(x0, p, grid);
    const MolState mid{rho0 + 0.5 * h * k1.rho, v0 + 0.5 * h * k1.v, T0 + 0.5 * h * k1.T};
    const MolTendencies k2 = reversible_tendencies(mid, p, grid);

    FieldState s;
    s.rho = rho0 + h * k2.rho;
    s.v = v0;
    s.T = T0 + h * k2.T;
    s.q = Eigen::ArrayXd::Zero(grid.num_nodes());
    s.Pi = Eigen::ArrayXd::Zero(grid.num_cells);
    update_constitutive(s, p, grid, q_left0, q_right0);
    return s;
}

}  // namespace thermoac
