#include "thermoac/integrators.hpp"

#include <cmath>

namespace thermoac {

namespace {

// Coefficient bundle for the semi-discrete stencils. Pe_a or Re_a equal to
// +inf yields an exact zero coefficient for the corresponding flux.
struct Coeffs {
    double inv_dx;
    double rho0, inv_rho0;
    double q_coeff;          // gamma rho0 / Pe
    double pi_coeff;         // rho0 (r_eta + 4/3) / Re
    double thermal_forcing;  // B Ec
    double grad_T;           // B / (gamma T0)
    double grad_rho;         // 1 / (gamma rho0)
};

Coeffs make_coeffs(const DimensionlessParams& p, const StaggeredGrid& grid) {
    Coeffs c{};
    c.inv_dx = 1.0 / grid.dx_hat;
    c.rho0 = p.rho0_hat;
    c.inv_rho0 = 1.0 / p.rho0_hat;
    c.q_coeff = p.gamma * p.rho0_hat / p.Pe_a;
    c.pi_coeff = p.rho0_hat * (p.r_eta + 4.0 / 3.0) / p.Re_a;
    c.thermal_forcing = p.B * p.Ec_a;
    c.grad_T = p.B / (p.gamma * p.T0_hat);
    c.grad_rho = 1.0 / (p.gamma * p.rho0_hat);
    return c;
}

}  // namespace

void update_constitutive(FieldState& s, const DimensionlessParams& p, const StaggeredGrid& grid,
                         double bc_flux_left, double bc_flux_right) {
    validate_shapes(s, grid);
    const Coeffs c = make_coeffs(p, grid);
    const int n = grid.num_cells;
    s.q.segment(1, n - 1) = -c.q_coeff * c.inv_dx * (s.T.tail(n - 1) - s.T.head(n - 1));
    s.q[0] = bc_flux_left;
    s.q[n] = bc_flux_right;
    s.Pi = -c.pi_coeff * c.inv_dx * (s.v.tail(n) - s.v.head(n));
}

void irreversible_half_step(FieldState& s, const DimensionlessParams& p,
                            const StaggeredGrid& grid, double dt_hat, const FluxSampler& flux_at,
                            double t_start, ScratchArrays& scratch) {
    validate_shapes(s, grid);
    if (!(dt_hat > 0)) throw ValidationError("irreversible_half_step: dt_hat must be > 0");
    const Coeffs c = make_coeffs(p, grid);
    const int n = grid.num_cells;
    scratch.ensure(grid);
    const double quarter = 0.25 * dt_hat;
    const double half = 0.5 * dt_hat;

    // Stage 1: quarter-step values of v and T from the fluxes in the state.
    Eigen::ArrayXd& v_q = scratch.node;
    Eigen::ArrayXd& T_q = scratch.half;
    v_q = s.v;
    v_q.segment(1, n - 1) -=
        quarter * c.inv_rho0 * c.inv_dx * (s.Pi.tail(n - 1) - s.Pi.head(n - 1));
    T_q = s.T - quarter * c.inv_rho0 * c.inv_dx * (s.q.tail(n) - s.q.head(n));

    // Constitutive fields at the quarter stage; boundary flux at t + dt/4.
    s.q.segment(1, n - 1) = -c.q_coeff * c.inv_dx * (T_q.tail(n - 1) - T_q.head(n - 1));
    s.q[0] = flux_at(t_start + quarter);
    s.q[n] = 0.0;
    s.Pi = -c.pi_coeff * c.inv_dx * (v_q.tail(n) - v_q.head(n));

    // Stage 2: full dt/2 update from the original values with the
    // quarter-stage fluxes. q and Pi stay at the quarter stage.
    s.v.segment(1, n - 1) -= half * c.inv_rho0 * c.inv_dx * (s.Pi.tail(n - 1) - s.Pi.head(n - 1));
    s.T -= half * c.inv_rho0 * c.inv_dx * (s.q.tail(n) - s.q.head(n));
}

void irreversible_half_step(FieldState& s, const DimensionlessParams& p,
                            const StaggeredGrid& grid, double dt_hat, const FluxSampler& flux_at,
                            double t_start) {
    ScratchArrays scratch;
    irreversible_half_step(s, p, grid, dt_hat, flux_at, t_start, scratch);
}

void reversible_step(FieldState& s, const DimensionlessParams& p, const StaggeredGrid& grid,
                     double dt_hat, std::pair<double, double> bc_v, ScratchArrays& scratch) {
    validate_shapes(s, grid);
    if (!(dt_hat > 0)) throw ValidationError("reversible_step: dt_hat must be > 0");
    const Coeffs c = make_coeffs(p, grid);
    const int n = grid.num_cells;
    scratch.ensure(grid);

    Eigen::ArrayXd& div_v = scratch.half;
    div_v = (s.v.tail(n) - s.v.head(n)) * c.inv_dx;
    s.rho -= dt_hat * c.rho0 * div_v;
    s.T -= dt_hat * c.thermal_forcing * div_v;
    // v is advanced with the already-updated T and rho (quasi-symplectic order).
    s.v.segment(1, n - 1) -=
        dt_hat * c.inv_dx *
        (c.grad_T * (s.T.tail(n - 1) - s.T.head(n - 1)) +
         c.grad_rho * (s.rho.tail(n - 1) - s.rho.head(n - 1)));
    s.v[0] = bc_v.first;
    s.v[n] = bc_v.second;
}

void reversible_step(FieldState& s, const DimensionlessParams& p, const StaggeredGrid& grid,
                     double dt_hat, std::pair<double, double> bc_v) {
    ScratchArrays scratch;
    reversible_step(s, p, grid, dt_hat, bc_v, scratch);
}

StepReport splitting_step(FieldState& s, const DimensionlessParams& p, const StaggeredGrid& grid,
                          double dt_hat, const FluxSampler& flux_at, double t_start,
                          ScratchArrays& scratch) {
    if (s.phase != StepPhase::Complete)
        throw ValidationError("splitting_step: state is mid-step, not at a completed level");
    validate_shapes(s, grid);
    scratch.ensure(grid);
    scratch.prev_rho = s.rho;
    scratch.prev_v = s.v;
    scratch.prev_T = s.T;

    StepReport report;
    s.phase = StepPhase::AtStepStart;

    irreversible_half_step(s, p, grid, dt_hat, flux_at, t_start, scratch);
    report.t_quarter = t_start + 0.25 * dt_hat;
    report.flux_quarter = s.q[0];
    s.phase = StepPhase::AfterFirstIrrev;

    reversible_step(s, p, grid, dt_hat, {0.0, 0.0}, scratch);
    update_constitutive(s, p, grid, flux_at(t_start + 0.5 * dt_hat), 0.0);
    s.phase = StepPhase::AfterRev;

    irreversible_half_step(s, p, grid, dt_hat, flux_at, t_start + 0.5 * dt_hat, scratch);
    report.t_three_quarter = t_start + 0.75 * dt_hat;
    report.flux_three_quarter = s.q[0];

    update_constitutive(s, p, grid, flux_at(t_start + dt_hat), 0.0);
    ++s.step_index;
    s.phase = StepPhase::Complete;

    report.step_index = s.step_index;
    report.max_abs_drho = (s.rho - scratch.prev_rho).abs().maxCoeff();
    report.max_abs_dv = (s.v - scratch.prev_v).abs().maxCoeff();
    report.max_abs_dT = (s.T - scratch.prev_T).abs().maxCoeff();
    check_finite(s, s.step_index);
    report.stable = true;
    return report;
}

StepReport splitting_step(FieldState& s, const DimensionlessParams& p, const StaggeredGrid& grid,
                          double dt_hat, const FluxSampler& flux_at, double t_start) {
    ScratchArrays scratch;
    return splitting_step(s, p, grid, dt_hat, flux_at, t_start, scratch);
}

MolTendencies reversible_tendencies(const MolState& s, const DimensionlessParams& p,
                                    const StaggeredGrid& grid) {
    const Coeffs c = make_coeffs(p, grid);
    const int n = grid.num_cells;
    MolTendencies out;
    out.rho = -c.rho0 * c.inv_dx * (s.v.tail(n) - s.v.head(n));
    out.v = Eigen::ArrayXd::Zero(n + 1);
    out.v.segment(1, n - 1) = -c.inv_dx * (c.grad_T * (s.T.tail(n - 1) - s.T.head(n - 1)) +
                                           c.grad_rho * (s.rho.tail(n - 1) - s.rho.head(n - 1)));
    out.T = -c.thermal_forcing * c.inv_dx * (s.v.tail(n) - s.v.head(n));
    return out;
}

MolTendencies irreversible_tendencies(const MolState& s, const DimensionlessParams& p,
                                      const StaggeredGrid& grid, double t_hat,
                                      const FluxSampler& flux_at) {
    const Coeffs c = make_coeffs(p, grid);
    const int n = grid.num_cells;
    Eigen::ArrayXd q(n + 1);
    q.segment(1, n - 1) = -c.q_coeff * c.inv_dx * (s.T.tail(n - 1) - s.T.head(n - 1));
    q[0] = flux_at(t_hat);
    q[n] = 0.0;
    const Eigen::ArrayXd Pi = -c.pi_coeff * c.inv_dx * (s.v.tail(n) - s.v.head(n));

    MolTendencies out;
    out.rho = Eigen::ArrayXd::Zero(n);
    out.v = Eigen::ArrayXd::Zero(n + 1);
    out.v.segment(1, n - 1) =
        -c.inv_rho0 * c.inv_dx * (Pi.tail(n - 1) - Pi.head(n - 1));
    out.T = -c.inv_rho0 * c.inv_dx * (q.tail(n) - q.head(n));
    return out;
}

MolTendencies semi_discrete_rhs(const MolState& s, const DimensionlessParams& p,
                                const StaggeredGrid& grid, double t_hat,
                                const FluxSampler& flux_at) {
    const Coeffs c = make_coeffs(p, grid);
    const int n = grid.num_cells;
    Eigen::ArrayXd q(n + 1);
    q.segment(1, n - 1) = -c.q_coeff * c.inv_dx * (s.T.tail(n - 1) - s.T.head(n - 1));
    q[0] = flux_at(t_hat);
    q[n] = 0.0;
    const Eigen::ArrayXd Pi = -c.pi_coeff * c.inv_dx * (s.v.tail(n) - s.v.head(n));

    MolTendencies out;
    out.rho = -c.rho0 * c.inv_dx * (s.v.tail(n) - s.v.head(n));
    out.v = Eigen::ArrayXd::Zero(n + 1);
    out.v.segment(1, n - 1) = -c.inv_dx * (c.grad_T * (s.T.tail(n - 1) - s.T.head(n - 1)) +
                                           c.grad_rho * (s.rho.tail(n - 1) - s.rho.head(n - 1)) +
                                           c.inv_rho0 * (Pi.tail(n - 1) - Pi.head(n - 1)));
    out.T = -c.inv_rho0 * c.inv_dx * (q.tail(n) - q.head(n)) -
            c.thermal_forcing * c.inv_dx * (s.v.tail(n) - s.v.head(n));
    return out;
}

void rk4_step(MolState& s, const DimensionlessParams& p, const StaggeredGrid& grid, double dt_hat,
              const FluxSampler& flux_at, double t_start) {
    if (!(dt_hat > 0)) throw ValidationError("rk4_step: dt_hat must be > 0");
    const double h = dt_hat;
    const MolTendencies k1 = semi_discrete_rhs(s, p, grid, t_start, flux_at);
    const MolState s2{s.rho + 0.5 * h * k1.rho, s.v + 0.5 * h * k1.v, s.T + 0.5 * h * k1.T};
    const MolTendencies k2 = semi_discrete_rhs(s2, p, grid, t_start + 0.5 * h, flux_at);
    const MolState s3{s.rho + 0.5 * h * k2.rho, s.v + 0.5 * h * k2.v, s.T + 0.5 * h * k2.T};
    const MolTendencies k3 = semi_discrete_rhs(s3, p, grid, t_start + 0.5 * h, flux_at);
    const MolState s4{s.rho + h * k3.rho, s.v + h * k3.v, s.T + h * k3.T};
    const MolTendencies k4 = semi_discrete_rhs(s4, p, grid, t_start + h, flux_at);

    s.rho += h / 6.0 * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho);
    s.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    s.T += h / 6.0 * (k1.T + 2.0 * k2.T + 2.0 * k3.T + k4.T);

    if (!(s.rho.allFinite() && s.v.allFinite() && s.T.allFinite()))
        throw InstabilityError(-1, "non-finite field entry after RK4 step");
}

Eigen::ArrayXd synchronized_temperature(const FieldState& s, const DimensionlessParams& p,
                                        const StaggeredGrid& grid, double dt_hat) {
    validate_shapes(s, grid);
    const Coeffs c = make_coeffs(p, grid);
    const int n = grid.num_cells;
    return s.T - 0.5 * dt_hat * c.thermal_forcing * c.inv_dx * (s.v.tail(n) - s.v.head(n));
}

DiffusionLimits explicit_diffusion_limits(const DimensionlessParams& p,
                                          const StaggeredGrid& grid) {
    const double dx2 = grid.dx_hat * grid.dx_hat;
    return {dx2 * p.Pe_a / (2.0 * p.gamma), dx2 * p.Re_a / (2.0 * (p.r_eta + 4.0 / 3.0))};
}

}  // namespace thermoac
