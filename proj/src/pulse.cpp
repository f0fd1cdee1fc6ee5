#include "thermoac/pulse.hpp"

#include <cmath>
#include <numbers>

namespace thermoac {

void validate(const HeatPulse& pulse) {
    if (!(pulse.tP_hat > 0)) throw ValidationError("HeatPulse: tP_hat must be > 0");
    if (!(pulse.q_hat >= 0)) throw ValidationError("HeatPulse: q_hat must be >= 0");
}

double pulse_flux(double t_hat, const HeatPulse& pulse, double rho0_hat) {
    if (!(rho0_hat > 0)) throw ValidationError("pulse_flux: rho0_hat must be > 0");
    if (t_hat < 0.0 || t_hat > pulse.tP_hat) return 0.0;
    const double phase = 2.0 * std::numbers::pi * t_hat / pulse.tP_hat;
    return pulse.q_hat / (rho0_hat * pulse.tP_hat) * (1.0 - std::cos(phase));
}

FluxSampler pulse_sampler(const HeatPulse& pulse, double rho0_hat) {
    validate(pulse);
    if (!(rho0_hat > 0)) throw ValidationError("pulse_sampler: rho0_hat must be > 0");
    return [pulse, rho0_hat](double t_hat) { return pulse_flux(t_hat, pulse, rho0_hat); };
}

void apply_closed_walls(FieldState& state, double q_left, double q_right) {
    state.v[0] = 0.0;
    state.v[state.v.size() - 1] = 0.0;
    state.q[0] = q_left;
    state.q[state.q.size() - 1] = q_right;
}

}  // namespace thermoac
