#pragma once

#include <functional>

#include "thermoac/grid.hpp"

namespace thermoac {

/// Raised-cosine heat pulse injected through the left wall.
struct HeatPulse {
    double q_hat = 0.0;   ///< total cross-section-specific heat [-]
    double tP_hat = 1.0;  ///< pulse duration [-]
};

void validate(const HeatPulse& pulse);

/// Boundary heat-flux value at time t_hat:
/// (1/rho0) (q/tP) [1 - cos(2 pi t/tP)] on the closed interval [0, tP], else 0.
double pulse_flux(double t_hat, const HeatPulse& pulse, double rho0_hat);

/// Samples the left-wall boundary flux at integrator-requested times.
using FluxSampler = std::function<double(double)>;

FluxSampler pulse_sampler(const HeatPulse& pulse, double rho0_hat);

inline FluxSampler zero_flux() {
    return [](double) { return 0.0; };
}

/// Closed adiabatic pipe: v = 0 at both walls, q = 0 at the right wall, and
/// the left-wall q takes the supplied flux value.
void apply_closed_walls(FieldState& state, double q_left, double q_right = 0.0);

}  // namespace thermoac
