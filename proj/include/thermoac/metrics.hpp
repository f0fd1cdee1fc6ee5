#pragma once

#include <Eigen/Dense>
#include <span>

#include "thermoac/errors.hpp"

namespace thermoac {

enum class Staggering { HalfNodes, Nodes, InteriorNodes };

/// A field sampled on one grid at one time level, tagged with its staggering.
struct FieldSnapshot {
    Eigen::ArrayXd values;
    Staggering staggering = Staggering::HalfNodes;
    double dx_hat = 0.0;
};

/// Discrete L2 norm of the difference: sqrt(dx * sum (sol - ref)^2).
double l2_error(const FieldSnapshot& sol, const FieldSnapshot& ref);

/// Rear-probe dispersion diagnostics. max_undershoot measures dips below the
/// equilibrium temperature; oscillation_energy is the sum of squared
/// consecutive differences of the series after removing a centered moving
/// median whose window spans one acoustic transit.
struct DispersionMetrics {
    double max_undershoot = 0.0;
    double oscillation_energy = 0.0;
};

DispersionMetrics dispersion_metrics(std::span<const double> series, double T0_hat,
                                     double sample_spacing_t);

/// Centered moving median with truncated windows at the edges (helper, exposed
/// for tests). window must be >= 1.
std::vector<double> moving_median(std::span<const double> series, int window);

}  // namespace thermoac
