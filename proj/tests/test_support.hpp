#pragma once

#include <Eigen/Dense>

#include "thermoac/params.hpp"

namespace thermoac::test {

// Supercritical CO2 reference state used by the experiments (section of the
// operating points: gamma 12.868, B 41.744, Ec 0.007, Pr 5.805).
inline DimensionlessParams sc_co2_groups(double Pe_a, double Re_a, double r_eta) {
    DimensionlessParams p;
    p.gamma = 12.868;
    p.B = 41.744;
    p.Ec_a = 0.007;
    p.Pe_a = Pe_a;
    p.Re_a = Re_a;
    p.Pr = std::isinf(Re_a) ? 0.0 : Pe_a / Re_a;
    p.r_eta = r_eta;
    p.T0_hat = 305.0 / 304.128;
    p.rho0_hat = 321.083 / 467.600;
    p.p0_hat = 0.0;
    p.Gamma0 = p.B * p.Ec_a / p.T0_hat;
    return p;
}

inline DimensionlessParams wave_test_groups() {
    return sc_co2_groups(1e5, std::numeric_limits<double>::infinity(), 0.0);
}

inline bool approx_array(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b, double tol) {
    return a.size() == b.size() && ((a - b).abs() <= tol).all();
}

}  // namespace thermoac::test
