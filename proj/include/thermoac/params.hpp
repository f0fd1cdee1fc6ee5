#pragma once

#include <Eigen/Dense>
#include <istream>
#include <optional>
#include <vector>

#include "thermoac/errors.hpp"

namespace thermoac {

/// Dimensional fluid state and transport properties at a reference point,
/// plus the critical-point scales used by the nondimensionalization.
struct MaterialState {
    double T_bar = 0;    ///< temperature [K]
    double p_bar = 0;    ///< pressure [Pa]
    double rho_bar = 0;  ///< density [kg/m^3]
    double c_p = 0;      ///< isobaric specific heat [J/(kg K)]
    double a_s = 0;      ///< isentropic sound speed [m/s]
    double beta_p = 0;   ///< isobaric thermal expansion coefficient [1/K]
    double gamma = 0;    ///< specific-heat ratio [-]
    double nu = 0;       ///< kinematic viscosity [m^2/s]
    double a_th = 0;     ///< thermal diffusivity [m^2/s]
    double r_eta = 0;    ///< bulk-to-shear viscosity ratio [-]
    double T_c = 0;      ///< critical temperature [K]
    double rho_c = 0;    ///< critical density [kg/m^3]
};

void validate(const MaterialState& mat);

/// The dimensionless groups that parametrize the 1-D thermoacoustic system.
/// Re_a may be +inf (inviscid limit); coefficients are always formed from
/// 1/Re_a and 1/Pe_a so that limit is exact.
struct DimensionlessParams {
    double gamma = 1.0;    ///< specific-heat ratio
    double B = 0.0;        ///< dimensionless thermal expansion beta_p * T_bar
    double Ec_a = 0.0;     ///< acoustic Eckert number a_s^2 / (c_p T_c)
    double Pr = 0.0;       ///< Prandtl number nu / a_th
    double Re_a = 0.0;     ///< acoustic Reynolds number a_s X / nu
    double Pe_a = 0.0;     ///< acoustic Peclet number Pr * Re_a
    double r_eta = 0.0;    ///< bulk-to-shear viscosity ratio
    double T0_hat = 1.0;   ///< reference temperature T_bar / T_c
    double rho0_hat = 1.0; ///< reference density rho_bar / rho_c
    double p0_hat = 0.0;   ///< reference dimensionless pressure (offset only)
    double Gamma0 = 0.0;   ///< Grueneisen parameter beta_p a_s^2 / c_p
};

void validate(const DimensionlessParams& p);

/// Derives all dimensionless groups from dimensional material data and the
/// pipe length. nu == 0 is accepted only with allow_inviscid, in which case
/// Re_a is reported as +inf and Pr as 0.
DimensionlessParams derive_dimensionless(const MaterialState& mat, double pipe_length,
                                         bool allow_inviscid = false);

/// Linearized thermal equation of state, scalar form.
double pressure_value(double T_hat, double rho_hat, const DimensionlessParams& p);

/// Linearized thermal equation of state applied elementwise over half-node arrays.
Eigen::ArrayXd pressure_field(const Eigen::ArrayXd& T_hat, const Eigen::ArrayXd& rho_hat,
                              const DimensionlessParams& p);

/// One row of the optional property-table CSV
/// (header `T,p,rho,cp,as,betap,gamma,nu,ath`, SI units).
struct MaterialTableRow {
    double T = 0, p = 0, rho = 0, cp = 0, as = 0, betap = 0, gamma = 0, nu = 0, ath = 0;
};

std::vector<MaterialTableRow> read_material_table(std::istream& in);

/// Selects the row with exactly matching (T, p), if any.
std::optional<MaterialTableRow> find_material_row(const std::vector<MaterialTableRow>& table,
                                                  double T, double p);

/// Combines a table row with the critical point and viscosity ratio the CSV
/// schema does not carry.
MaterialState to_material_state(const MaterialTableRow& row, double T_c, double rho_c,
                                double r_eta);

}  // namespace thermoac
