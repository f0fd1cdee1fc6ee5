#include "thermoac/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace thermoac {

namespace {

void require(bool ok, const std::string& field, const std::string& condition) {
    if (!ok) throw ValidationError("invalid " + field + ": must be " + condition);
}

}  // namespace

void validate(const MaterialState& mat) {
    require(mat.T_bar > 0, "T_bar", "> 0");
    require(mat.rho_bar > 0, "rho_bar", "> 0");
    require(mat.c_p > 0, "c_p", "> 0");
    require(mat.a_s > 0, "a_s", "> 0");
    require(mat.gamma >= 1.0, "gamma", ">= 1");
    require(mat.nu >= 0, "nu", ">= 0");
    require(mat.a_th > 0, "a_th", "> 0");
    require(mat.r_eta >= 0, "r_eta", ">= 0");
    require(mat.T_c > 0, "T_c", "> 0");
    require(mat.rho_c > 0, "rho_c", "> 0");
}

void validate(const DimensionlessParams& p) {
    require(p.gamma >= 1.0, "gamma", ">= 1");
    require(p.Ec_a >= 0, "Ec_a", ">= 0");
    require(p.Pr >= 0, "Pr", ">= 0");
    require(p.Re_a > 0, "Re_a", "> 0 (inf allowed)");
    require(p.Pe_a > 0, "Pe_a", "> 0 (inf allowed)");
    require(p.r_eta >= 0, "r_eta", ">= 0");
    require(p.T0_hat > 0, "T0_hat", "> 0");
    require(p.rho0_hat > 0, "rho0_hat", "> 0");
    require(std::isfinite(p.B), "B", "finite");
    require(std::isfinite(p.p0_hat), "p0_hat", "finite");
}

DimensionlessParams derive_dimensionless(const MaterialState& mat, double pipe_length,
                                         bool allow_inviscid) {
    validate(mat);
    require(pipe_length > 0, "pipe_length", "> 0");
    if (mat.nu == 0.0 && !allow_inviscid)
        throw ValidationError("invalid nu: must be > 0 unless the inviscid limit is requested");

    DimensionlessParams p;
    p.gamma = mat.gamma;
    p.B = mat.beta_p * mat.T_bar;
    p.Gamma0 = mat.beta_p * mat.a_s * mat.a_s / mat.c_p;
    p.Ec_a = mat.a_s * mat.a_s / (mat.c_p * mat.T_c);
    p.r_eta = mat.r_eta;
    p.T0_hat = mat.T_bar / mat.T_c;
    p.rho0_hat = mat.rho_bar / mat.rho_c;
    if (mat.nu == 0.0) {
        p.Pr = 0.0;
        p.Re_a = std::numeric_limits<double>::infinity();
        p.Pe_a = mat.a_s * pipe_length / mat.a_th;
    } else {
        p.Pr = mat.nu / mat.a_th;
        p.Re_a = mat.a_s * pipe_length / mat.nu;
        p.Pe_a = p.Pr * p.Re_a;
    }
    return p;
}

double pressure_value(double T_hat, double rho_hat, const DimensionlessParams& p) {
    return p.p0_hat + p.rho0_hat * p.B / (p.gamma * p.T0_hat) * (T_hat - p.T0_hat) +
           (rho_hat - p.rho0_hat) / p.gamma;
}

Eigen::ArrayXd pressure_field(const Eigen::ArrayXd& T_hat, const Eigen::ArrayXd& rho_hat,
                              const DimensionlessParams& p) {
    if (T_hat.size() != rho_hat.size())
        throw ValidationError("pressure_field: T_hat and rho_hat lengths differ");
    validate(p);
    const double cT = p.rho0_hat * p.B / (p.gamma * p.T0_hat);
    return p.p0_hat + cT * (T_hat - p.T0_hat) + (rho_hat - p.rho0_hat) / p.gamma;
}

std::vector<MaterialTableRow> read_material_table(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("material table: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "T,p,rho,cp,as,betap,gamma,nu,ath")
        throw ValidationError("material table: unexpected header '" + line + "'");

    std::vector<MaterialTableRow> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        double vals[9];
        for (int i = 0; i < 9; ++i) {
            if (!std::getline(ss, cell, ','))
                throw ValidationError("material table: line " + std::to_string(line_no) +
                                      " has fewer than 9 columns");
            try {
                std::size_t used = 0;
                vals[i] = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ValidationError("material table: line " + std::to_string(line_no) +
                                      " has non-numeric cell '" + cell + "'");
            }
        }
        if (std::getline(ss, cell, ','))
            throw ValidationError("material table: line " + std::to_string(line_no) +
                                  " has more than 9 columns");
        rows.push_back({vals[0], vals[1], vals[2], vals[3], vals[4], vals[5], vals[6], vals[7],
                        vals[8]});
    }
    return rows;
}

std::optional<MaterialTableRow> find_material_row(const std::vector<MaterialTableRow>& table,
                                                  double T, double p) {
    for (const auto& row : table)
        if (row.T == T && row.p == p) return row;
    return std::nullopt;
}

MaterialState to_material_state(const MaterialTableRow& row, double T_c, double rho_c,
                                double r_eta) {
    MaterialState mat;
    mat.T_bar = row.T;
    mat.p_bar = row.p;
    mat.rho_bar = row.rho;
    mat.c_p = row.cp;
    mat.a_s = row.as;
    mat.beta_p = row.betap;
    mat.gamma = row.gamma;
    mat.nu = row.nu;
    mat.a_th = row.ath;
    mat.r_eta = r_eta;
    mat.T_c = T_c;
    mat.rho_c = rho_c;
    return mat;
}

}  // namespace thermoac
