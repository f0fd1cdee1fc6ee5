#include "thermoac/config_file.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace thermoac {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        while (used < value.size() && std::isspace(static_cast<unsigned char>(value[used])))
            ++used;
        if (used != value.size()) throw std::invalid_argument(value);
        return x;
    } catch (const std::exception&) {
        throw ValidationError("case file: key '" + key + "' has non-numeric value '" + value +
                              "'");
    }
}

long parse_integer(const std::string& key, const std::string& value) {
    const double x = parse_number(key, value);
    const long n = std::lround(x);
    if (static_cast<double>(n) != x)
        throw ValidationError("case file: key '" + key + "' must be an integer");
    return n;
}

std::vector<double> parse_number_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::istringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw ValidationError("case file: key '" + key + "' has an empty list entry");
        out.push_back(parse_number(key, item));
    }
    return out;
}

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

const std::set<std::string> kRequiredKeys = {
    "case_name", "gamma",       "B",  "Ec_a", "Pe_a",      "Re_a",
    "r_eta",     "T0_hat",      "rho0_hat",   "N",  "Co",   "t_end_hat",
    "pulse_q_hat", "pulse_tP_hat", "integrator"};

const std::set<std::string> kOptionalKeys = {"description", "p0_hat", "probe_stride",
                                             "snapshot_times", "pressure_monitor_from"};

}  // namespace

CaseFile parse_case_file(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("case file: line " + std::to_string(line_no) +
                                  " is not of the form key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!kRequiredKeys.count(key) && !kOptionalKeys.count(key))
            throw ValidationError("case file: unknown key '" + key + "' on line " +
                                  std::to_string(line_no));
        if (kv.count(key))
            throw ValidationError("case file: duplicate key '" + key + "' on line " +
                                  std::to_string(line_no));
        kv[key] = value;
    }
    for (const auto& key : kRequiredKeys)
        if (!kv.count(key)) throw ValidationError("case file: missing required key '" + key + "'");

    CaseFile c;
    c.name = kv.at("case_name");
    if (kv.count("description")) c.description = kv.at("description");

    DimensionlessParams& p = c.config.params;
    p.gamma = parse_number("gamma", kv.at("gamma"));
    p.B = parse_number("B", kv.at("B"));
    p.Ec_a = parse_number("Ec_a", kv.at("Ec_a"));
    p.Pe_a = parse_number("Pe_a", kv.at("Pe_a"));
    p.Re_a = parse_number("Re_a", kv.at("Re_a"));
    p.r_eta = parse_number("r_eta", kv.at("r_eta"));
    p.T0_hat = parse_number("T0_hat", kv.at("T0_hat"));
    p.rho0_hat = parse_number("rho0_hat", kv.at("rho0_hat"));
    p.p0_hat = kv.count("p0_hat") ? parse_number("p0_hat", kv.at("p0_hat")) : 0.0;
    p.Pr = std::isinf(p.Re_a) ? 0.0 : p.Pe_a / p.Re_a;
    p.Gamma0 = p.B * p.Ec_a / p.T0_hat;  // beta as^2/cp expressed through the groups

    c.config.num_cells = static_cast<int>(parse_integer("N", kv.at("N")));
    c.config.courant = parse_number("Co", kv.at("Co"));
    c.config.t_end_hat = parse_number("t_end_hat", kv.at("t_end_hat"));
    c.config.pulse.q_hat = parse_number("pulse_q_hat", kv.at("pulse_q_hat"));
    c.config.pulse.tP_hat = parse_number("pulse_tP_hat", kv.at("pulse_tP_hat"));

    const std::string integ = kv.at("integrator");
    if (integ == "splitting")
        c.config.integrator = Integrator::Splitting;
    else if (integ == "rk4")
        c.config.integrator = Integrator::RK4;
    else
        throw ValidationError("case file: integrator must be 'splitting' or 'rk4', got '" +
                              integ + "'");

    if (kv.count("probe_stride"))
        c.config.probe_stride =
            static_cast<int>(parse_integer("probe_stride", kv.at("probe_stride")));
    if (kv.count("snapshot_times") && !trim(kv.at("snapshot_times")).empty())
        c.config.snapshot_times = parse_number_list("snapshot_times", kv.at("snapshot_times"));
    if (kv.count("pressure_monitor_from"))
        c.config.pressure_monitor_from =
            parse_number("pressure_monitor_from", kv.at("pressure_monitor_from"));

    validate(c.config);
    return c;
}

CaseFile load_case_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("case file: cannot open '" + path.string() + "'");
    return parse_case_file(in);
}

std::string serialize_case_file(const CaseFile& c) {
    std::ostringstream out;
    const DimensionlessParams& p = c.config.params;
    out << "case_name = " << c.name << "\n";
    out << "description = " << c.description << "\n";
    out << "gamma = " << format_number(p.gamma) << "\n";
    out << "B = " << format_number(p.B) << "\n";
    out << "Ec_a = " << format_number(p.Ec_a) << "\n";
    out << "Pe_a = " << format_number(p.Pe_a) << "\n";
    out << "Re_a = " << format_number(p.Re_a) << "\n";
    out << "r_eta = " << format_number(p.r_eta) << "\n";
    out << "T0_hat = " << format_number(p.T0_hat) << "\n";
    out << "rho0_hat = " << format_number(p.rho0_hat) << "\n";
    out << "p0_hat = " << format_number(p.p0_hat) << "\n";
    out << "N = " << c.config.num_cells << "\n";
    out << "Co = " << format_number(c.config.courant) << "\n";
    out << "t_end_hat = " << format_number(c.config.t_end_hat) << "\n";
    out << "pulse_q_hat = " << format_number(c.config.pulse.q_hat) << "\n";
    out << "pulse_tP_hat = " << format_number(c.config.pulse.tP_hat) << "\n";
    out << "integrator = "
        << (c.config.integrator == Integrator::Splitting ? "splitting" : "rk4") << "\n";
    out << "probe_stride = " << c.config.probe_stride << "\n";
    std::string times;
    for (std::size_t i = 0; i < c.config.snapshot_times.size(); ++i) {
        if (i) times += ", ";
        times += format_number(c.config.snapshot_times[i]);
    }
    out << "snapshot_times = " << times << "\n";
    out << "pressure_monitor_from = " << format_number(c.config.pressure_monitor_from) << "\n";
    return out.str();
}

}  // namespace thermoac
