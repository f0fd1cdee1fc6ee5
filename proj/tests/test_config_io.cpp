#include <doctest.h>

#include <sstream>

#include "test_support.hpp"
#include "thermoac/config_file.hpp"
#include "thermoac/io.hpp"

using namespace thermoac;

namespace {

CaseFile sample_case() {
    CaseFile c;
    c.name = "wave_pe1e5";
    c.description = "weakly damped wave propagation";
    c.config.params = test::wave_test_groups();
    c.config.num_cells = 100;
    c.config.courant = 0.95;
    c.config.t_end_hat = 60.0;
    c.config.pulse = {0.001, 0.1};
    c.config.integrator = Integrator::Splitting;
    c.config.probe_stride = 1;
    c.config.snapshot_times = {0.25, 20.25, 40.25, 60.0};
    c.config.pressure_monitor_from = 2.0;
    return c;
}

}  // namespace

TEST_CASE("case file round-trip is exact") {
    const CaseFile c = sample_case();
    std::istringstream in(serialize_case_file(c));
    const CaseFile parsed = parse_case_file(in);
    CHECK(parsed.name == c.name);
    CHECK(parsed.description == c.description);
    CHECK(parsed.config.params.gamma == c.config.params.gamma);
    CHECK(parsed.config.params.B == c.config.params.B);
    CHECK(parsed.config.params.Ec_a == c.config.params.Ec_a);
    CHECK(parsed.config.params.Pe_a == c.config.params.Pe_a);
    CHECK(parsed.config.params.Re_a == c.config.params.Re_a);
    CHECK(parsed.config.params.r_eta == c.config.params.r_eta);
    CHECK(parsed.config.params.T0_hat == c.config.params.T0_hat);
    CHECK(parsed.config.params.rho0_hat == c.config.params.rho0_hat);
    CHECK(parsed.config.params.p0_hat == c.config.params.p0_hat);
    CHECK(parsed.config.num_cells == c.config.num_cells);
    CHECK(parsed.config.courant == c.config.courant);
    CHECK(parsed.config.t_end_hat == c.config.t_end_hat);
    CHECK(parsed.config.pulse.q_hat == c.config.pulse.q_hat);
    CHECK(parsed.config.pulse.tP_hat == c.config.pulse.tP_hat);
    CHECK(parsed.config.integrator == c.config.integrator);
    CHECK(parsed.config.probe_stride == c.config.probe_stride);
    CHECK(parsed.config.snapshot_times == c.config.snapshot_times);
    CHECK(parsed.config.pressure_monitor_from == c.config.pressure_monitor_from);
    // And the serialization itself is stable.
    CHECK(serialize_case_file(parsed) == serialize_case_file(c));
}

TEST_CASE("case file accepts inf and comments") {
    std::istringstream in(
        "# wave test\n"
        "case_name = demo\n"
        "gamma = 12.868\n"
        "B = 41.744\n"
        "Ec_a = 0.007\n"
        "Pe_a = 1e5\n"
        "Re_a = inf   # inviscid\n"
        "r_eta = 0\n"
        "T0_hat = 1.0028672138047139\n"
        "rho0_hat = 0.68666167664670663\n"
        "N = 100\n"
        "Co = 0.95\n"
        "t_end_hat = 60\n"
        "pulse_q_hat = 0.001\n"
        "pulse_tP_hat = 0.1\n"
        "integrator = splitting\n");
    const CaseFile c = parse_case_file(in);
    CHECK(std::isinf(c.config.params.Re_a));
    CHECK(c.config.params.Pr == 0.0);
    CHECK(c.config.params.p0_hat == 0.0);
    CHECK(c.config.probe_stride == 1);
    CHECK(c.config.snapshot_times.empty());
}

TEST_CASE("case file rejections") {
    const std::string base =
        "case_name = demo\ngamma = 2\nB = 1\nEc_a = 0.1\nPe_a = 100\nRe_a = 100\n"
        "r_eta = 0\nT0_hat = 1\nrho0_hat = 1\nN = 10\nCo = 0.9\nt_end_hat = 1\n"
        "pulse_q_hat = 0\npulse_tP_hat = 1\nintegrator = splitting\n";
    {
        std::istringstream in(base + "unknown_key = 3\n");
        CHECK_THROWS_AS(parse_case_file(in), ValidationError);
    }
    {
        std::istringstream in(base + "gamma = 2\n");  // duplicate
        CHECK_THROWS_AS(parse_case_file(in), ValidationError);
    }
    {
        std::istringstream in(std::string("case_name = x\n"));  // missing keys
        CHECK_THROWS_AS(parse_case_file(in), ValidationError);
    }
    {
        std::istringstream in(base + "pressure_monitor_from = abc\n");
        CHECK_THROWS_AS(parse_case_file(in), ValidationError);
    }
    {
        std::string bad = base;
        bad.replace(bad.find("integrator = splitting"), 22, "integrator = euler\xa0\xa0\xa0\xa0");
        std::istringstream in(bad);
        CHECK_THROWS_AS(parse_case_file(in), ValidationError);
    }
}

TEST_CASE("CSV float formatting is fixed-width scientific with 17 digits") {
    CHECK(format_float(1.0) == "1.0000000000000000e+00");
    CHECK(format_float(0.1) == "1.0000000000000001e-01");
    CHECK(format_float(std::numeric_limits<double>::infinity()) == "inf");
    // 17 significant digits round-trip every double exactly.
    for (double x : {-2.5e-300, 0.3333333333333333, 6.02214076e23, -0.0, 1e-17}) {
        CHECK(std::stod(format_float(x)) == x);
    }
}

TEST_CASE("probes CSV has the documented header and row shape") {
    ProbeSeries probes;
    probes.t = {0.0, 0.01};
    probes.t_half = {-0.005, 0.005};
    probes.T_front = {1.0, 1.1};
    probes.T_rear = {1.0, 1.0};
    probes.rho_front = {0.7, 0.7};
    probes.rho_rear = {0.7, 0.7};
    probes.p_front = {0.0, 0.1};
    probes.p_rear = {0.0, 0.0};
    probes.v_mid = {0.0, 0.0};
    probes.q0 = {0.0, 0.002};
    probes.q_mid = {0.0, 0.0};
    std::ostringstream out;
    write_probes_csv(out, probes);
    const std::string text = out.str();
    CHECK(text.rfind("t_hat,T_front,T_rear,rho_front_half,rho_rear_half,p_front,p_rear,v_mid,q0,"
                     "t_hat_half\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 3);
    CHECK(text.find("\r") == std::string::npos);
}
