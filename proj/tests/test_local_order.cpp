#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle_linear.hpp"
#include "test_support.hpp"
#include "thermoac/integrators.hpp"
#include "thermoac/numerics.hpp"

using namespace thermoac;

namespace {

DimensionlessParams oracle_params() {
    DimensionlessParams p;
    p.gamma = 1.8;
    p.B = 0.9;
    p.Ec_a = 0.6;
    p.Pe_a = 5.0;
    p.Re_a = 6.0;
    p.Pr = p.Pe_a / p.Re_a;
    p.r_eta = 0.5;
    p.T0_hat = 1.1;
    p.rho0_hat = 0.8;
    return p;
}

struct Profiles {
    Eigen::ArrayXd rho, v, T;
};

Profiles smooth_profiles(const StaggeredGrid& g, const DimensionlessParams& p) {
    Profiles out;
    out.rho.resize(g.num_cells);
    out.T.resize(g.num_cells);
    out.v.resize(g.num_nodes());
    for (int i = 0; i < g.num_cells; ++i) {
        out.rho[i] = p.rho0_hat * (1.0 + 0.01 * std::sin(2.0 * std::numbers::pi * g.center_x(i)));
        out.T[i] = p.T0_hat + 0.01 * std::cos(std::numbers::pi * g.center_x(i));
    }
    for (int n = 0; n < g.num_nodes(); ++n)
        out.v[n] = 0.01 * std::sin(std::numbers::pi * g.node_x(n));
    out.v[0] = out.v[g.num_cells] = 0.0;
    return out;
}

double norm(const Eigen::ArrayXd& a) { return std::sqrt(a.square().sum()); }

}  // namespace

TEST_CASE("splitting local error is third order against the exact flow") {
    const auto p = oracle_params();
    const auto g = StaggeredGrid::with_cells(4);
    const auto sys = test::build_generator(p, g.num_cells);
    const Profiles prof = smooth_profiles(g, p);
    const test::LinearState x0{prof.rho, prof.v.segment(1, g.num_cells - 1), prof.T};

    std::vector<double> log_dt, log_err;
    for (double dt : {0.08, 0.04, 0.02, 0.01, 0.005}) {
        // Scheme-native staggered data (see the chart note in oracle_linear.hpp).
        const test::LinearState in = test::staggered_input(sys, x0, dt);
        FieldState s;
        s.rho = in.rho;
        s.T = in.T;
        s.v = prof.v;
        s.q = Eigen::ArrayXd::Zero(g.num_nodes());
        s.Pi = Eigen::ArrayXd::Zero(g.num_cells);
        update_constitutive(s, p, g, 0.0, 0.0);
        splitting_step(s, p, g, dt, zero_flux(), 0.0);

        const test::LinearState want = test::staggered_target(sys, x0, dt);
        const double err = norm(s.v.segment(1, g.num_cells - 1) - want.v_interior) +
                           norm(s.T - want.T) + norm(s.rho - want.rho);
        REQUIRE(err > 1e-14);  // stay clear of roundoff before fitting
        log_dt.push_back(std::log(dt));
        log_err.push_back(std::log(err));
    }
    const double slope = least_squares_slope(log_dt, log_err);
    INFO("splitting local order ", slope);
    CHECK(slope > 2.7);
    CHECK(slope < 3.3);
}

TEST_CASE("RK4 local error is fifth order against the exact flow") {
    const auto p = oracle_params();
    const auto g = StaggeredGrid::with_cells(4);
    const auto sys = test::build_generator(p, g.num_cells);
    const Profiles prof = smooth_profiles(g, p);
    const test::LinearState x0{prof.rho, prof.v.segment(1, g.num_cells - 1), prof.T};

    std::vector<double> log_dt, log_err;
    for (double dt : {0.08, 0.04, 0.02, 0.01, 0.005}) {
        MolState s{prof.rho, prof.v, prof.T};
        rk4_step(s, p, g, dt, zero_flux(), 0.0);
        const test::LinearState at_dt = test::exact_flow(sys, x0, dt);
        const double err = norm(s.v.segment(1, g.num_cells - 1) - at_dt.v_interior) +
                           norm(s.T - at_dt.T) + norm(s.rho - at_dt.rho);
        REQUIRE(err > 1e-14);
        log_dt.push_back(std::log(dt));
        log_err.push_back(std::log(err));
    }
    const double slope = least_squares_slope(log_dt, log_err);
    INFO("rk4 local order ", slope);
    CHECK(slope > 4.6);
    CHECK(slope < 5.4);
}

TEST_CASE("implementation right-hand side matches the hand-assembled generator") {
    const auto p = oracle_params();
    const auto g = StaggeredGrid::with_cells(6);
    const auto sys = test::build_generator(p, g.num_cells);
    const Profiles prof = smooth_profiles(g, p);
    const test::LinearState x0{prof.rho, prof.v.segment(1, g.num_cells - 1), prof.T};

    const MolState s{prof.rho, prof.v, prof.T};
    const MolTendencies f = semi_discrete_rhs(s, p, g, 0.0, zero_flux());
    const Eigen::VectorXd Ax = sys.A * test::pack(sys, x0);
    const test::LinearState fx = test::unpack(sys, Ax);
    CHECK(test::approx_array(f.rho, fx.rho, 1e-12));
    CHECK(test::approx_array(f.v.segment(1, g.num_cells - 1), fx.v_interior, 1e-12));
    CHECK(test::approx_array(f.T, fx.T, 1e-12));
}

TEST_CASE("wave reduction matches the decoupled leapfrog exactly") {
    // B = 0 and no dissipation turn the composite step into the bare
    // quasi-symplectic wave step.
    DimensionlessParams p;
    p.gamma = 1.0;
    p.B = 0.0;
    p.Ec_a = 0.0;
    p.Pe_a = std::numeric_limits<double>::infinity();
    p.Re_a = std::numeric_limits<double>::infinity();
    p.r_eta = 0.0;
    p.T0_hat = 1.0;
    p.rho0_hat = 0.9;

    const auto g = StaggeredGrid::with_cells(64);
    const double dt = g.dx_hat;  // Co = 1
    const int spike_cell = 32;

    FieldState s;  // staggered initial data assembled directly
    s.rho = Eigen::ArrayXd::Constant(g.num_cells, p.rho0_hat);
    s.rho[spike_cell] += 0.01;
    s.v = Eigen::ArrayXd::Zero(g.num_nodes());
    s.T = Eigen::ArrayXd::Constant(g.num_cells, p.T0_hat);
    s.q = Eigen::ArrayXd::Zero(g.num_nodes());
    s.Pi = Eigen::ArrayXd::Zero(g.num_cells);

    test::LeapfrogWave oracle{p.rho0_hat, p.gamma, g.dx_hat, dt, s.rho, s.v};

    ScratchArrays scratch;
    for (int k = 1; k <= 20; ++k) {
        splitting_step(s, p, g, dt, zero_flux(), (k - 1) * dt, scratch);
        oracle.step();
        CHECK(test::approx_array(s.rho, oracle.rho, 1e-15));
        CHECK(test::approx_array(s.v, oracle.v, 1e-15));
        CHECK((s.T == p.T0_hat).all());
        // The density signal spreads exactly one cell per step at Co = 1.
        for (int i = 0; i < g.num_cells; ++i)
            if (std::abs(i - spike_cell) >= k) CHECK(s.rho[i] == p.rho0_hat);
    }
}
