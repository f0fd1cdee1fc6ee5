#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "thermoac/metrics.hpp"

using namespace thermoac;

TEST_CASE("l2_error basics") {
    const int n = 50;
    const double dx = 1.0 / n;
    const FieldSnapshot a{Eigen::ArrayXd::Constant(n, 1.3), Staggering::HalfNodes, dx};
    CHECK(l2_error(a, a) == 0.0);

    const FieldSnapshot b{Eigen::ArrayXd::Constant(n, 1.4), Staggering::HalfNodes, dx};
    // Uniform offset of 0.1 on the unit domain has L2 norm 0.1.
    CHECK(l2_error(a, b) == doctest::Approx(0.1).epsilon(1e-13));

    Eigen::ArrayXd single = Eigen::ArrayXd::Constant(n, 1.3);
    single[7] += 0.25;
    const FieldSnapshot c{single, Staggering::HalfNodes, dx};
    CHECK(l2_error(a, c) == doctest::Approx(0.25 * std::sqrt(dx)).epsilon(1e-13));
}

TEST_CASE("l2_error rejects mismatched snapshots") {
    const FieldSnapshot a{Eigen::ArrayXd::Zero(4), Staggering::HalfNodes, 0.25};
    const FieldSnapshot b{Eigen::ArrayXd::Zero(4), Staggering::Nodes, 0.25};
    const FieldSnapshot c{Eigen::ArrayXd::Zero(5), Staggering::HalfNodes, 0.25};
    CHECK_THROWS_AS(l2_error(a, b), ValidationError);
    CHECK_THROWS_AS(l2_error(a, c), ValidationError);
}

TEST_CASE("moving_median flattens a baseline and keeps edges sane") {
    std::vector<double> ramp(11);
    for (std::size_t i = 0; i < ramp.size(); ++i) ramp[i] = static_cast<double>(i);
    const auto med = moving_median(ramp, 3);
    CHECK(med[5] == 5.0);
    CHECK(med[0] == 0.5);   // truncated two-sample window
    CHECK(med[10] == 9.5);
}

TEST_CASE("dispersion metrics on a constant series vanish") {
    std::vector<double> series(200, 1.00287);
    const auto m = dispersion_metrics(series, 1.00287, 0.01);
    CHECK(m.max_undershoot == 0.0);
    CHECK(m.oscillation_energy == 0.0);
}

TEST_CASE("monotone series above the reference has zero undershoot") {
    std::vector<double> series;
    for (int i = 0; i < 300; ++i) series.push_back(1.0 + 1e-4 * i);
    const auto m = dispersion_metrics(series, 1.0, 0.02);
    CHECK(m.max_undershoot == 0.0);
}

TEST_CASE("synthetic sine ripple is measured within 5 percent") {
    const double T0 = 1.0, amplitude = 3.7e-4;
    const double dt = 0.01;
    std::vector<double> series;
    // 100 samples per period; sample 75 of each period hits the trough.
    for (int i = 0; i < 5000; ++i)
        series.push_back(T0 + amplitude * std::sin(2.0 * std::numbers::pi * i / 100.0));
    const auto m = dispersion_metrics(series, T0, dt);
    CHECK(m.max_undershoot == doctest::Approx(amplitude).epsilon(0.05));
    CHECK(m.oscillation_energy > 0.0);
}

TEST_CASE("oscillation energy ranks ringing above smooth series") {
    const double dt = 0.005;
    std::vector<double> smooth, ringing;
    for (int i = 0; i < 4000; ++i) {
        const double t = i * dt;
        const double base = std::exp(-0.1 * t) * (1.0 + 0.5 * std::sin(0.3 * t));
        smooth.push_back(base);
        ringing.push_back(base + 0.05 * std::sin(2.0 * std::numbers::pi * t / (20.0 * dt)));
    }
    const auto ms = dispersion_metrics(smooth, 0.0, dt);
    const auto mr = dispersion_metrics(ringing, 0.0, dt);
    CHECK(mr.oscillation_energy > 10.0 * ms.oscillation_energy);
}
