#pragma once

#include <Eigen/Dense>
#include <span>

namespace thermoac {

/// Compensated (Kahan) accumulator; keeps long sums accurate to ~1 ulp.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

/// Compensated sum of all entries.
inline double kahan_total(const Eigen::ArrayXd& a) {
    KahanSum s;
    for (Eigen::Index i = 0; i < a.size(); ++i) s.add(a[i]);
    return s.value();
}

/// Compensated sum of (a[i] - ref); accurate when the deviations are small
/// against the reference level.
inline double kahan_total_deviation(const Eigen::ArrayXd& a, double ref) {
    KahanSum s;
    for (Eigen::Index i = 0; i < a.size(); ++i) s.add(a[i] - ref);
    return s.value();
}

/// Least-squares slope of y against x.
inline double least_squares_slope(std::span<const double> x, std::span<const double> y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace thermoac
