#include "thermoac/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace thermoac {

double l2_error(const FieldSnapshot& sol, const FieldSnapshot& ref) {
    if (sol.staggering != ref.staggering)
        throw ValidationError("l2_error: staggering mismatch between solution and reference");
    if (sol.values.size() != ref.values.size() || sol.dx_hat != ref.dx_hat)
        throw ValidationError("l2_error: snapshots live on different grids");
    return std::sqrt(sol.dx_hat * (sol.values - ref.values).square().sum());
}

std::vector<double> moving_median(std::span<const double> series, int window) {
    if (window < 1) throw ValidationError("moving_median: window must be >= 1");
    const auto n = static_cast<long>(series.size());
    const long half = window / 2;
    std::vector<double> out(series.size());
    std::vector<double> buf;
    buf.reserve(window);
    for (long i = 0; i < n; ++i) {
        const long lo = std::max<long>(0, i - half);
        const long hi = std::min(n - 1, i + half);
        buf.assign(series.begin() + lo, series.begin() + hi + 1);
        const auto mid = buf.begin() + (buf.size() - 1) / 2;
        std::nth_element(buf.begin(), mid, buf.end());
        double med = *mid;
        if (buf.size() % 2 == 0) {
            const double lower = *mid;
            std::nth_element(buf.begin(), mid + 1, buf.end());
            med = 0.5 * (lower + *(mid + 1));
        }
        out[static_cast<std::size_t>(i)] = med;
    }
    return out;
}

DispersionMetrics dispersion_metrics(std::span<const double> series, double T0_hat,
                                     double sample_spacing_t) {
    if (series.empty()) throw ValidationError("dispersion_metrics: empty series");
    if (!(sample_spacing_t > 0))
        throw ValidationError("dispersion_metrics: sample spacing must be > 0");

    DispersionMetrics m;
    const double min_value = *std::min_element(series.begin(), series.end());
    m.max_undershoot = std::max(0.0, T0_hat - min_value);

    // Window covering one acoustic transit (unit dimensionless time), odd.
    int window = static_cast<int>(std::lround(1.0 / sample_spacing_t));
    window = std::max(window, 1);
    if (window % 2 == 0) ++window;
    const std::vector<double> baseline = moving_median(series, window);

    double energy = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double r1 = series[i] - baseline[i];
        const double r0 = series[i - 1] - baseline[i - 1];
        energy += (r1 - r0) * (r1 - r0);
    }
    m.oscillation_energy = energy;
    return m;
}

}  // namespace thermoac
