#include "mclus/kde.hpp"

#include <algorithm>
#include <cmath>

namespace mclus {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779;

double sample_sd(std::span<const double> sample) {
    double mean = 0.0;
    for (double x : sample) mean += x;
    mean /= static_cast<double>(sample.size());
    double ss = 0.0;
    for (double x : sample) {
        const double d = x - mean;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(sample.size() - 1));
}

/// Golden-section maximization of f on [a, b] to absolute x tolerance.
template <typename F>
double golden_section_max(F&& f, double a, double b, double tol) {
    constexpr double invphi = 0.6180339887498949;    // (sqrt(5)-1)/2
    constexpr double invphi2 = 0.3819660112501051;   // 1 - invphi
    double width = b - a;
    double c = a + invphi2 * width;
    double d = a + invphi * width;
    double fc = f(c);
    double fd = f(d);
    while (width > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            width = b - a;
            c = a + invphi2 * width;
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            width = b - a;
            d = a + invphi * width;
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double gaussian_kernel(double x) noexcept {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double silverman_bandwidth(std::span<const double> sample, double alpha) {
    if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
    if (sample.size() < 2)
        throw InsufficientSample("bandwidth needs a sample of size >= 2, got " +
                                 std::to_string(sample.size()));
    const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
    if (*lo == *hi) return 0.0;
    const double n = static_cast<double>(sample.size());
    return 1.06 * sample_sd(sample) * std::pow(n, -1.0 / alpha);
}

double kde_evaluate(std::span<const double> sample, double h, double x) {
    if (!(h > 0.0)) throw InvalidBandwidth("bandwidth must be > 0");
    if (sample.empty()) throw InsufficientSample("kde needs a non-empty sample");
    double sum = 0.0;
    for (double xi : sample) sum += gaussian_kernel((x - xi) / h);
    if (sum == 0.0) return 0.0;
    return sum / (static_cast<double>(sample.size()) * h);
}

double estimate_mode(std::span<const double> sample, double h, const KdeConfig& config) {
    config.validate();
    if (sample.empty()) throw InsufficientSample("mode estimation needs a non-empty sample");
    if (sample.size() == 1) return sample[0];
    const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) return lo;
    if (!(h > 0.0)) throw InvalidBandwidth("bandwidth must be > 0 for a non-constant sample");

    const auto density = [&](double x) { return kde_evaluate(sample, h, x); };

    const int grid = config.grid_points;
    const double step = (hi - lo) / static_cast<double>(grid - 1);
    int best = 0;
    double best_f = density(lo);
    for (int i = 1; i < grid; ++i) {
        const double f = density(lo + step * static_cast<double>(i));
        if (f > best_f) {  // strict: ties keep the smallest x
            best_f = f;
            best = i;
        }
    }

    const double a = (best == 0) ? lo : lo + step * static_cast<double>(best - 1);
    const double b = (best == grid - 1) ? hi : lo + step * static_cast<double>(best + 1);
    const double tol = config.refine_tolerance * (hi - lo);
    return golden_section_max(density, a, b, tol);
}

double estimate_mode(std::span<const double> sample, const KdeConfig& config) {
    config.validate();
    if (sample.empty()) throw InsufficientSample("mode estimation needs a non-empty sample");
    if (sample.size() == 1) return sample[0];
    const auto [lo, hi] = std::minmax_element(sample.begin(), sample.end());
    if (*lo == *hi) return *lo;
    return estimate_mode(sample, silverman_bandwidth(sample, config.alpha), config);
}

}  // namespace mclus
