#ifndef MCLUS_KDE_HPP
#define MCLUS_KDE_HPP

#include <span>

#include "mclus/errors.hpp"

namespace mclus {

/// Which distances feed the bandwidth's standard deviation: the specific
/// sample being density-estimated, or the pool of all pairwise distances.
enum class SigmaScope { per_sample, global };

struct KdeConfig {
    double alpha = 5.0;                          // bandwidth exponent, h = 1.06 sd n^(-1/alpha)
    SigmaScope sigma_scope = SigmaScope::per_sample;
    int grid_points = 512;                       // mode search grid, endpoints included
    double refine_tolerance = 1e-9;              // x tolerance relative to sample range

    void validate() const {
        if (!(alpha > 0.0)) throw ConfigError("alpha must be > 0");
        if (grid_points < 2) throw ConfigError("grid_points must be >= 2");
        if (!(refine_tolerance > 0.0)) throw ConfigError("refine_tolerance must be > 0");
    }
};

/// Standard normal density, the kernel used throughout.
double gaussian_kernel(double x) noexcept;

/// h = 1.06 sd(sample) size^(-1/alpha), with the (size-1)-denominator
/// standard deviation. Returns exactly 0 for a constant sample.
double silverman_bandwidth(std::span<const double> sample, double alpha);

/// Kernel density estimate (1/(n h)) sum Ker((x - X_i)/h).
double kde_evaluate(std::span<const double> sample, double h, double x);

/// Argmax of the KDE over [min(sample), max(sample)]: scan of
/// `grid_points` equally spaced points (ties toward the smallest x), then
/// golden-section refinement around the best grid point down to
/// refine_tolerance * range. Degenerate cases: a single-value sample
/// returns that value; a constant sample returns the common value.
double estimate_mode(std::span<const double> sample, double h, const KdeConfig& config = {});

/// As above with h from silverman_bandwidth(sample, config.alpha).
double estimate_mode(std::span<const double> sample, const KdeConfig& config = {});

}  // namespace mclus

#endif  // MCLUS_KDE_HPP
