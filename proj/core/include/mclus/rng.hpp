#ifndef MCLUS_RNG_HPP
#define MCLUS_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace mclus {

// All randomness in the library flows through this header so that results
// are reproducible from a single seed. Distribution transforms are written
// out explicitly instead of using std::*_distribution, whose sequences are
// implementation-defined.

/// SplitMix64 finalizer. Used to derive independent stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed for stream `index` derived from `master`. Streams for distinct
/// indices are independent for practical purposes.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return splitmix64(master ^ splitmix64(index + 1));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1); safe as input to inverse CDFs.
    double uniform_open01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return engine_() % bound; }

    /// Standard normal via Box-Muller; generates values in pairs.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Cauchy(location, scale) by inverse CDF.
    double cauchy(double location, double scale) {
        const double u = uniform_open01();
        return location + scale * std::tan(3.14159265358979323846 * (u - 0.5));
    }

    /// Bernoulli with P(1) = p.
    int bernoulli(double p) { return uniform01() < p ? 1 : 0; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace mclus

#endif  // MCLUS_RNG_HPP
