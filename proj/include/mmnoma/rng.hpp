#pragma once

#include <cmath>
#include <cstdint>

namespace mmnoma {

/// Counter-based random stream: each (seed, counter) pair yields an
/// independent, reproducible sequence, so Monte Carlo trials can be
/// assigned to threads in any order without changing the results.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : state_(mix(seed)) {}

    RandomStream(std::uint64_t master_seed, std::uint64_t counter)
        : state_(mix(master_seed ^ mix(counter * 0x9E3779B97F4A7C15ULL + 1))) {}

    using result_type = std::uint64_t;
    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~0ULL; }

    result_type operator()() { return next(); }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal, Box-Muller (one value per call, pair cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        have_cached_ = true;
        return r * std::cos(a);
    }

    /// Exponential with unit mean.
    double exponential() {
        double u = uniform();
        while (u <= 0.0)
            u = uniform();
        return -std::log(u);
    }

    /// Poisson count by the product-of-uniforms method; adequate for the
    /// moderate means used here (mu below ~30).
    int poisson(double mu) {
        const double limit = std::exp(-mu);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace mmnoma
