#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "mmnoma/rng.hpp"

namespace mmnoma {

/// Wedge-shaped sector (r_min = 0) or sector ring, centered on the beam
/// direction. Angles are in the normalized-direction convention: the
/// half-width and center live on the same scale as the array response
/// argument, and the region measure is half_angle * (r_max^2 - r_min^2).
struct SectorRegion {
    double half_angle = 0.1;       // normalized-direction half-width
    double r_min = 0.0;            // meters
    double r_max = 1.0;            // meters
    double density = 1.0;          // devices per unit area
    double center_direction = 0.0; // normalized direction in [-1, 1]

    double measure() const { return half_angle * (r_max * r_max - r_min * r_min); }
    double mean_count() const { return measure() * density; }

    void validate() const {
        if (!(half_angle > 0.0))
            throw std::invalid_argument("SectorRegion: half_angle must be positive");
        if (!(r_min >= 0.0 && r_min < r_max))
            throw std::invalid_argument("SectorRegion: need 0 <= r_min < r_max");
        if (!(density > 0.0))
            throw std::invalid_argument("SectorRegion: density must be positive");
        if (!(center_direction >= -1.0 && center_direction <= 1.0))
            throw std::invalid_argument("SectorRegion: center_direction outside [-1, 1]");
    }
};

/// A deployed device: polar position plus its small-scale fading gain.
struct DevicePoint {
    double distance = 0.0;             // meters
    double direction = 0.0;            // normalized direction
    std::complex<double> gain{0.0, 0.0}; // CN(0,1) fading coefficient
};

namespace detail {

inline DevicePoint sample_point(const SectorRegion& region, RandomStream& rng) {
    DevicePoint p;
    // inverse-CDF of the area-uniform radial law
    const double u = rng.uniform();
    p.distance = std::sqrt(region.r_min * region.r_min +
                           u * (region.r_max * region.r_max - region.r_min * region.r_min));
    p.direction = region.center_direction + region.half_angle * (2.0 * rng.uniform() - 1.0);
    const double inv_sqrt2 = 0.70710678118654752440;
    p.gain = {rng.normal() * inv_sqrt2, rng.normal() * inv_sqrt2};
    return p;
}

} // namespace detail

/// One HPPP realization over the region: Poisson count, area-uniform points.
inline std::vector<DevicePoint> sample_deployment(const SectorRegion& region, RandomStream& rng) {
    region.validate();
    const int n = rng.poisson(region.mean_count());
    std::vector<DevicePoint> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        points.push_back(detail::sample_point(region, rng));
    return points;
}

/// HPPP realization conditioned on at least one device, by rejection.
inline std::vector<DevicePoint> sample_deployment_nonempty(const SectorRegion& region,
                                                           RandomStream& rng,
                                                           long retry_cap = 1000000) {
    for (long attempt = 0; attempt < retry_cap; ++attempt) {
        auto points = sample_deployment(region, rng);
        if (!points.empty())
            return points;
    }
    throw std::runtime_error("sample_deployment_nonempty: retry cap exceeded (mean count " +
                             std::to_string(region.mean_count()) + ")");
}

/// Density of a single HPPP point's location: uniform over the region area.
inline double pdf_uniform_point(const SectorRegion& region) {
    region.validate();
    return 1.0 / region.measure();
}

/// Density of the minimum device distance, conditioned on a nonempty region.
inline double pdf_nearest_distance(const SectorRegion& region, double r) {
    region.validate();
    if (r < region.r_min || r > region.r_max)
        return 0.0;
    const double dl = region.half_angle * region.density;
    const double span = region.r_max * region.r_max - region.r_min * region.r_min;
    return 2.0 * dl * r * std::exp(-dl * (r * r - region.r_min * region.r_min)) /
           (1.0 - std::exp(-dl * span));
}

/// Density of the maximum device distance, conditioned on a nonempty region.
inline double pdf_farthest_distance(const SectorRegion& region, double r) {
    region.validate();
    if (r < region.r_min || r > region.r_max)
        return 0.0;
    const double dl = region.half_angle * region.density;
    const double span = region.r_max * region.r_max - region.r_min * region.r_min;
    return 2.0 * dl * r * std::exp(-dl * (region.r_max * region.r_max - r * r)) /
           (1.0 - std::exp(-dl * span));
}

} // namespace mmnoma
