#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "mmnoma/geometry.hpp"

namespace mmnoma {

inline constexpr double kPi = 3.14159265358979323846;

/// A single random beam from a uniform linear array.
struct Beam {
    double direction = 0.0; // normalized direction in [-1, 1]
    int antennas = 1;
};

/// Post-beamforming scalar channel power |h^H p|^2.
struct EffectiveGain {
    double value = 0.0;
};

/// ULA steering vector: element n is e^{-j pi n theta} / sqrt(M).
inline std::vector<std::complex<double>> steering_vector(double theta, int antennas) {
    std::vector<std::complex<double>> a(static_cast<std::size_t>(antennas));
    const double scale = 1.0 / std::sqrt(static_cast<double>(antennas));
    for (int n = 0; n < antennas; ++n)
        a[static_cast<std::size_t>(n)] = std::polar(scale, -kPi * n * theta);
    return a;
}

/// Fejer kernel F_M(x) = sin^2(pi M x / 2) / (M sin^2(pi x / 2)).
/// At the zeros of sin(pi x / 2) the limit is M.
inline double fejer_kernel(double x, int antennas) {
    const double s = std::sin(0.5 * kPi * x);
    if (std::fabs(s) < 1e-9)
        return static_cast<double>(antennas);
    const double sm = std::sin(0.5 * kPi * antennas * x);
    return (sm * sm) / (antennas * s * s);
}

/// Small-|x| expansion of the Fejer kernel: M (1 - pi^2 M^2 x^2 / 12).
inline double fejer_small_delta_approx(double x, int antennas) {
    const double m = static_cast<double>(antennas);
    return m * (1.0 - kPi * kPi * m * m * x * x / 12.0);
}

/// Effective channel gain |alpha|^2 F_M(nu - theta) / (1 + d^alpha).
inline EffectiveGain effective_gain(const DevicePoint& point, const Beam& beam,
                                    double path_loss_exponent) {
    const double fading = std::norm(point.gain);
    const double kernel = fejer_kernel(beam.direction - point.direction, beam.antennas);
    const double path_loss = 1.0 + std::pow(point.distance, path_loss_exponent);
    return {fading * kernel / path_loss};
}

} // namespace mmnoma
