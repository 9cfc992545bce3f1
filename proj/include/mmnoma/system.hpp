#pragma once

#include <stdexcept>

#include "mmnoma/geometry.hpp"
#include "mmnoma/noma.hpp"
#include "mmnoma/pairing.hpp"

namespace mmnoma {

/// Full scenario description for one operating point.
struct SystemConfig {
    SectorRegion region_a{0.1, 0.0, 2.5, 6.0, 0.0};  // near-device wedge
    SectorRegion region_b{0.1, 8.0, 10.0, 2.0, 0.0}; // far-device ring
    int antennas = 4;
    double path_loss_exponent = 2.0;
    PowerAllocation power;
    RateTargets rates;
    double rho = 1.0; // transmit SNR, linear
    PairingScheme scheme = PairingScheme::RNRF;
    bool randomize_beam = false; // draw the beam direction per trial instead
                                 // of pinning it to the sector center

    void validate() const {
        region_a.validate();
        region_b.validate();
        power.validate();
        rates.validate();
        if (antennas < 1)
            throw std::invalid_argument("SystemConfig: antennas must be >= 1");
        if (!(rho > 0.0))
            throw std::invalid_argument("SystemConfig: rho must be positive");
        if (region_a.r_min != 0.0)
            throw std::invalid_argument("SystemConfig: near region must start at the BS");
        if (region_b.r_min < region_a.r_max)
            throw std::invalid_argument("SystemConfig: far ring must not overlap the near wedge");
        if (region_a.half_angle != region_b.half_angle ||
            region_a.center_direction != region_b.center_direction)
            throw std::invalid_argument("SystemConfig: regions must share angle and center");
    }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

} // namespace mmnoma
