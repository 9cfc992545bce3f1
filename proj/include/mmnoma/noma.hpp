#pragma once

#include <cmath>
#include <stdexcept>

namespace mmnoma {

/// NOMA power split between the paired devices; the far device gets the
/// larger share so the near device can cancel it first.
struct PowerAllocation {
    double near_fraction = 0.25; // beta1^2
    double far_fraction = 0.75;  // beta2^2

    void validate() const {
        if (std::fabs(near_fraction + far_fraction - 1.0) > 1e-12)
            throw std::invalid_argument("PowerAllocation: fractions must sum to 1");
        if (!(near_fraction > 0.0 && near_fraction < far_fraction && far_fraction < 1.0))
            throw std::invalid_argument("PowerAllocation: need 0 < near < far < 1");
    }
};

/// QoS target rates in bits per channel use, with the SINR thresholds
/// they imply.
struct RateTargets {
    double near_rate = 4.0; // R1
    double far_rate = 1.5;  // R2

    double near_threshold() const { return std::exp2(near_rate) - 1.0; } // eps_A
    double far_threshold() const { return std::exp2(far_rate) - 1.0; }   // eps_B

    void validate() const {
        if (!(near_rate > 0.0 && far_rate > 0.0))
            throw std::invalid_argument("RateTargets: rates must be positive");
    }
};

/// Everything observed in one Monte Carlo realization.
struct TrialOutcome {
    bool near_outage = false;
    bool far_outage = false;
    double noma_rate = 0.0;
    bool oma_near_outage = false;
    bool oma_far_outage = false;
    double oma_rate = 0.0;
};

/// SINR at the near device while decoding the far device's signal (SIC step).
inline double sinr_far_at_near(double g_near, double rho, const PowerAllocation& pw) {
    return rho * g_near * pw.far_fraction / (rho * g_near * pw.near_fraction + 1.0);
}

/// SNR of the near device decoding its own signal after cancellation.
inline double snr_near(double g_near, double rho, const PowerAllocation& pw) {
    return rho * g_near * pw.near_fraction;
}

/// SINR at the far device, treating the near device's signal as noise.
inline double sinr_far(double g_far, double rho, const PowerAllocation& pw) {
    return rho * g_far * pw.far_fraction / (rho * g_far * pw.near_fraction + 1.0);
}

/// Near device is in outage unless it clears both the SIC threshold and
/// its own-rate threshold.
inline bool near_outage(double g_near, double rho, const PowerAllocation& pw,
                        const RateTargets& rt) {
    return !(sinr_far_at_near(g_near, rho, pw) > rt.far_threshold() &&
             snr_near(g_near, rho, pw) > rt.near_threshold());
}

inline bool far_outage(double g_far, double rho, const PowerAllocation& pw,
                       const RateTargets& rt) {
    return sinr_far(g_far, rho, pw) < rt.far_threshold();
}

/// Per-trial NOMA outage sum rate: each device contributes its target rate
/// when not in outage.
inline double noma_outage_sum_rate(bool near_out, bool far_out, const RateTargets& rt) {
    return (near_out ? 0.0 : rt.near_rate) + (far_out ? 0.0 : rt.far_rate);
}

struct OmaOutcome {
    bool near_outage = false;
    bool far_outage = false;
    double rate = 0.0;
};

/// OMA baseline: each device gets half a resource block, achieving
/// (1/2) log2(1 + rho g). A device is in outage when that falls short of
/// its target rate; surviving devices contribute the target rate, so the
/// two schemes are compared at equal delivered QoS.
inline OmaOutcome oma_trial(double g_near, double g_far, double rho, const RateTargets& rt) {
    OmaOutcome out;
    const double rate_near = 0.5 * std::log2(1.0 + rho * g_near);
    const double rate_far = 0.5 * std::log2(1.0 + rho * g_far);
    out.near_outage = rate_near < rt.near_rate;
    out.far_outage = rate_far < rt.far_rate;
    out.rate = (out.near_outage ? 0.0 : rt.near_rate) + (out.far_outage ? 0.0 : rt.far_rate);
    return out;
}

} // namespace mmnoma
