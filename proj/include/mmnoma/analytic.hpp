#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mmnoma/channel.hpp"
#include "mmnoma/quadrature.hpp"
#include "mmnoma/special.hpp"
#include "mmnoma/system.hpp"

namespace mmnoma {

enum class DeviceRole { Near, Far };

inline const char* to_string(DeviceRole r) {
    return r == DeviceRole::Near ? "near" : "far";
}

/// Effective-gain thresholds for the outage events. The far threshold
/// covers the far device's own decoding; the near threshold additionally
/// covers the SIC step, hence the max. Infeasible means the SIC target
/// cannot be met at any gain and outage is certain.
struct ThresholdCoefficients {
    double eta_near = 0.0;
    double eta_far = 0.0;
    bool feasible = false;
};

inline ThresholdCoefficients thresholds(double rho, const PowerAllocation& pw,
                                        const RateTargets& rt) {
    ThresholdCoefficients tc;
    const double margin = pw.far_fraction - pw.near_fraction * rt.far_threshold();
    tc.feasible = margin > 0.0;
    if (!tc.feasible)
        return tc;
    tc.eta_far = rt.far_threshold() / (rho * margin);
    tc.eta_near = std::max(tc.eta_far, rt.near_threshold() / (rho * pw.near_fraction));
    return tc;
}

inline double clamp01(double p) { return std::clamp(p, 0.0, 1.0); }

namespace detail {

// Angular factor (2 + pi^2 M^2 Delta^2 / 18): the Fejer-kernel expansion
// integrated over the sector, divided by Delta.
inline double angular_factor(int antennas, double delta) {
    const double m = static_cast<double>(antennas);
    return 2.0 + kPi * kPi * m * m * delta * delta / 18.0;
}

// (Delta lambda)^{-(alpha+2)/2} / 2 * (gamma(alpha/2+1, dl*hi^2) - gamma(alpha/2+1, dl*lo^2))
inline double radial_gamma_term(double dl, double alpha, double lo, double hi) {
    const double s = 0.5 * alpha + 1.0;
    const double upper = lower_incomplete_gamma(s, dl * hi * hi);
    const double lower = lo > 0.0 ? lower_incomplete_gamma(s, dl * lo * lo) : 0.0;
    return 0.5 * std::pow(dl, -0.5 * (alpha + 2.0)) * (upper - lower);
}

} // namespace detail

/// Integral of r^{alpha+1} e^{dl r^2} over the far ring, by adaptive
/// quadrature. A closed form exists only for particular alpha; the alpha=2
/// form is kept as an oracle (see omega_closed_form_alpha2).
inline double omega_quadrature(double dl, double alpha, double r_lo, double r_hi) {
    return integrate_checked(
        [dl, alpha](double r) { return std::pow(r, alpha + 1.0) * std::exp(dl * r * r); },
        r_lo, r_hi, 1e-14, 1e-10);
}

/// Integration-by-parts closed form of omega for alpha = 2.
inline double omega_closed_form_alpha2(double dl, double r_lo, double r_hi) {
    auto antiderivative = [dl](double r) {
        return (dl * r * r - 1.0) * std::exp(dl * r * r) / (2.0 * dl * dl);
    };
    return antiderivative(r_hi) - antiderivative(r_lo);
}

// --- closed-form outage approximations (high SNR, small Delta) ---
// The *_unclamped variants preserve the raw asymptotic value, which keeps
// the scheme orderings meaningful even where the approximation exceeds 1.

inline double rnrf_near_outage_unclamped(const SystemConfig& cfg) {
    const auto tc = thresholds(cfg.rho, cfg.power, cfg.rates);
    if (!tc.feasible)
        return 1.0;
    const double alpha = cfg.path_loss_exponent;
    const double r = cfg.region_a.r_max;
    return tc.eta_near / cfg.antennas * detail::angular_factor(cfg.antennas, cfg.region_a.half_angle) *
           (0.5 + std::pow(r, alpha) / (alpha + 2.0));
}

inline double rnrf_far_outage_unclamped(const SystemConfig& cfg) {
    const auto tc = thresholds(cfg.rho, cfg.power, cfg.rates);
    if (!tc.feasible)
        return 1.0;
    const double alpha = cfg.path_loss_exponent;
    const double rb = cfg.region_b.r_max, rc = cfg.region_b.r_min;
    const double span = rb * rb - rc * rc;
    return tc.eta_far / (cfg.antennas * span) *
           detail::angular_factor(cfg.antennas, cfg.region_b.half_angle) *
           (0.5 * span + (std::pow(rb, alpha + 2.0) - std::pow(rc, alpha + 2.0)) / (alpha + 2.0));
}

inline double nnnf_near_outage_unclamped(const SystemConfig& cfg) {
    const auto tc = thresholds(cfg.rho, cfg.power, cfg.rates);
    if (!tc.feasible)
        return 1.0;
    const double delta = cfg.region_a.half_angle;
    const double dl = delta * cfg.region_a.density;
    const double r = cfg.region_a.r_max;
    const double depleted = 1.0 - std::exp(-dl * r * r);
    const double m = static_cast<double>(cfg.antennas);
    const double angular = 2.0 * delta + kPi * kPi * m * m * delta * delta * delta / 18.0;
    const double radial = depleted / (2.0 * dl) +
                          detail::radial_gamma_term(dl, cfg.path_loss_exponent, 0.0, r);
    return tc.eta_near * cfg.region_a.density / (m * depleted) * angular * radial;
}

inline double nnnf_far_outage_unclamped(const SystemConfig& cfg) {
    const auto tc = thresholds(cfg.rho, cfg.power, cfg.rates);
    if (!tc.feasible)
        return 1.0;
    const double delta = cfg.region_b.half_angle;
    const double dl = delta * cfg.region_b.density;
    const double rb = cfg.region_b.r_max, rc = cfg.region_b.r_min;
    const double depleted = 1.0 - std::exp(-dl * (rb * rb - rc * rc));
    const double m = static_cast<double>(cfg.antennas);
    const double angular = 2.0 * delta + kPi * kPi * m * m * delta * delta * delta / 18.0;
    const double radial = (std::exp(-dl * rc * rc) - std::exp(-dl * rb * rb)) / (2.0 * dl) +
                          detail::radial_gamma_term(dl, cfg.path_loss_exponent, rc, rb);
    return tc.eta_far * cfg.region_b.density / (m * depleted) * angular *
           std::exp(dl * rc * rc) * radial;
}

inline double nnff_far_outage_unclamped(const SystemConfig& cfg) {
    const auto tc = thresholds(cfg.rho, cfg.power, cfg.rates);
    if (!tc.feasible)
        return 1.0;
    const double delta = cfg.region_b.half_angle;
    const double dl = delta * cfg.region_b.density;
    const double rb = cfg.region_b.r_max, rc = cfg.region_b.r_min;
    const double depleted = 1.0 - std::exp(-dl * (rb * rb - rc * rc));
    const double m = static_cast<double>(cfg.antennas);
    const double angular = 2.0 * delta + kPi * kPi * m * m * delta * delta * delta / 18.0;
    const double omega = omega_quadrature(dl, cfg.path_loss_exponent, rc, rb);
    const double radial = (std::exp(dl * rb * rb) - std::exp(dl * rc * rc)) / (2.0 * dl) + omega;
    return tc.eta_far * cfg.region_b.density / (m * depleted) * angular *
           std::exp(-dl * rb * rb) * radial;
}

inline double rnrf_near_outage(const SystemConfig& cfg) {
    return clamp01(rnrf_near_outage_unclamped(cfg));
}
inline double rnrf_far_outage(const SystemConfig& cfg) {
    return clamp01(rnrf_far_outage_unclamped(cfg));
}
inline double nnnf_near_outage(const SystemConfig& cfg) {
    return clamp01(nnnf_near_outage_unclamped(cfg));
}
inline double nnnf_far_outage(const SystemConfig& cfg) {
    return clamp01(nnnf_far_outage_unclamped(cfg));
}
inline double nnff_far_outage(const SystemConfig& cfg) {
    return clamp01(nnff_far_outage_unclamped(cfg));
}

/// Dispatch on (scheme, role). NNFF shares the NNNF near form: the near
/// device is selected identically under both schemes.
inline double closed_form_outage_unclamped(const SystemConfig& cfg, PairingScheme scheme,
                                           DeviceRole role) {
    if (role == DeviceRole::Near)
        return scheme == PairingScheme::RNRF ? rnrf_near_outage_unclamped(cfg)
                                             : nnnf_near_outage_unclamped(cfg);
    switch (scheme) {
    case PairingScheme::RNRF: return rnrf_far_outage_unclamped(cfg);
    case PairingScheme::NNNF: return nnnf_far_outage_unclamped(cfg);
    case PairingScheme::NNFF: return nnff_far_outage_unclamped(cfg);
    }
    throw std::logic_error("closed_form_outage: unknown scheme");
}

inline double closed_form_outage(const SystemConfig& cfg, PairingScheme scheme, DeviceRole role) {
    return clamp01(closed_form_outage_unclamped(cfg, scheme, role));
}

/// Ground-truth outage probability: 2-D adaptive quadrature of the exact
/// integrand against the scheme's location PDF, using the exact Fejer
/// kernel. Valid at any SNR and Delta.
inline double exact_outage_quadrature(const SystemConfig& cfg, PairingScheme scheme,
                                      DeviceRole role) {
    cfg.validate();
    const auto tc = thresholds(cfg.rho, cfg.power, cfg.rates);
    if (!tc.feasible)
        return 1.0;
    const double eta = role == DeviceRole::Near ? tc.eta_near : tc.eta_far;
    const SectorRegion& region = role == DeviceRole::Near ? cfg.region_a : cfg.region_b;
    const double alpha = cfg.path_loss_exponent;
    const int m = cfg.antennas;

    auto radial_pdf = [&](double r) -> double {
        const double uniform = 2.0 * r / (region.r_max * region.r_max - region.r_min * region.r_min);
        if (role == DeviceRole::Near)
            return scheme == PairingScheme::RNRF ? uniform : pdf_nearest_distance(region, r);
        switch (scheme) {
        case PairingScheme::RNRF: return uniform;
        case PairingScheme::NNNF: return pdf_nearest_distance(region, r);
        case PairingScheme::NNFF: return pdf_farthest_distance(region, r);
        }
        return 0.0;
    };

    // Integrand is even in the beam-direction offset; integrate half the
    // sector and divide by Delta instead of 2*Delta.
    auto outer = [&](double t) {
        const double kernel = fejer_kernel(t, m);
        return integrate_checked(
            [&](double r) {
                const double x = eta * (1.0 + std::pow(r, alpha)) / kernel;
                return radial_pdf(r) * (1.0 - std::exp(-x));
            },
            region.r_min, region.r_max, 1e-13, 1e-9);
    };
    return integrate_checked(outer, 0.0, region.half_angle, 1e-12, 1e-8) / region.half_angle;
}

/// Small-Delta expansion terms behind the scheme comparison, plus the
/// ordering verdicts evaluated from the (unclamped) closed forms.
struct ComparisonTerms {
    double l_a_star = 0.0;  // NNNF/NNFF near geometric factor
    double l_b_star = 0.0;  // NNNF far geometric factor
    double l_b_prime = 0.0; // NNFF far geometric factor
    bool near_ordering_ok = false; // P(RNRF) > P(NNNF) = P(NNFF)
    bool far_ordering_ok = false;  // P(NNNF) < P(RNRF) < P(NNFF)
};

inline ComparisonTerms comparison_terms(const SystemConfig& cfg) {
    ComparisonTerms out;
    const double alpha = cfg.path_loss_exponent;
    {
        const double dl = cfg.region_a.half_angle * cfg.region_a.density;
        const double r = cfg.region_a.r_max;
        out.l_a_star = lower_incomplete_gamma(0.5 * alpha + 1.0, dl * r * r) /
                       (2.0 * std::pow(dl, 0.5 * alpha) * (1.0 - std::exp(-dl * r * r)));
    }
    {
        const double dl = cfg.region_b.half_angle * cfg.region_b.density;
        const double rb = cfg.region_b.r_max, rc = cfg.region_b.r_min;
        out.l_b_star =
            std::exp(dl * rc * rc) *
            ((std::exp(-dl * rc * rc) - std::exp(-dl * rb * rb)) / (2.0 * dl) +
             detail::radial_gamma_term(dl, alpha, rc, rb));
        out.l_b_prime =
            std::exp(-dl * rb * rb) *
            ((std::exp(dl * rb * rb) - std::exp(dl * rc * rc)) / (2.0 * dl) +
             omega_quadrature(dl, alpha, rc, rb));
    }
    const double near_rnrf = rnrf_near_outage_unclamped(cfg);
    const double near_nnnf = nnnf_near_outage_unclamped(cfg);
    const double far_rnrf = rnrf_far_outage_unclamped(cfg);
    const double far_nnnf = nnnf_far_outage_unclamped(cfg);
    const double far_nnff = nnff_far_outage_unclamped(cfg);
    out.near_ordering_ok = near_rnrf > near_nnnf;
    out.far_ordering_ok = far_nnnf < far_rnrf && far_rnrf < far_nnff;
    return out;
}

} // namespace mmnoma
