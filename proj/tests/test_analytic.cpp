#include <doctest.h>

#include <cmath>

#include "mmnoma/analytic.hpp"

using namespace mmnoma;

namespace {

SystemConfig reference_config(double snr_db) {
    SystemConfig cfg; // defaults are the reference scenario
    cfg.rho = db_to_linear(snr_db);
    return cfg;
}

} // namespace

TEST_CASE("threshold coefficients") {
    const RateTargets rates{4.0, 1.5};
    const auto tc = thresholds(1000.0, PowerAllocation{0.25, 0.75}, rates);
    CHECK(tc.feasible);
    CHECK(tc.eta_far == doctest::Approx(rates.far_threshold() / (1000.0 * 0.292893)).epsilon(1e-4));
    CHECK(tc.eta_near == doctest::Approx(0.06).epsilon(1e-12)); // max{0.006243, 0.06}

    const auto bad = thresholds(1000.0, PowerAllocation{0.4, 0.6}, rates);
    CHECK_FALSE(bad.feasible);
}

TEST_CASE("infeasible split forces outage 1 everywhere") {
    SystemConfig cfg = reference_config(30.0);
    cfg.power = {0.4, 0.6};
    for (auto scheme : {PairingScheme::RNRF, PairingScheme::NNNF, PairingScheme::NNFF})
        for (auto role : {DeviceRole::Near, DeviceRole::Far}) {
            CHECK(closed_form_outage(cfg, scheme, role) == 1.0);
            CHECK(exact_outage_quadrature(cfg, scheme, role) == 1.0);
        }
}

TEST_CASE("RNRF near closed form, frozen value") {
    // eta 0.06, angular 2.0877, geometric 2.0625
    CHECK(rnrf_near_outage(reference_config(30.0)) == doctest::Approx(0.0646).epsilon(1e-3));
    // 1/rho decay
    CHECK(rnrf_near_outage_unclamped(reference_config(60.0)) ==
          doctest::Approx(rnrf_near_outage_unclamped(reference_config(30.0)) / 1000.0)
              .epsilon(1e-10));
    // doubling M at Delta -> 0 halves the value
    SystemConfig narrow = reference_config(30.0);
    narrow.region_a.half_angle = narrow.region_b.half_angle = 1e-6;
    SystemConfig narrow8 = narrow;
    narrow8.antennas = 8;
    CHECK(rnrf_near_outage_unclamped(narrow8) ==
          doctest::Approx(rnrf_near_outage_unclamped(narrow) / 2.0).epsilon(1e-6));
}

TEST_CASE("RNRF far closed form, frozen value") {
    CHECK(rnrf_far_outage(reference_config(40.0)) == doctest::Approx(0.01352).epsilon(1e-3));
    CHECK(rnrf_far_outage_unclamped(reference_config(70.0)) ==
          doctest::Approx(rnrf_far_outage_unclamped(reference_config(40.0)) / 1000.0)
              .epsilon(1e-10));
}

TEST_CASE("RNRF far is continuous as the ring thins") {
    SystemConfig cfg = reference_config(40.0);
    double prev = rnrf_far_outage(cfg);
    for (double rc : {9.0, 9.5, 9.9, 9.99}) {
        cfg.region_b.r_min = rc;
        const double closed = rnrf_far_outage(cfg);
        const double exact = exact_outage_quadrature(cfg, PairingScheme::RNRF, DeviceRole::Far);
        CHECK(std::fabs(closed - exact) / exact < 0.05);
        CHECK(std::fabs(closed - prev) < 0.01); // no jump
        prev = closed;
    }
}

TEST_CASE("NNNF near beats RNRF near and matches quadrature") {
    const SystemConfig cfg = reference_config(30.0);
    const double nnnf = nnnf_near_outage(cfg);
    CHECK(nnnf < rnrf_near_outage(cfg));
    const double exact = exact_outage_quadrature(cfg, PairingScheme::NNNF, DeviceRole::Near);
    CHECK(std::fabs(nnnf - exact) / exact < 0.05);
}

TEST_CASE("NNNF near degenerates to RNRF near at vanishing density") {
    SystemConfig cfg = reference_config(30.0);
    cfg.region_a.density = 1e-3 / cfg.region_a.measure(); // mu_A = 1e-3
    CHECK(nnnf_near_outage_unclamped(cfg) ==
          doctest::Approx(rnrf_near_outage_unclamped(cfg)).epsilon(0.01));
}

TEST_CASE("NNNF far beats RNRF far and matches quadrature at high SNR") {
    const SystemConfig cfg = reference_config(40.0);
    const double nnnf = nnnf_far_outage(cfg);
    CHECK(nnnf < rnrf_far_outage(cfg));
    const double exact = exact_outage_quadrature(cfg, PairingScheme::NNNF, DeviceRole::Far);
    CHECK(std::fabs(nnnf - exact) / exact < 0.05);
    CHECK(nnnf_far_outage_unclamped(reference_config(70.0)) <
          1e-2 * nnnf_far_outage_unclamped(reference_config(40.0)));
}

TEST_CASE("NNFF far exceeds RNRF far") {
    const SystemConfig cfg = reference_config(40.0);
    CHECK(nnff_far_outage(cfg) > rnrf_far_outage(cfg));
    const double exact = exact_outage_quadrature(cfg, PairingScheme::NNFF, DeviceRole::Far);
    CHECK(std::fabs(nnff_far_outage(cfg) - exact) / exact < 0.05);
}

TEST_CASE("Omega: quadrature, closed form, and the flat-exponential limit") {
    const double rc = 8.0, rb = 10.0;
    for (double dl : {0.05, 0.2, 0.5}) {
        const double quad = omega_quadrature(dl, 2.0, rc, rb);
        const double closed = omega_closed_form_alpha2(dl, rc, rb);
        CHECK(std::fabs(quad - closed) / closed < 1e-8);
    }
    // Delta*lambda -> 0: Omega -> (rb^{a+2} - rc^{a+2})/(a+2)
    for (double alpha : {2.0, 3.0}) {
        const double limit = (std::pow(rb, alpha + 2.0) - std::pow(rc, alpha + 2.0)) / (alpha + 2.0);
        CHECK(omega_quadrature(1e-9, alpha, rc, rb) == doctest::Approx(limit).epsilon(1e-5));
    }
}

TEST_CASE("exact quadrature limiting regimes") {
    SystemConfig cfg = reference_config(-80.0); // enormous thresholds: certain outage
    CHECK(exact_outage_quadrature(cfg, PairingScheme::RNRF, DeviceRole::Near) ==
          doctest::Approx(1.0).epsilon(1e-9));
    cfg = reference_config(150.0); // thresholds vanish
    CHECK(exact_outage_quadrature(cfg, PairingScheme::RNRF, DeviceRole::Near) < 1e-6);
}

TEST_CASE("closed forms are monotone in SNR and rate targets") {
    for (auto scheme : {PairingScheme::RNRF, PairingScheme::NNNF, PairingScheme::NNFF}) {
        for (auto role : {DeviceRole::Near, DeviceRole::Far}) {
            double prev = 2.0;
            for (double snr_db = 0.0; snr_db <= 40.0; snr_db += 5.0) {
                const double p = closed_form_outage(reference_config(snr_db), scheme, role);
                CHECK(p <= prev + 1e-15);
                CHECK(p >= 0.0);
                CHECK(p <= 1.0);
                prev = p;
            }
            // nondecreasing in each rate target
            SystemConfig lo = reference_config(35.0), hi = reference_config(35.0);
            hi.rates.near_rate += 0.5;
            CHECK(closed_form_outage_unclamped(hi, scheme, role) >=
                  closed_form_outage_unclamped(lo, scheme, role) - 1e-15);
            hi = reference_config(35.0);
            hi.rates.far_rate += 0.3;
            CHECK(closed_form_outage_unclamped(hi, scheme, role) >=
                  closed_form_outage_unclamped(lo, scheme, role) - 1e-15);
        }
    }
}

TEST_CASE("comparison terms and ordering verdicts") {
    for (double snr_db : {10.0, 20.0, 30.0, 40.0}) {
        const auto terms = comparison_terms(reference_config(snr_db));
        CHECK(terms.near_ordering_ok);
        CHECK(terms.far_ordering_ok);
    }

    // the printed small-Delta expansions, evaluated directly
    SystemConfig cfg = reference_config(30.0);
    cfg.region_a.half_angle = cfg.region_b.half_angle = 1e-3;
    const auto t = comparison_terms(cfg);
    const double alpha = cfg.path_loss_exponent;
    const double ra = cfg.region_a.r_max;
    const double dla = cfg.region_a.half_angle * cfg.region_a.density;
    const double la_expansion =
        std::pow(ra, alpha) / (alpha + 2.0) -
        dla * alpha * std::pow(ra, alpha + 2.0) / (2.0 * (alpha + 2.0) * (alpha + 4.0));
    CHECK(t.l_a_star == doctest::Approx(la_expansion).epsilon(1e-4));

    const double rb = cfg.region_b.r_max, rc = cfg.region_b.r_min;
    const double dlb = cfg.region_b.half_angle * cfg.region_b.density;
    const double base = 0.5 * (rb * rb - rc * rc) +
                        (std::pow(rb, alpha + 2.0) - std::pow(rc, alpha + 2.0)) / (alpha + 2.0);
    // i3 = integral of r^3 + r^{alpha+3}; the first-order terms carry the
    // exponential prefactors evaluated at rc (nearest) and rb (farthest)
    const double i3 = 0.25 * (std::pow(rb, 4.0) - std::pow(rc, 4.0)) +
                      (std::pow(rb, alpha + 4.0) - std::pow(rc, alpha + 4.0)) / (alpha + 4.0);
    CHECK(t.l_b_star == doctest::Approx(base + dlb * (rc * rc * base - i3)).epsilon(3e-3));
    CHECK(t.l_b_prime == doctest::Approx(base + dlb * (i3 - rb * rb * base)).epsilon(3e-3));
    CHECK(t.l_b_prime - t.l_b_star > 0.0);
    CHECK(t.l_b_prime - t.l_b_star ==
          doctest::Approx(dlb * (2.0 * i3 - (rb * rb + rc * rc) * base)).epsilon(0.05));

    // Delta -> 0: L_A* approaches the RNRF geometric factor
    cfg.region_a.half_angle = cfg.region_b.half_angle = 1e-7;
    CHECK(comparison_terms(cfg).l_a_star ==
          doctest::Approx(std::pow(ra, alpha) / (alpha + 2.0)).epsilon(1e-4));
}
