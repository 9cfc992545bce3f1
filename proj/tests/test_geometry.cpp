#include <doctest.h>

#include <cmath>

#include "mmnoma/geometry.hpp"
#include "mmnoma/quadrature.hpp"
#include "test_support.hpp"

using namespace mmnoma;

namespace {
const SectorRegion kWedge{0.1, 0.0, 2.5, 6.0, 0.0};
const SectorRegion kRing{0.1, 8.0, 10.0, 2.0, 0.0};
} // namespace

TEST_CASE("region invariants are enforced") {
    CHECK_THROWS(SectorRegion{0.0, 0.0, 1.0, 1.0, 0.0}.validate());
    CHECK_THROWS(SectorRegion{0.1, 2.0, 1.0, 1.0, 0.0}.validate());
    CHECK_THROWS(SectorRegion{0.1, 0.0, 1.0, -1.0, 0.0}.validate());
    CHECK_THROWS(SectorRegion{0.1, 0.0, 1.0, 1.0, 1.5}.validate());
    CHECK_NOTHROW(kWedge.validate());
    CHECK_NOTHROW(kRing.validate());
}

TEST_CASE("mean count matches the region measure") {
    CHECK(kWedge.mean_count() == doctest::Approx(3.75));
    RandomStream rng(42);
    const long samples = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (long i = 0; i < samples; ++i) {
        const double n = static_cast<double>(sample_deployment(kWedge, rng).size());
        sum += n;
        sum_sq += n * n;
    }
    const double mean = sum / samples;
    const double sd = std::sqrt((sum_sq / samples - mean * mean) / samples);
    CHECK(std::fabs(mean - 3.75) < 4.0 * sd);

    // Poisson dispersion: variance/mean ratio near 1
    const double var = sum_sq / samples - mean * mean;
    const double dispersion = var / mean;
    const double z = (dispersion - 1.0) * std::sqrt(samples / 2.0);
    CHECK(std::fabs(z) < 3.5);
}

TEST_CASE("vanishing density gives empty deployments") {
    SectorRegion thin = kWedge;
    thin.density = 1e-9;
    RandomStream rng(7);
    int nonempty = 0;
    for (int i = 0; i < 1000; ++i)
        nonempty += !sample_deployment(thin, rng).empty();
    CHECK(nonempty == 0);
}

TEST_CASE("sampled points respect region bounds") {
    RandomStream rng(3);
    for (int i = 0; i < 2000; ++i) {
        for (const auto& p : sample_deployment(kRing, rng)) {
            CHECK(p.distance >= kRing.r_min);
            CHECK(p.distance <= kRing.r_max);
            CHECK(std::fabs(p.direction - kRing.center_direction) <= kRing.half_angle);
        }
    }
}

TEST_CASE("radial law is area-uniform") {
    // CDF of the sampled radius should be (r^2 - r_min^2) / (r_max^2 - r_min^2)
    RandomStream rng(11);
    const int bins = 20;
    std::vector<long> observed(bins, 0);
    long total = 0;
    for (int i = 0; i < 30000; ++i) {
        for (const auto& p : sample_deployment(kWedge, rng)) {
            const double u = p.distance * p.distance / (kWedge.r_max * kWedge.r_max);
            observed[std::min(bins - 1, static_cast<int>(u * bins))]++;
            ++total;
        }
    }
    std::vector<double> expected(bins, static_cast<double>(total) / bins);
    const double stat = testsupport::pearson_statistic(observed, expected);
    CHECK(testsupport::chi_square_p(stat, bins - 1) > 0.01);
}

TEST_CASE("fading gains have unit mean power") {
    RandomStream rng(5);
    double sum = 0.0, sum_sq = 0.0;
    long n = 0;
    for (int i = 0; i < 50000; ++i) {
        for (const auto& p : sample_deployment(kWedge, rng)) {
            const double g = std::norm(p.gain);
            sum += g;
            sum_sq += g * g;
            ++n;
        }
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::fabs(mean - 1.0) < 3.0 * sd);
}

TEST_CASE("nonempty sampling realizes the conditional Poisson law") {
    RandomStream rng(13);
    const long samples = 100000;
    const double mu = kWedge.mean_count();
    const int max_bin = 12; // last bin is the tail
    std::vector<long> observed(max_bin + 1, 0);
    for (long i = 0; i < samples; ++i) {
        const auto pts = sample_deployment_nonempty(kWedge, rng);
        CHECK(pts.size() >= 1);
        observed[std::min<std::size_t>(pts.size(), max_bin)]++;
    }
    // conditional pmf: Poisson(mu) restricted to n >= 1
    std::vector<double> expected(max_bin + 1, 0.0);
    const double denom = 1.0 - std::exp(-mu);
    double pmf = std::exp(-mu);
    double tail = 1.0;
    for (int n = 1; n < max_bin; ++n) {
        pmf *= mu / n;
        expected[n] = samples * pmf / denom;
        tail -= pmf / denom;
    }
    expected[max_bin] = samples * tail;
    std::vector<long> obs(observed.begin() + 1, observed.end());
    std::vector<double> exp(expected.begin() + 1, expected.end());
    const double stat = testsupport::pearson_statistic(obs, exp);
    CHECK(testsupport::chi_square_p(stat, static_cast<double>(obs.size() - 1)) > 0.01);

    // conditional mean is mu / (1 - e^{-mu})
    double mean = 0.0;
    for (std::size_t n = 0; n < observed.size(); ++n)
        mean += static_cast<double>(n) * observed[n];
    mean /= samples;
    CHECK(mean == doctest::Approx(mu / denom).epsilon(0.01));
}

TEST_CASE("nonempty sampling fails past the retry cap") {
    SectorRegion hopeless = kWedge;
    hopeless.density = 1e-12;
    RandomStream rng(1);
    CHECK_THROWS_AS((void)sample_deployment_nonempty(hopeless, rng, 50), std::runtime_error);
}

TEST_CASE("uniform point density") {
    CHECK(pdf_uniform_point(kWedge) == doctest::Approx(1.6));
    CHECK(pdf_uniform_point(kRing) == doctest::Approx(1.0 / 3.6).epsilon(1e-12));
    CHECK(pdf_uniform_point(kWedge) * kWedge.measure() == doctest::Approx(1.0));
}

TEST_CASE("order-statistic PDFs normalize and vanish off support") {
    for (const auto* region : {&kWedge, &kRing}) {
        const double near_mass = integrate_checked(
            [&](double r) { return pdf_nearest_distance(*region, r); }, region->r_min,
            region->r_max, 1e-13, 1e-10);
        const double far_mass = integrate_checked(
            [&](double r) { return pdf_farthest_distance(*region, r); }, region->r_min,
            region->r_max, 1e-13, 1e-10);
        CHECK(std::fabs(near_mass - 1.0) < 1e-8);
        CHECK(std::fabs(far_mass - 1.0) < 1e-8);
    }
    CHECK(pdf_nearest_distance(kRing, 7.9) == 0.0);
    CHECK(pdf_nearest_distance(kRing, 10.1) == 0.0);
    CHECK(pdf_farthest_distance(kRing, 7.9) == 0.0);
}

TEST_CASE("nearest and farthest PDFs swap boundary exponentials") {
    for (double r = 8.0; r <= 10.0; r += 0.125) {
        const double dl = kRing.half_angle * kRing.density;
        // identical up to exchanging (r^2 - r_min^2) and (r_max^2 - r^2)
        const double near = pdf_nearest_distance(kRing, r);
        const double mirrored = near * std::exp(dl * (r * r - kRing.r_min * kRing.r_min)) *
                                std::exp(-dl * (kRing.r_max * kRing.r_max - r * r));
        CHECK(pdf_farthest_distance(kRing, r) == doctest::Approx(mirrored).epsilon(1e-12));
    }
}

TEST_CASE("nearest PDF reduces to the uniform radial law at vanishing density") {
    SectorRegion faint = kWedge;
    faint.density = 1e-8;
    for (double r = 0.25; r <= 2.5; r += 0.25) {
        const double uniform = 2.0 * r / (kWedge.r_max * kWedge.r_max);
        CHECK(pdf_nearest_distance(faint, r) == doctest::Approx(uniform).epsilon(1e-5));
    }
}
