#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "mmnoma/channel.hpp"
#include "mmnoma/noma.hpp"
#include "mmnoma/pairing.hpp"
#include "mmnoma/system.hpp"

namespace mmnoma {

/// A probability estimate with its provenance.
struct OutageEstimate {
    double p_hat = 0.0;
    long n_trials = 0;
    double ci_halfwidth = 0.0; // 95% normal-approx half-width
    enum class Source { MonteCarlo, ClosedForm, Quadrature } source = Source::MonteCarlo;
    bool degenerate = false; // too few trials for the CI to mean anything
};

struct RateEstimate {
    double mean = 0.0;
    long n_trials = 0;
    double ci_halfwidth = 0.0;
};

struct SimulationResult {
    OutageEstimate near_outage;
    OutageEstimate far_outage;
    OutageEstimate oma_near_outage;
    OutageEstimate oma_far_outage;
    RateEstimate noma_rate;
    RateEstimate oma_rate;
};

/// One end-to-end realization: deploy both groups (conditioned nonempty),
/// select the pair, draw the channel, evaluate NOMA and OMA outcomes.
inline TrialOutcome run_trial(const SystemConfig& cfg, RandomStream& rng) {
    Beam beam{cfg.region_a.center_direction, cfg.antennas};
    SectorRegion region_a = cfg.region_a;
    SectorRegion region_b = cfg.region_b;
    if (cfg.randomize_beam) {
        // Only the offset beam - device direction enters the link budget, so
        // shifting both sectors with the beam leaves every statistic intact.
        beam.direction = rng.uniform(-1.0, 1.0);
        region_a.center_direction = beam.direction;
        region_b.center_direction = beam.direction;
    }
    const auto group_a = sample_deployment_nonempty(region_a, rng);
    const auto group_b = sample_deployment_nonempty(region_b, rng);
    const PairSelection pair = select_pair(cfg.scheme, group_a, group_b, rng);

    const double g_near = effective_gain(pair.near, beam, cfg.path_loss_exponent).value;
    const double g_far = effective_gain(pair.far, beam, cfg.path_loss_exponent).value;

    TrialOutcome out;
    out.near_outage = near_outage(g_near, cfg.rho, cfg.power, cfg.rates);
    out.far_outage = far_outage(g_far, cfg.rho, cfg.power, cfg.rates);
    out.noma_rate = noma_outage_sum_rate(out.near_outage, out.far_outage, cfg.rates);
    const OmaOutcome oma = oma_trial(g_near, g_far, cfg.rho, cfg.rates);
    out.oma_near_outage = oma.near_outage;
    out.oma_far_outage = oma.far_outage;
    out.oma_rate = oma.rate;
    return out;
}

namespace detail {

struct ChunkAccumulator {
    long n = 0;
    long near_out = 0, far_out = 0, oma_near_out = 0, oma_far_out = 0;
    double noma_rate = 0.0, noma_rate_sq = 0.0;
    double oma_rate = 0.0, oma_rate_sq = 0.0;

    void add(const TrialOutcome& t) {
        ++n;
        near_out += t.near_outage;
        far_out += t.far_outage;
        oma_near_out += t.oma_near_outage;
        oma_far_out += t.oma_far_outage;
        noma_rate += t.noma_rate;
        noma_rate_sq += t.noma_rate * t.noma_rate;
        oma_rate += t.oma_rate;
        oma_rate_sq += t.oma_rate * t.oma_rate;
    }

    void merge(const ChunkAccumulator& o) {
        n += o.n;
        near_out += o.near_out;
        far_out += o.far_out;
        oma_near_out += o.oma_near_out;
        oma_far_out += o.oma_far_out;
        noma_rate += o.noma_rate;
        noma_rate_sq += o.noma_rate_sq;
        oma_rate += o.oma_rate;
        oma_rate_sq += o.oma_rate_sq;
    }
};

// Wald interval with a continuity floor on the variance so the width never
// collapses to zero at empirical 0 or 1.
inline OutageEstimate outage_estimate(long hits, long n) {
    OutageEstimate e;
    e.n_trials = n;
    e.p_hat = static_cast<double>(hits) / static_cast<double>(n);
    const double p_floor = (static_cast<double>(hits) + 0.5) / (static_cast<double>(n) + 1.0);
    const double var = std::max(e.p_hat * (1.0 - e.p_hat), p_floor * (1.0 - p_floor));
    e.ci_halfwidth = 1.959963984540054 * std::sqrt(var / static_cast<double>(n));
    e.degenerate = n < 2;
    return e;
}

inline RateEstimate rate_estimate(double sum, double sum_sq, long n) {
    RateEstimate e;
    e.n_trials = n;
    e.mean = sum / static_cast<double>(n);
    if (n > 1) {
        const double var = std::max(0.0, sum_sq / n - e.mean * e.mean) * n / (n - 1.0);
        e.ci_halfwidth = 1.959963984540054 * std::sqrt(var / static_cast<double>(n));
    }
    return e;
}

} // namespace detail

/// Monte Carlo estimator. Trial i uses the counter-based stream
/// (master_seed, i); trials are accumulated in fixed-size chunks that are
/// reduced in index order, so the result is bit-identical for any thread
/// count.
inline SimulationResult estimate(const SystemConfig& cfg, long n_trials,
                                 std::uint64_t master_seed, int parallelism = 0) {
    cfg.validate();
    if (n_trials < 1)
        throw std::invalid_argument("estimate: n_trials must be >= 1");

    constexpr long kChunk = 4096;
    const long n_chunks = (n_trials + kChunk - 1) / kChunk;
    std::vector<detail::ChunkAccumulator> chunks(static_cast<std::size_t>(n_chunks));

    int threads = parallelism > 0 ? parallelism
                                  : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1)
        threads = 1;
    threads = static_cast<int>(std::min<long>(threads, n_chunks));

    std::atomic<long> next_chunk{0};
    auto worker = [&] {
        for (;;) {
            const long c = next_chunk.fetch_add(1);
            if (c >= n_chunks)
                return;
            detail::ChunkAccumulator acc;
            const long lo = c * kChunk;
            const long hi = std::min(n_trials, lo + kChunk);
            for (long i = lo; i < hi; ++i) {
                RandomStream rng(master_seed, static_cast<std::uint64_t>(i));
                acc.add(run_trial(cfg, rng));
            }
            chunks[static_cast<std::size_t>(c)] = acc;
        }
    };

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    detail::ChunkAccumulator total;
    for (const auto& c : chunks)
        total.merge(c);

    SimulationResult r;
    r.near_outage = detail::outage_estimate(total.near_out, total.n);
    r.far_outage = detail::outage_estimate(total.far_out, total.n);
    r.oma_near_outage = detail::outage_estimate(total.oma_near_out, total.n);
    r.oma_far_outage = detail::outage_estimate(total.oma_far_out, total.n);
    r.noma_rate = detail::rate_estimate(total.noma_rate, total.noma_rate_sq, total.n);
    r.oma_rate = detail::rate_estimate(total.oma_rate, total.oma_rate_sq, total.n);
    return r;
}

} // namespace mmnoma
