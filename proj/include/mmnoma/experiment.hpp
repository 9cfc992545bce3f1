#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mmnoma/analytic.hpp"
#include "mmnoma/config.hpp"
#include "mmnoma/montecarlo.hpp"

namespace mmnoma {

struct ResultRow {
    std::string sweep_var;
    double value = 0.0;
    std::string scheme;
    std::string role; // near | far | sum_noma | sum_oma | (error marker)
    std::string source;
    double estimate = 0.0;
    double ci_halfwidth = 0.0;
    long n_trials = 0;
    std::uint64_t seed = 0;
};

inline constexpr const char* kCsvHeader =
    "sweep_var,value,scheme,role,source,estimate,ci_halfwidth,n_trials,seed";

namespace detail {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace detail

inline std::string to_csv_line(const ResultRow& r) {
    std::ostringstream os;
    os << r.sweep_var << ',' << detail::format_double(r.value) << ',' << r.scheme << ','
       << r.role << ',' << r.source << ',' << detail::format_double(r.estimate) << ','
       << detail::format_double(r.ci_halfwidth) << ',' << r.n_trials << ',' << r.seed;
    return os.str();
}

/// Runs the sweep: one row per grid point x scheme x role x source.
/// A grid point that throws is recorded as a failure marker row and the
/// sweep continues.
inline std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    std::vector<ResultRow> rows;
    const std::string sweep_var = to_string(spec.sweep);

    auto push = [&](double value, const std::string& scheme, const std::string& role,
                    const std::string& source, double est, double ci, long n) {
        rows.push_back({sweep_var, value, scheme, role, source, est, ci, n, spec.master_seed});
    };

    for (double value : spec.grid) {
        for (PairingScheme scheme : spec.schemes) {
            SystemConfig cfg = spec.config_at(value);
            cfg.scheme = scheme;
            const std::string scheme_name = to_string(scheme);
            try {
                for (OutputSource source : spec.sources) {
                    switch (source) {
                    case OutputSource::MonteCarlo: {
                        const SimulationResult r =
                            estimate(cfg, spec.n_trials, spec.master_seed, spec.parallelism);
                        push(value, scheme_name, "near", "mc", r.near_outage.p_hat,
                             r.near_outage.ci_halfwidth, r.near_outage.n_trials);
                        push(value, scheme_name, "far", "mc", r.far_outage.p_hat,
                             r.far_outage.ci_halfwidth, r.far_outage.n_trials);
                        if (spec.include_rates) {
                            push(value, scheme_name, "sum_noma", "mc", r.noma_rate.mean,
                                 r.noma_rate.ci_halfwidth, r.noma_rate.n_trials);
                            push(value, scheme_name, "sum_oma", "mc", r.oma_rate.mean,
                                 r.oma_rate.ci_halfwidth, r.oma_rate.n_trials);
                        }
                        break;
                    }
                    case OutputSource::ClosedForm:
                        push(value, scheme_name, "near", "cf",
                             closed_form_outage(cfg, scheme, DeviceRole::Near), 0.0, 0);
                        push(value, scheme_name, "far", "cf",
                             closed_form_outage(cfg, scheme, DeviceRole::Far), 0.0, 0);
                        break;
                    case OutputSource::Quadrature:
                        push(value, scheme_name, "near", "quad",
                             exact_outage_quadrature(cfg, scheme, DeviceRole::Near), 0.0, 0);
                        push(value, scheme_name, "far", "quad",
                             exact_outage_quadrature(cfg, scheme, DeviceRole::Far), 0.0, 0);
                        break;
                    }
                }
            } catch (const std::exception& e) {
                push(value, scheme_name, std::string("FAILED: ") + e.what(), "error", 0.0, 0.0, 0);
            }
        }
    }
    return rows;
}

inline void write_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows)
        out << to_csv_line(r) << '\n';
}

inline void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    write_csv(rows, out);
}

/// Plain-text digest of a result table: per-series extremes, scheme
/// ordering verdicts, NOMA vs OMA and flatness verdicts where the table
/// contains the relevant rows, and the worst MC-vs-analytic deviation over
/// the high-SNR half of the grid.
inline std::string emit_summary(const std::vector<ResultRow>& rows) {
    if (rows.empty())
        throw std::invalid_argument("emit_summary: empty table");

    std::ostringstream os;
    auto find = [&](const std::string& scheme, const std::string& role,
                    const std::string& source) {
        std::vector<const ResultRow*> out;
        for (const auto& r : rows)
            if (r.scheme == scheme && r.role == role && r.source == source)
                out.push_back(&r);
        return out;
    };

    std::vector<std::string> schemes;
    std::vector<double> grid;
    bool any_failure = false;
    for (const auto& r : rows) {
        if (r.source == "error") {
            any_failure = true;
            continue;
        }
        if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end())
            schemes.push_back(r.scheme);
        if (std::find(grid.begin(), grid.end(), r.value) == grid.end())
            grid.push_back(r.value);
    }
    os << "sweep: " << rows.front().sweep_var << ", " << grid.size() << " grid points, "
       << schemes.size() << " schemes\n";
    if (any_failure)
        os << "WARNING: table contains failure marker rows\n";

    for (const auto& scheme : schemes) {
        for (const char* role : {"near", "far"}) {
            for (const char* source : {"mc", "cf", "quad"}) {
                const auto series = find(scheme, role, source);
                if (series.empty())
                    continue;
                double lo = series.front()->estimate, hi = lo;
                for (const auto* r : series) {
                    lo = std::min(lo, r->estimate);
                    hi = std::max(hi, r->estimate);
                }
                os << scheme << ' ' << role << ' ' << source << ": min "
                   << detail::format_double(lo) << ", max " << detail::format_double(hi);
                if (hi <= 1.0 && lo >= 1.0)
                    os << " (all outage = 1)";
                os << '\n';
            }
        }
    }

    // scheme ordering verdicts per source, where all three schemes are present
    for (const char* source : {"cf", "quad"}) {
        const auto rnrf_n = find("RNRF", "near", source);
        const auto nnnf_n = find("NNNF", "near", source);
        const auto rnrf_f = find("RNRF", "far", source);
        const auto nnnf_f = find("NNNF", "far", source);
        const auto nnff_f = find("NNFF", "far", source);
        if (rnrf_n.size() == nnnf_n.size() && !rnrf_n.empty()) {
            bool ok = true;
            for (std::size_t i = 0; i < rnrf_n.size(); ++i)
                ok = ok && rnrf_n[i]->estimate >= nnnf_n[i]->estimate;
            os << source << " near ordering P(RNRF) >= P(NNNF): " << (ok ? "holds" : "VIOLATED")
               << '\n';
        }
        if (rnrf_f.size() == nnnf_f.size() && rnrf_f.size() == nnff_f.size() && !rnrf_f.empty()) {
            bool ok = true;
            for (std::size_t i = 0; i < rnrf_f.size(); ++i)
                ok = ok && nnnf_f[i]->estimate <= rnrf_f[i]->estimate &&
                     rnrf_f[i]->estimate <= nnff_f[i]->estimate;
            os << source << " far ordering P(NNNF) <= P(RNRF) <= P(NNFF): "
               << (ok ? "holds" : "VIOLATED") << '\n';
        }
    }

    // MC vs analytic deviation over the high-SNR (upper) half of the grid
    double worst_dev = 0.0;
    bool have_dev = false;
    if (!grid.empty()) {
        std::vector<double> sorted = grid;
        std::sort(sorted.begin(), sorted.end());
        const double mid = sorted[sorted.size() / 2];
        for (const auto& scheme : schemes) {
            for (const char* role : {"near", "far"}) {
                const auto mc = find(scheme, role, "mc");
                const auto cf = find(scheme, role, "cf");
                if (mc.size() != cf.size())
                    continue;
                for (std::size_t i = 0; i < mc.size(); ++i) {
                    if (mc[i]->value < mid || mc[i]->estimate <= 0.0)
                        continue;
                    have_dev = true;
                    worst_dev = std::max(
                        worst_dev, std::fabs(mc[i]->estimate - cf[i]->estimate) / mc[i]->estimate);
                }
            }
        }
    }
    if (have_dev)
        os << "max MC-vs-closed-form relative deviation (upper half of grid): "
           << detail::format_double(worst_dev) << '\n';

    // NOMA vs OMA verdict when rate rows are present
    {
        bool have_rates = false, noma_wins = true;
        for (const auto& scheme : schemes) {
            const auto noma = find(scheme, "sum_noma", "mc");
            const auto oma = find(scheme, "sum_oma", "mc");
            if (noma.empty() || noma.size() != oma.size())
                continue;
            have_rates = true;
            for (std::size_t i = 0; i < noma.size(); ++i)
                noma_wins = noma_wins && noma[i]->estimate >= oma[i]->estimate;
        }
        if (have_rates)
            os << "NOMA outage sum rate >= OMA across grid: " << (noma_wins ? "holds" : "VIOLATED")
               << '\n';
    }

    // flatness verdict for RNRF under a density sweep
    if (rows.front().sweep_var == "density_a") {
        const auto series = find("RNRF", "near", "mc");
        if (series.size() >= 2) {
            bool flat = true;
            for (const auto* a : series)
                for (const auto* b : series)
                    if (std::fabs(a->estimate - b->estimate) >
                        2.0 * (a->ci_halfwidth + b->ci_halfwidth))
                        flat = false;
            os << "RNRF near outage flat in density_a within CI: " << (flat ? "holds" : "VIOLATED")
               << '\n';
        }
    }

    return os.str();
}

} // namespace mmnoma
