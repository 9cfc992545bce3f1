#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mmnoma/system.hpp"

namespace mmnoma {

enum class SweepVariable { Snr, Delta, DensityA, RateFar };

inline const char* to_string(SweepVariable v) {
    switch (v) {
    case SweepVariable::Snr: return "snr_db";
    case SweepVariable::Delta: return "delta";
    case SweepVariable::DensityA: return "density_a";
    case SweepVariable::RateFar: return "rate_far";
    }
    return "?";
}

enum class OutputSource { MonteCarlo, ClosedForm, Quadrature };

inline const char* to_string(OutputSource s) {
    switch (s) {
    case OutputSource::MonteCarlo: return "mc";
    case OutputSource::ClosedForm: return "cf";
    case OutputSource::Quadrature: return "quad";
    }
    return "?";
}

/// A full experiment: a base scenario, one sweep variable with its grid,
/// and the schemes/output sources to evaluate at each grid point.
struct ExperimentSpec {
    SystemConfig base;            // defaults match the reference scenario
    double base_snr_db = 30.0;    // used when the sweep is not over SNR
    SweepVariable sweep = SweepVariable::Snr;
    std::vector<double> grid = {0, 5, 10, 15, 20, 25, 30, 35, 40};
    std::vector<PairingScheme> schemes = {PairingScheme::RNRF, PairingScheme::NNNF,
                                          PairingScheme::NNFF};
    std::vector<OutputSource> sources = {OutputSource::MonteCarlo, OutputSource::ClosedForm,
                                         OutputSource::Quadrature};
    bool include_rates = false;
    long n_trials = 100000;
    std::uint64_t master_seed = 1;
    int parallelism = 0;
    std::string output_path;

    /// Scenario at one grid point of the sweep.
    SystemConfig config_at(double value) const {
        SystemConfig cfg = base;
        cfg.rho = db_to_linear(base_snr_db);
        switch (sweep) {
        case SweepVariable::Snr:
            cfg.rho = db_to_linear(value);
            break;
        case SweepVariable::Delta:
            cfg.region_a.half_angle = value;
            cfg.region_b.half_angle = value;
            break;
        case SweepVariable::DensityA:
            cfg.region_a.density = value;
            break;
        case SweepVariable::RateFar:
            cfg.rates.far_rate = value;
            break;
        }
        return cfg;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

inline double parse_number(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::runtime_error("config key '" + key + "': not a number: '" + value + "'");
    }
    if (pos != value.size())
        throw std::runtime_error("config key '" + key + "': trailing junk in '" + value + "'");
    return v;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes")
        return true;
    if (value == "false" || value == "0" || value == "no")
        return false;
    throw std::runtime_error("config key '" + key + "': expected a boolean, got '" + value + "'");
}

inline PairingScheme parse_scheme(const std::string& key, const std::string& value) {
    if (value == "rnrf" || value == "RNRF")
        return PairingScheme::RNRF;
    if (value == "nnnf" || value == "NNNF")
        return PairingScheme::NNNF;
    if (value == "nnff" || value == "NNFF")
        return PairingScheme::NNFF;
    throw std::runtime_error("config key '" + key + "': unknown scheme '" + value + "'");
}

inline OutputSource parse_source(const std::string& key, const std::string& value) {
    if (value == "mc")
        return OutputSource::MonteCarlo;
    if (value == "cf")
        return OutputSource::ClosedForm;
    if (value == "quad")
        return OutputSource::Quadrature;
    throw std::runtime_error("config key '" + key + "': unknown source '" + value + "'");
}

} // namespace detail

/// Parses the flat key = value experiment format. Omitted keys fall back
/// to the reference-scenario defaults; an empty file is a valid spec.
inline ExperimentSpec parse_config(std::istream& in) {
    using detail::parse_bool;
    using detail::parse_number;
    using detail::trim;

    ExperimentSpec spec;
    bool grid_given = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");

        if (key == "r_da")
            spec.base.region_a.r_max = parse_number(key, value);
        else if (key == "r_dc")
            spec.base.region_b.r_min = parse_number(key, value);
        else if (key == "r_db")
            spec.base.region_b.r_max = parse_number(key, value);
        else if (key == "lambda_a")
            spec.base.region_a.density = parse_number(key, value);
        else if (key == "lambda_b")
            spec.base.region_b.density = parse_number(key, value);
        else if (key == "delta") {
            spec.base.region_a.half_angle = parse_number(key, value);
            spec.base.region_b.half_angle = spec.base.region_a.half_angle;
        } else if (key == "antennas" || key == "m")
            spec.base.antennas = static_cast<int>(parse_number(key, value));
        else if (key == "alpha")
            spec.base.path_loss_exponent = parse_number(key, value);
        else if (key == "beta1_sq") {
            spec.base.power.near_fraction = parse_number(key, value);
            spec.base.power.far_fraction = 1.0 - spec.base.power.near_fraction;
        } else if (key == "r1")
            spec.base.rates.near_rate = parse_number(key, value);
        else if (key == "r2")
            spec.base.rates.far_rate = parse_number(key, value);
        else if (key == "snr_db")
            spec.base_snr_db = parse_number(key, value);
        else if (key == "randomize_beam")
            spec.base.randomize_beam = parse_bool(key, value);
        else if (key == "sweep") {
            if (value == "snr")
                spec.sweep = SweepVariable::Snr;
            else if (value == "delta")
                spec.sweep = SweepVariable::Delta;
            else if (value == "density_a")
                spec.sweep = SweepVariable::DensityA;
            else if (value == "rate_far")
                spec.sweep = SweepVariable::RateFar;
            else
                throw std::runtime_error("config key 'sweep': unknown variable '" + value + "'");
        } else if (key == "grid") {
            spec.grid.clear();
            for (const auto& item : detail::split_list(value))
                spec.grid.push_back(parse_number(key, item));
            grid_given = true;
        } else if (key == "schemes") {
            spec.schemes.clear();
            for (const auto& item : detail::split_list(value))
                spec.schemes.push_back(detail::parse_scheme(key, item));
        } else if (key == "sources") {
            spec.sources.clear();
            for (const auto& item : detail::split_list(value))
                spec.sources.push_back(detail::parse_source(key, item));
        } else if (key == "include_rates")
            spec.include_rates = parse_bool(key, value);
        else if (key == "trials")
            spec.n_trials = static_cast<long>(parse_number(key, value));
        else if (key == "seed")
            spec.master_seed = static_cast<std::uint64_t>(parse_number(key, value));
        else if (key == "threads")
            spec.parallelism = static_cast<int>(parse_number(key, value));
        else if (key == "out")
            spec.output_path = value;
        else
            throw std::runtime_error("config key '" + key + "': unknown key");
    }

    if (spec.grid.empty())
        throw std::runtime_error("config key 'grid': grid must be nonempty");
    if (!grid_given && spec.sweep != SweepVariable::Snr)
        throw std::runtime_error("config key 'grid': required for non-SNR sweeps");
    if (spec.n_trials < 1)
        throw std::runtime_error("config key 'trials': must be >= 1");
    if (spec.schemes.empty())
        throw std::runtime_error("config key 'schemes': must name at least one scheme");
    if (spec.sources.empty())
        throw std::runtime_error("config key 'sources': must name at least one source");

    // surface invalid scenario parameters now, with the config vocabulary
    try {
        spec.config_at(spec.grid.front()).validate();
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("config validation: ") + e.what());
    }
    return spec;
}

inline ExperimentSpec load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    return parse_config(in);
}

} // namespace mmnoma
