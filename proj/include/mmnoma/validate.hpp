#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mmnoma/analytic.hpp"
#include "mmnoma/experiment.hpp"

namespace mmnoma {

struct ValidationReport {
    bool all_passed = true;
    std::string text;
};

/// Deterministic oracle cross-check suite behind the `validate` CLI
/// subcommand: special functions against closed forms, kernel forms
/// against each other, PDFs against normalization, closed-form outage
/// against exact quadrature, and the scheme ordering chains.
inline ValidationReport run_validation(const SystemConfig& reference = SystemConfig{}) {
    ValidationReport report;
    std::ostringstream os;
    auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
        os << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty())
            os << " (" << detail << ")";
        os << '\n';
        report.all_passed = report.all_passed && ok;
    };

    {
        double worst = 0.0;
        for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
            worst = std::max(worst, std::fabs(lower_incomplete_gamma(1.0, x) -
                                              (1.0 - std::exp(-x))));
            worst = std::max(worst, std::fabs(lower_incomplete_gamma(2.0, x) -
                                              (1.0 - std::exp(-x) * (1.0 + x))));
        }
        check("incomplete gamma vs s=1,2 closed forms", worst < 1e-12,
              "worst abs err " + detail::format_double(worst));
    }

    {
        double worst = 0.0;
        for (int m : {1, 2, 4, 8, 16}) {
            for (int i = 0; i <= 400; ++i) {
                const double x = -2.0 + 4.0 * i / 400.0;
                std::complex<double> sum{0.0, 0.0};
                for (int n = 0; n < m; ++n)
                    sum += std::polar(1.0, -kPi * n * x);
                const double direct = std::norm(sum) / m;
                worst = std::max(worst, std::fabs(fejer_kernel(x, m) - direct));
            }
        }
        check("Fejer kernel vs squared-sum form", worst < 1e-11,
              "worst abs err " + detail::format_double(worst));
    }

    {
        const SectorRegion& a = reference.region_a;
        const SectorRegion& b = reference.region_b;
        double worst = 0.0;
        auto mass = [&](double (*pdf)(const SectorRegion&, double), const SectorRegion& reg) {
            return integrate_checked([&](double r) { return pdf(reg, r); }, reg.r_min, reg.r_max,
                                     1e-13, 1e-10);
        };
        worst = std::max(worst, std::fabs(mass(&pdf_nearest_distance, a) - 1.0));
        worst = std::max(worst, std::fabs(mass(&pdf_nearest_distance, b) - 1.0));
        worst = std::max(worst, std::fabs(mass(&pdf_farthest_distance, b) - 1.0));
        worst = std::max(worst,
                         std::fabs(pdf_uniform_point(a) * a.measure() - 1.0));
        worst = std::max(worst,
                         std::fabs(pdf_uniform_point(b) * b.measure() - 1.0));
        check("location PDFs normalize to 1", worst < 1e-8,
              "worst deviation " + detail::format_double(worst));
    }

    {
        const double dl = reference.region_b.half_angle * reference.region_b.density;
        const double quad = omega_quadrature(dl, 2.0, reference.region_b.r_min,
                                             reference.region_b.r_max);
        const double closed = omega_closed_form_alpha2(dl, reference.region_b.r_min,
                                                       reference.region_b.r_max);
        const double rel = std::fabs(quad - closed) / std::fabs(closed);
        check("Omega quadrature vs alpha=2 closed form", rel < 1e-8,
              "rel err " + detail::format_double(rel));
    }

    {
        bool ok = true;
        std::string worst_case;
        double worst_rel = 0.0;
        for (double snr_db : {30.0, 40.0}) {
            const double tol = snr_db >= 40.0 ? 0.05 : 0.10;
            SystemConfig cfg = reference;
            cfg.rho = db_to_linear(snr_db);
            for (PairingScheme scheme :
                 {PairingScheme::RNRF, PairingScheme::NNNF, PairingScheme::NNFF}) {
                for (DeviceRole role : {DeviceRole::Near, DeviceRole::Far}) {
                    const double exact = exact_outage_quadrature(cfg, scheme, role);
                    const double closed = closed_form_outage(cfg, scheme, role);
                    const double rel = std::fabs(closed - exact) / exact;
                    if (rel > worst_rel) {
                        worst_rel = rel;
                        worst_case = std::string(to_string(scheme)) + "/" + to_string(role) +
                                     " at " + detail::format_double(snr_db) + " dB";
                    }
                    ok = ok && rel <= tol;
                }
            }
        }
        check("closed forms vs exact quadrature at 30/40 dB", ok,
              "worst rel err " + detail::format_double(worst_rel) + " for " + worst_case);
    }

    {
        bool near_ok = true, far_ok = true;
        for (double snr_db = 0.0; snr_db <= 40.0; snr_db += 5.0) {
            SystemConfig cfg = reference;
            cfg.rho = db_to_linear(snr_db);
            const auto terms = comparison_terms(cfg);
            near_ok = near_ok && terms.near_ordering_ok;
            far_ok = far_ok && terms.far_ordering_ok;
        }
        check("near ordering P(RNRF) > P(NNNF) over SNR grid", near_ok);
        check("far ordering P(NNNF) < P(RNRF) < P(NNFF) over SNR grid", far_ok);
    }

    report.text = os.str();
    return report;
}

} // namespace mmnoma
