#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mmnoma {

namespace detail {

// Regularized P(s,x) by power series, for x < s + 1.
inline double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    double a = s;
    for (int n = 0; n < 500; ++n) {
        a += 1.0;
        term *= x / a;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16)
            break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

// Regularized Q(s,x) by Lentz continued fraction, for x >= s + 1.
inline double gamma_q_cf(double s, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16)
            break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

} // namespace detail

/// Regularized lower incomplete gamma P(s,x) = gamma(s,x)/Gamma(s).
inline double regularized_gamma_p(double s, double x) {
    if (!(s > 0.0))
        throw std::domain_error("regularized_gamma_p: s must be positive");
    if (x < 0.0)
        throw std::domain_error("regularized_gamma_p: x must be nonnegative");
    if (x == 0.0)
        return 0.0;
    if (x < s + 1.0)
        return detail::gamma_p_series(s, x);
    return 1.0 - detail::gamma_q_cf(s, x);
}

/// Lower incomplete gamma gamma(s,x) = int_0^x t^{s-1} e^{-t} dt.
/// Series for x < s+1, continued fraction otherwise.
inline double lower_incomplete_gamma(double s, double x) {
    return regularized_gamma_p(s, x) * std::tgamma(s);
}

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
inline double chi_square_sf(double stat, double dof) {
    if (stat <= 0.0)
        return 1.0;
    return 1.0 - regularized_gamma_p(0.5 * dof, 0.5 * stat);
}

} // namespace mmnoma
