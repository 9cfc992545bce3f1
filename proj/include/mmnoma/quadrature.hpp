#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mmnoma {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0; // estimated absolute error
    bool converged = false;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1].
// Column 0: abscissa, column 1: Gauss-7 weight, column 2: Kronrod-15 weight.
inline constexpr double gk15[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0, 0.204432940075298892},
    {0.586087235467691130, 0.0, 0.169004726639267903},
    {0.864864423359769073, 0.0, 0.104790010322250184},
    {0.991455371120812639, 0.0, 0.022935322010529225},
};

template <class Func>
inline void gk15_apply(const Func& f, double a, double b, double& kronrod, double& err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f0 = f(mid);
    double g7 = gk15[0][1] * f0;
    double k15 = gk15[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = half * gk15[i][0];
        const double fs = f(mid + dx) + f(mid - dx);
        g7 += gk15[i][1] * fs;
        k15 += gk15[i][2] * fs;
    }
    g7 *= half;
    k15 *= half;
    kronrod = k15;
    err = std::fabs(k15 - g7);
    // standard QUADPACK-style sharpening of the raw difference
    if (err > 0.0)
        err = std::min(err, 200.0 * err * std::sqrt(err));
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod 7-15 integration of f over [a, b].
/// Splits the segment with the largest error estimate until the total
/// estimated error meets max(abs_tol, rel_tol * |integral|).
template <class Func>
QuadratureResult integrate(const Func& f, double a, double b, double abs_tol = 1e-12,
                           double rel_tol = 1e-10, int max_segments = 2000) {
    struct Segment {
        double a, b, value, error;
    };
    if (a == b)
        return {0.0, 0.0, true};

    std::vector<Segment> segs;
    segs.reserve(64);
    Segment s0{a, b, 0.0, 0.0};
    detail::gk15_apply(f, a, b, s0.value, s0.error);
    segs.push_back(s0);

    double total = s0.value;
    double total_err = s0.error;
    while (static_cast<int>(segs.size()) < max_segments) {
        const double tol = std::max(abs_tol, rel_tol * std::fabs(total));
        if (total_err <= tol)
            return {total, total_err, true};
        // refine the worst segment
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error)
                worst = i;
        const Segment seg = segs[worst];
        const double mid = 0.5 * (seg.a + seg.b);
        Segment left{seg.a, mid, 0.0, 0.0}, right{mid, seg.b, 0.0, 0.0};
        detail::gk15_apply(f, left.a, left.b, left.value, left.error);
        detail::gk15_apply(f, right.a, right.b, right.value, right.error);
        total += left.value + right.value - seg.value;
        total_err += left.error + right.error - seg.error;
        segs[worst] = left;
        segs.push_back(right);
    }
    const double tol = std::max(abs_tol, rel_tol * std::fabs(total));
    return {total, total_err, total_err <= tol};
}

/// Same as integrate() but throws if the tolerance was not reached.
template <class Func>
double integrate_checked(const Func& f, double a, double b, double abs_tol = 1e-12,
                         double rel_tol = 1e-10, int max_segments = 2000) {
    const QuadratureResult r = integrate(f, a, b, abs_tol, rel_tol, max_segments);
    if (!r.converged)
        throw std::runtime_error("quadrature did not converge: achieved error " +
                                 std::to_string(r.error));
    return r.value;
}

} // namespace mmnoma
