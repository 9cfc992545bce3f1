#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mmnoma/geometry.hpp"
#include "mmnoma/rng.hpp"

namespace mmnoma {

/// Device pairing schemes: random/random, nearest/nearest, nearest/farthest.
enum class PairingScheme { RNRF, NNNF, NNFF };

inline const char* to_string(PairingScheme s) {
    switch (s) {
    case PairingScheme::RNRF: return "RNRF";
    case PairingScheme::NNNF: return "NNNF";
    case PairingScheme::NNFF: return "NNFF";
    }
    return "?";
}

/// The scheduled (near, far) device pair.
struct PairSelection {
    DevicePoint near;
    DevicePoint far;
};

namespace detail {

inline std::size_t argmin_distance(const std::vector<DevicePoint>& pts) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].distance < pts[best].distance) // ties go to the lowest index
            best = i;
    return best;
}

inline std::size_t argmax_distance(const std::vector<DevicePoint>& pts) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].distance > pts[best].distance)
            best = i;
    return best;
}

inline std::size_t uniform_index(std::size_t n, RandomStream& rng) {
    // n is tiny here; modulo bias on 64 bits is negligible
    return static_cast<std::size_t>(rng.next() % n);
}

} // namespace detail

/// Selects the scheduled pair. Selection uses distances only, never fading
/// gains. NNNF and NNFF pick the same near device; only RNRF consumes
/// randomness.
inline PairSelection select_pair(PairingScheme scheme, const std::vector<DevicePoint>& group_a,
                                 const std::vector<DevicePoint>& group_b, RandomStream& rng) {
    if (group_a.empty() || group_b.empty())
        throw std::invalid_argument("select_pair: both groups must be nonempty");
    switch (scheme) {
    case PairingScheme::RNRF:
        return {group_a[detail::uniform_index(group_a.size(), rng)],
                group_b[detail::uniform_index(group_b.size(), rng)]};
    case PairingScheme::NNNF:
        return {group_a[detail::argmin_distance(group_a)],
                group_b[detail::argmin_distance(group_b)]};
    case PairingScheme::NNFF:
        return {group_a[detail::argmin_distance(group_a)],
                group_b[detail::argmax_distance(group_b)]};
    }
    throw std::logic_error("select_pair: unknown scheme");
}

} // namespace mmnoma
