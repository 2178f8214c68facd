#pragma once

// Seeded search used once to discover the frozen pentagon and square
// fixtures. Kept with the tests so the fixtures can be re-derived.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "multipack/geometry.hpp"
#include "multipack/multipacking.hpp"
#include "multipack/rng.hpp"

namespace multipack::fixtures {

/// Every point's first two neighbors are its two cyclic neighbors.
inline bool has_cyclic_neighbor_property(const PointSet& points) {
    const std::size_t n = points.size();
    auto table = build_neighbor_table(points);
    for (Index i = 0; i < n; ++i) {
        const Index prev = (i + n - 1) % n, next = (i + 1) % n;
        const Index a = table.neighbor(i, 1), b = table.neighbor(i, 2);
        if (!((a == prev && b == next) || (a == next && b == prev))) return false;
    }
    return true;
}

/// Strict convexity of a counter-clockwise polygon.
inline bool strictly_convex_ccw(const std::vector<std::array<std::int64_t, 2>>& poly) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % n];
        const auto& c = poly[(i + 2) % n];
        const std::int64_t cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
        if (cross <= 0) return false;
    }
    return true;
}

/// Jitters a regular k-gon of the given radius on the integer grid until the
/// result is strictly convex, in general position, has the cyclic neighbor
/// property and multipacking number 1.
inline std::optional<std::vector<std::array<std::int64_t, 2>>> search_cyclic_polygon(std::size_t k, std::int64_t radius, std::int64_t jitter,
                                                                                    std::uint64_t seed, unsigned attempts = 10000) {
    SplitMix64 rng(seed);
    for (unsigned attempt = 0; attempt < attempts; ++attempt) {
        std::vector<std::array<std::int64_t, 2>> poly;
        for (std::size_t i = 0; i < k; ++i) {
            const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k) + std::numbers::pi / 2.0;
            const auto dx = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * jitter + 1))) - jitter;
            const auto dy = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(2 * jitter + 1))) - jitter;
            poly.push_back({std::llround(radius * std::cos(angle)) + dx, std::llround(radius * std::sin(angle)) + dy});
        }
        if (!strictly_convex_ccw(poly)) continue;
        PointSet points = PointSet::from_integers(std::span<const std::array<std::int64_t, 2>>(poly));
        if (!in_general_position(points)) continue;
        if (!has_cyclic_neighbor_property(points)) continue;
        if (multipacking_number(points).size() != 1) continue;
        return poly;
    }
    return std::nullopt;
}

} // namespace multipack::fixtures
