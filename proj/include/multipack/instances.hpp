#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "multipack/errors.hpp"
#include "multipack/geometry.hpp"
#include "multipack/multipacking.hpp"
#include "multipack/parallel.hpp"
#include "multipack/rng.hpp"

namespace multipack {

namespace detail {

// Frozen fixtures (data/fixtures/v1). Found by the seeded polygon search in
// tests/fixture_search.hpp: radius 100, jitter 30, seed 1.
inline constexpr std::array<std::array<std::int64_t, 2>, 5> kPentagon{{{-4, 115}, {-113, 4}, {-71, -106}, {41, -96}, {78, 10}}};
inline constexpr std::array<std::array<std::int64_t, 2>, 4> kSquare{{{-4, 115}, {-118, -27}, {-12, -125}, {82, -15}}};

} // namespace detail

/// Irregular convex pentagon in which every vertex has its two cyclic
/// neighbors as first and second nearest points. Multipacking number 1.
inline PointSet pentagon_five() {
    PointSet points = PointSet::from_integers(std::span<const std::array<std::int64_t, 2>>(detail::kPentagon));
    const auto table = build_neighbor_table(points);
    for (Index i = 0; i < 5; ++i) {
        const Index prev = (i + 4) % 5, next = (i + 1) % 5;
        const Index a = table.neighbor(i, 1), b = table.neighbor(i, 2);
        if (!((a == prev && b == next) || (a == next && b == prev)))
            throw InvariantViolation("pentagon_five: cyclic neighbor property fails at vertex " + std::to_string(i));
    }
    return points;
}

/// Perturbed square: each corner's two nearest points are its adjacent
/// corners, so every pair lies in some N_2[w]. Multipacking number 1.
inline PointSet square_four() {
    PointSet points = PointSet::from_integers(std::span<const std::array<std::int64_t, 2>>(detail::kSquare));
    if (multipacking_number(points).size() != 1) throw InvariantViolation("square_four: multipacking number is not 1");
    return points;
}

/// n distinct integer points uniform on [0, grid)^dim, in general position.
/// Tied points are redrawn one at a time. Reproducible from the seed alone.
inline PointSet random_point_set(std::size_t n, unsigned dim, std::uint64_t seed, std::uint64_t grid) {
    if (n < 1) throw RangeError("random_point_set: n must be positive");
    if (dim != 1 && dim != 2) throw RangeError("random_point_set: dim must be 1 or 2");
    if (grid / n < n) throw RangeError("random_point_set: grid must be at least n^2");
    if (grid > (std::uint64_t{1} << 62)) throw RangeError("random_point_set: grid too large");
    SplitMix64 rng(seed);
    std::set<std::array<std::int64_t, 2>> used;
    auto draw = [&] {
        for (;;) {
            std::array<std::int64_t, 2> p{static_cast<std::int64_t>(rng.below(grid)), 0};
            if (dim == 2) p[1] = static_cast<std::int64_t>(rng.below(grid));
            if (used.insert(p).second) return p;
        }
    };
    std::vector<std::array<std::int64_t, 2>> coords(n);
    for (auto& c : coords) c = draw();

    auto materialize = [&] {
        std::vector<Point> pts;
        pts.reserve(n);
        for (const auto& c : coords) {
            if (dim == 1)
                pts.emplace_back(Coordinate(c[0]));
            else
                pts.emplace_back(Coordinate(c[0]), Coordinate(c[1]));
        }
        return PointSet(std::move(pts));
    };

    const std::size_t budget = 1000 + 10 * n;
    for (std::size_t attempt = 0; attempt < budget; ++attempt) {
        PointSet points = materialize();
        auto tie = detail::first_tie(points, default_threads());
        if (!tie) return points;
        used.erase(coords[tie->b]);
        coords[tie->b] = draw();
    }
    throw Error("random_point_set: retry budget exhausted");
}

struct MmpScanResult {
    std::size_t checked = 0;
    std::size_t min_mp = 0;
    std::vector<PointSet> counterexamples;
    std::vector<std::size_t> mp_values; // per trial, in trial order
};

/// Draws `trials` random sets of `set_size` planar points and computes each
/// multipacking number. Sets with MP below `target` are counterexamples to
/// "every set of this size has a multipacking of size target". Grids cycle
/// through coarse and fine resolutions to vary the configurations.
inline MmpScanResult mmp_scan(std::size_t set_size, std::size_t trials, std::uint64_t seed, std::size_t target,
                              unsigned threads = default_threads()) {
    if (trials < 1) throw RangeError("mmp_scan: trials must be positive");
    static constexpr std::array<std::uint64_t, 3> kGrids{64, 1024, std::uint64_t{1} << 20};
    const SplitMix64 root(seed);
    std::vector<std::size_t> mp(trials);
    std::vector<PointSet> sets(trials);
    parallel_for(trials, [&](std::size_t i) {
        const std::uint64_t grid = std::max<std::uint64_t>(kGrids[i % kGrids.size()], set_size * set_size);
        sets[i] = random_point_set(set_size, 2, root.fork(i).next(), grid);
        mp[i] = multipacking_number(sets[i]).size();
    }, threads);
    MmpScanResult result;
    result.checked = trials;
    result.min_mp = *std::min_element(mp.begin(), mp.end());
    for (std::size_t i = 0; i < trials; ++i)
        if (mp[i] < target) result.counterexamples.push_back(sets[i]);
    result.mp_values = std::move(mp);
    return result;
}

/// Every 6-point set should admit a multipacking of size 2.
inline MmpScanResult mmp2_scan(std::size_t trials, std::uint64_t seed, unsigned threads = default_threads()) {
    return mmp_scan(6, trials, seed, 2, threads);
}

} // namespace multipack
