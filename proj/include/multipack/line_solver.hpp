#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <vector>

#include "multipack/errors.hpp"
#include "multipack/geometry.hpp"
#include "multipack/multipacking.hpp"

namespace multipack {

/// Maximum r-multipacking of a point set on the line.
///
/// Points are visited in ascending coordinate order; each one is tentatively
/// added and kept iff the whole set still passes the r-multipacking check.
/// On the line every N_s[v] is a run of consecutive points, which is what
/// makes this left-to-right greedy optimal. Cost: n checker calls of O(n r)
/// each. The witness is reported in the caller's index space.
inline SolveReport greedy_max_r_multipacking_1d(const PointSet& points, std::size_t r) {
    detail::Stopwatch clock;
    if (points.dim() != 1) throw DimensionMismatch("greedy_max_r_multipacking_1d: expected 1D points");
    const std::size_t n = points.size();
    if (n == 0) throw RangeError("greedy_max_r_multipacking_1d: empty point set");
    SolveReport report;
    report.method = "greedy1d";
    if (n == 1) {
        report.packing = Multipacking({0}, 0);
        report.stats.elapsed = clock.elapsed();
        return report;
    }
    r = resolve_radius(r, n);
    const auto table = build_neighbor_table(points);

    std::vector<Index> by_x(n);
    std::iota(by_x.begin(), by_x.end(), Index{0});
    std::sort(by_x.begin(), by_x.end(), [&](Index a, Index b) { return points[a].x() < points[b].x(); });

    std::vector<Index> chosen;
    for (Index i : by_x) {
        chosen.push_back(i);
        ++report.stats.nodes;
        if (!is_r_multipacking(table, chosen, r)) chosen.pop_back();
    }
    report.packing = Multipacking(std::move(chosen), r);
    report.stats.elapsed = clock.elapsed();
    return report;
}

/// {2^1, ..., 2^n}: every multipacking has at most floor(n/3) points when
/// n is a multiple of 3.
inline PointSet lower_tight_example(std::size_t n) {
    if (n < 1) throw RangeError("lower_tight_example: n must be positive");
    std::vector<Point> pts;
    pts.reserve(n);
    BigInt value = 1;
    for (std::size_t i = 1; i <= n; ++i) {
        value *= 2;
        pts.emplace_back(Coordinate(value, BigInt(1)));
    }
    return PointSet(std::move(pts));
}

/// i-th point (1-based) of the family with multipacking number floor(n/2)
/// for odd n:
///   odd i:  (4/3)(2^(i-1) - 1) - (i - 1)/2
///   even i: (4/3)(2^i - 1) - i/2 - 2^(i-1) + 1
inline Coordinate upper_tight_value(std::size_t i) {
    if (i < 1) throw RangeError("upper_tight_value: index is 1-based");
    const BigInt two_i = BigInt(1) << static_cast<unsigned>(i);
    const BigInt two_im1 = BigInt(1) << static_cast<unsigned>(i - 1);
    const Coordinate four_thirds(BigInt(4), BigInt(3));
    const auto ii = static_cast<std::int64_t>(i);
    if (i % 2 == 1)
        return four_thirds * Coordinate(BigInt(two_im1 - 1), BigInt(1)) - Coordinate(BigInt(ii - 1), BigInt(2));
    return four_thirds * Coordinate(BigInt(two_i - 1), BigInt(1)) - Coordinate(BigInt(ii), BigInt(2)) -
           Coordinate(two_im1, BigInt(1)) + Coordinate(1);
}

enum class Scaling { unscaled, times_three };

/// Ascending set p_1..p_n of the upper-bound family. By default every value
/// is multiplied by 3 (distance order is scale invariant).
inline PointSet upper_tight_example(std::size_t n, Scaling scaling = Scaling::times_three) {
    if (n < 1) throw RangeError("upper_tight_example: n must be positive");
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        Coordinate v = upper_tight_value(i);
        pts.emplace_back(scaling == Scaling::times_three ? v * Coordinate(3) : v);
    }
    return PointSet(std::move(pts));
}

struct LineBounds {
    std::size_t lower = 0;
    std::size_t upper = 0;
    std::size_t mp = 0;
    bool holds = false;
};

/// Checks floor(n/3) <= MP(P) <= floor(n/2) with MP from the greedy solver.
inline LineBounds verify_1d_bounds(const PointSet& points) {
    if (points.dim() != 1) throw DimensionMismatch("verify_1d_bounds: expected 1D points");
    LineBounds b;
    const std::size_t n = points.size();
    b.lower = n / 3;
    b.upper = n / 2;
    b.mp = greedy_max_r_multipacking_1d(points, full_radius).size();
    b.holds = b.lower <= b.mp && b.mp <= b.upper;
    return b;
}

} // namespace multipack
