#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "multipack/coordinate.hpp"
#include "multipack/errors.hpp"
#include "multipack/parallel.hpp"
#include "multipack/rng.hpp"

namespace multipack {

using Index = std::size_t;

/// A point on the line (dim 1) or in the plane (dim 2).
class Point {
public:
    explicit Point(Coordinate x) : coords_{std::move(x), Coordinate{}}, dim_(1) {}
    Point(Coordinate x, Coordinate y) : coords_{std::move(x), std::move(y)}, dim_(2) {}

    unsigned dim() const noexcept { return dim_; }
    const Coordinate& operator[](unsigned axis) const { return coords_.at(axis); }
    const Coordinate& x() const noexcept { return coords_[0]; }
    const Coordinate& y() const noexcept { return coords_[1]; }

    friend bool operator==(const Point& a, const Point& b) {
        return a.dim_ == b.dim_ && a.coords_ == b.coords_;
    }
    friend std::strong_ordering operator<=>(const Point& a, const Point& b) {
        if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
        if (auto c = a.coords_[0] <=> b.coords_[0]; c != 0) return c;
        return a.coords_[1] <=> b.coords_[1];
    }

private:
    std::array<Coordinate, 2> coords_;
    unsigned dim_;
};

/// Exact squared Euclidean distance. Monotone in the true distance, so it
/// orders neighbors without square roots.
inline Coordinate squared_distance(const Point& a, const Point& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("squared_distance: points of dimension " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    Coordinate total;
    for (unsigned axis = 0; axis < a.dim(); ++axis) {
        Coordinate d = a[axis] - b[axis];
        total = total + d * d;
    }
    return total;
}

namespace detail {

/// Coordinates rescaled by the common denominator of the whole set. Distance
/// order is invariant under uniform scaling, so all comparisons become
/// integer comparisons.
template <class Int>
struct IntegerKernel {
    std::vector<Int> coords; // dim entries per point
    unsigned dim = 1;

    Int coord(Index p, unsigned axis) const { return coords[p * dim + axis]; }

    Int sq(Index a, Index b) const {
        Int total = 0;
        for (unsigned axis = 0; axis < dim; ++axis) {
            Int d = coords[a * dim + axis] - coords[b * dim + axis];
            total += d * d;
        }
        return total;
    }

    Int axis_gap_sq(Index a, Index b) const {
        Int d = coords[a * dim] - coords[b * dim];
        return d * d;
    }
};

// |scaled coordinate| below this bound keeps every squared distance of a 2D
// set under 2^61, so int64 arithmetic is exact.
inline constexpr std::int64_t kFastCoordinateBound = std::int64_t{1} << 29;

using KernelVariant = std::variant<IntegerKernel<std::int64_t>, IntegerKernel<BigInt>>;

} // namespace detail

/// Immutable ordered set of distinct points sharing one dimension.
class PointSet {
public:
    PointSet() : kernel_(std::make_shared<detail::KernelVariant>()) {}

    explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {
        if (!points_.empty()) dim_ = points_.front().dim();
        for (const auto& p : points_)
            if (p.dim() != dim_) throw DimensionMismatch("PointSet: mixed point dimensions");
        std::vector<Index> idx(points_.size());
        std::iota(idx.begin(), idx.end(), Index{0});
        std::sort(idx.begin(), idx.end(), [&](Index a, Index b) { return points_[a] < points_[b]; });
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (points_[idx[i - 1]] == points_[idx[i]])
                throw RangeError("PointSet: duplicate point at indices " + std::to_string(std::min(idx[i - 1], idx[i])) + " and " + std::to_string(std::max(idx[i - 1], idx[i])));
        build_kernel();
    }

    static PointSet from_integers(std::span<const std::int64_t> xs) {
        std::vector<Point> pts;
        pts.reserve(xs.size());
        for (auto x : xs) pts.emplace_back(Coordinate(x));
        return PointSet(std::move(pts));
    }

    static PointSet from_integers(std::span<const std::array<std::int64_t, 2>> xys) {
        std::vector<Point> pts;
        pts.reserve(xys.size());
        for (auto [x, y] : xys) pts.emplace_back(Coordinate(x), Coordinate(y));
        return PointSet(std::move(pts));
    }

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    unsigned dim() const noexcept { return dim_; }
    const Point& operator[](Index i) const { return points_.at(i); }
    const std::vector<Point>& points() const noexcept { return points_; }
    auto begin() const noexcept { return points_.begin(); }
    auto end() const noexcept { return points_.end(); }

    /// True when squared distances are evaluated in int64 rather than bignums.
    bool has_fast_kernel() const noexcept { return std::holds_alternative<detail::IntegerKernel<std::int64_t>>(*kernel_); }

    template <class Fn>
    decltype(auto) visit_kernel(Fn&& fn) const {
        return std::visit(std::forward<Fn>(fn), *kernel_);
    }

    friend bool operator==(const PointSet& a, const PointSet& b) { return a.dim_ == b.dim_ && a.points_ == b.points_; }

private:
    void build_kernel() {
        BigInt common = 1;
        for (const auto& p : points_)
            for (unsigned axis = 0; axis < dim_; ++axis) {
                BigInt den = p[axis].denominator();
                common = common / boost::multiprecision::gcd(common, den) * den;
            }
        std::vector<BigInt> scaled;
        scaled.reserve(points_.size() * dim_);
        bool fits = true;
        for (const auto& p : points_)
            for (unsigned axis = 0; axis < dim_; ++axis) {
                BigInt v = p[axis].numerator() * (common / p[axis].denominator());
                if (boost::multiprecision::abs(v) >= detail::kFastCoordinateBound) fits = false;
                scaled.push_back(std::move(v));
            }
        if (fits) {
            detail::IntegerKernel<std::int64_t> k;
            k.dim = dim_;
            k.coords.reserve(scaled.size());
            for (const auto& v : scaled) k.coords.push_back(v.convert_to<std::int64_t>());
            kernel_ = std::make_shared<detail::KernelVariant>(std::move(k));
        } else {
            detail::IntegerKernel<BigInt> k;
            k.dim = dim_;
            k.coords = std::move(scaled);
            kernel_ = std::make_shared<detail::KernelVariant>(std::move(k));
        }
    }

    std::vector<Point> points_;
    unsigned dim_ = 1;
    std::shared_ptr<const detail::KernelVariant> kernel_;
};

/// For every point v, all other points sorted by strictly ascending distance
/// from v. neighbor(v, s) is the s-th nearest (1-based); N_s[v] is v plus
/// the first s entries of order(v).
class NeighborTable {
public:
    NeighborTable() = default;

    std::size_t size() const noexcept { return n_; }
    /// Number of neighbors stored per point (n - 1).
    std::size_t depth() const noexcept { return n_ == 0 ? 0 : n_ - 1; }

    std::span<const Index> order(Index v) const {
        check(v);
        return {order_.data() + v * depth(), depth()};
    }

    Index neighbor(Index v, std::size_t s) const {
        check(v);
        if (s < 1 || s > depth()) throw RangeError("neighbor rank " + std::to_string(s) + " outside [1, " + std::to_string(depth()) + "]");
        return order_[v * depth() + (s - 1)];
    }

    /// Position of u in v's ordering: 0 for u == v, s for the s-th neighbor.
    std::size_t rank(Index v, Index u) const {
        check(v);
        check(u);
        return rank_[v * n_ + u];
    }

    /// N_s[v] = {v} plus the s nearest points, in ascending distance order.
    std::vector<Index> neighborhood(Index v, std::size_t s) const {
        if (s > depth()) throw RangeError("neighborhood size exceeds n - 1");
        auto o = order(v);
        std::vector<Index> out{v};
        out.insert(out.end(), o.begin(), o.begin() + static_cast<std::ptrdiff_t>(s));
        return out;
    }

    friend bool operator==(const NeighborTable& a, const NeighborTable& b) { return a.n_ == b.n_ && a.order_ == b.order_; }

private:
    friend NeighborTable build_neighbor_table(const PointSet& points, unsigned threads);

    void check(Index v) const {
        if (v >= n_) throw RangeError("point index " + std::to_string(v) + " out of range (n = " + std::to_string(n_) + ")");
    }

    std::size_t n_ = 0;
    std::vector<Index> order_;
    std::vector<std::size_t> rank_;
};

/// First `depth` neighbors of every point, with strictly increasing distances
/// through rank depth + 1 (so each of the first `depth` neighbors is unique).
/// Built by an exact sweep along the x axis instead of full sorting, which
/// is what makes large instances tractable.
class NearestNeighbors {
public:
    std::size_t size() const noexcept { return n_; }
    std::size_t depth() const noexcept { return depth_; }

    std::span<const Index> order(Index v) const {
        if (v >= n_) throw RangeError("point index out of range");
        return {order_.data() + v * depth_, depth_};
    }

    Index neighbor(Index v, std::size_t s) const {
        if (v >= n_) throw RangeError("point index out of range");
        if (s < 1 || s > depth_) throw RangeError("neighbor rank outside stored depth");
        return order_[v * depth_ + (s - 1)];
    }

private:
    friend NearestNeighbors nearest_neighbors(const PointSet& points, std::size_t depth, unsigned threads);

    std::size_t n_ = 0;
    std::size_t depth_ = 0;
    std::vector<Index> order_;
};

/// d(v, a) == d(v, b) with a < b.
struct TieViolation {
    Index v, a, b;
    friend bool operator==(const TieViolation&, const TieViolation&) = default;
    friend auto operator<=>(const TieViolation&, const TieViolation&) = default;
};

/// Two distinct unordered pairs with equal length.
struct PairTie {
    std::array<Index, 2> first, second;
    friend bool operator==(const PairTie&, const PairTie&) = default;
};

enum class PositionCheck {
    per_point, ///< distances from each point are pairwise distinct
    global,    ///< all pairwise distances are distinct
};

namespace detail {

template <class Int>
std::vector<Int> distances_from(const IntegerKernel<Int>& k, std::size_t n, Index v) {
    std::vector<Int> d(n);
    for (Index u = 0; u < n; ++u) d[u] = u == v ? Int(0) : k.sq(v, u);
    return d;
}

template <class Int>
std::vector<Index> sorted_order(const std::vector<Int>& d, Index v) {
    std::vector<Index> order;
    order.reserve(d.size() - 1);
    for (Index u = 0; u < d.size(); ++u)
        if (u != v) order.push_back(u);
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (d[a] != d[b]) return d[a] < d[b];
        return a < b;
    });
    return order;
}

// Per-point duplicate detection on int64 distances with a stamped
// open-addressing table; avoids an n log n sort for every source point.
inline bool has_tie_fast(const IntegerKernel<std::int64_t>& k, std::size_t n, Index v,
                         std::vector<std::int64_t>& keys, std::vector<std::uint32_t>& stamps, std::uint32_t stamp) {
    const std::size_t mask = keys.size() - 1;
    for (Index u = 0; u < n; ++u) {
        if (u == v) continue;
        const std::int64_t key = k.sq(v, u);
        std::size_t slot = static_cast<std::size_t>((static_cast<std::uint64_t>(key) * 0x9E3779B97F4A7C15ULL) >> 20) & mask;
        while (stamps[slot] == stamp) {
            if (keys[slot] == key) return true;
            slot = (slot + 1) & mask;
        }
        stamps[slot] = stamp;
        keys[slot] = key;
    }
    return false;
}

} // namespace detail

/// All per-point ties (v, a, b). Empty iff the set is in general position.
inline std::vector<TieViolation> assert_general_position(const PointSet& points, unsigned threads = default_threads()) {
    const std::size_t n = points.size();
    std::vector<std::vector<TieViolation>> per_source(n);
    points.visit_kernel([&](const auto& k) {
        parallel_for(n, [&](Index v) {
            auto d = detail::distances_from(k, n, v);
            auto order = detail::sorted_order(d, v);
            for (std::size_t i = 0; i < order.size();) {
                std::size_t j = i + 1;
                while (j < order.size() && d[order[j]] == d[order[i]]) ++j;
                for (std::size_t a = i; a < j; ++a)
                    for (std::size_t b = a + 1; b < j; ++b)
                        per_source[v].push_back({v, std::min(order[a], order[b]), std::max(order[a], order[b])});
                i = j;
            }
        }, threads);
    });
    std::vector<TieViolation> out;
    for (auto& list : per_source) out.insert(out.end(), list.begin(), list.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// All pairs of distinct point pairs with equal length (the stricter check).
inline std::vector<PairTie> find_global_distance_ties(const PointSet& points) {
    const std::size_t n = points.size();
    std::vector<PairTie> out;
    points.visit_kernel([&](const auto& k) {
        using Int = std::decay_t<decltype(k.sq(0, 0))>;
        std::vector<std::pair<Int, std::array<Index, 2>>> pairs;
        for (Index a = 0; a < n; ++a)
            for (Index b = a + 1; b < n; ++b) pairs.push_back({k.sq(a, b), {a, b}});
        std::sort(pairs.begin(), pairs.end());
        for (std::size_t i = 0; i < pairs.size();) {
            std::size_t j = i + 1;
            while (j < pairs.size() && pairs[j].first == pairs[i].first) ++j;
            for (std::size_t x = i; x < j; ++x)
                for (std::size_t y = x + 1; y < j; ++y) out.push_back({pairs[x].second, pairs[y].second});
            i = j;
        }
    });
    return out;
}

namespace detail {

// First per-point tie in source-index order, or nullopt.
inline std::optional<TieViolation> first_tie(const PointSet& points, unsigned threads) {
    const std::size_t n = points.size();
    if (n < 3) return std::nullopt;
    return points.visit_kernel([&](const auto& k) -> std::optional<TieViolation> {
        using Int = std::decay_t<decltype(k.sq(0, 0))>;
        auto tie_at = [&](Index v) -> std::optional<TieViolation> {
            auto d = distances_from(k, n, v);
            auto order = sorted_order(d, v);
            for (std::size_t i = 0; i + 1 < order.size(); ++i)
                if (d[order[i]] == d[order[i + 1]])
                    return TieViolation{v, std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1])};
            return std::nullopt;
        };
        if constexpr (std::is_same_v<Int, std::int64_t>) {
            std::size_t cap = 1;
            while (cap < 2 * n) cap <<= 1;
            const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
            std::vector<std::optional<Index>> hit(workers);
            parallel_for(workers, [&](std::size_t w) {
                std::vector<std::int64_t> keys(cap);
                std::vector<std::uint32_t> stamps(cap, 0);
                std::uint32_t stamp = 0;
                for (Index v = n * w / workers; v < n * (w + 1) / workers; ++v)
                    if (has_tie_fast(k, n, v, keys, stamps, ++stamp)) {
                        hit[w] = v;
                        return;
                    }
            }, threads);
            for (const auto& v : hit)
                if (v) return tie_at(*v);
            return std::nullopt;
        } else {
            for (Index v = 0; v < n; ++v)
                if (auto t = tie_at(v)) return t;
            return std::nullopt;
        }
    });
}

} // namespace detail

/// Early-exit general-position test; O(n^2) expected time on int64 kernels.
inline bool in_general_position(const PointSet& points, PositionCheck check = PositionCheck::per_point,
                                unsigned threads = default_threads()) {
    if (check == PositionCheck::global) return find_global_distance_ties(points).empty();
    return !detail::first_tie(points, threads).has_value();
}

/// Full neighbor table, one exact sort per point. Throws GeneralPositionError
/// on the first tie found (lowest source index).
inline NeighborTable build_neighbor_table(const PointSet& points, unsigned threads = default_threads()) {
    NeighborTable t;
    const std::size_t n = points.size();
    t.n_ = n;
    if (n == 0) return t;
    const std::size_t depth = n - 1;
    t.order_.assign(n * depth, 0);
    t.rank_.assign(n * n, 0);
    std::vector<std::optional<TieViolation>> ties(n);
    points.visit_kernel([&](const auto& k) {
        parallel_for(n, [&](Index v) {
            auto d = detail::distances_from(k, n, v);
            auto order = detail::sorted_order(d, v);
            for (std::size_t i = 0; i + 1 < order.size(); ++i)
                if (d[order[i]] == d[order[i + 1]]) {
                    ties[v] = TieViolation{v, std::min(order[i], order[i + 1]), std::max(order[i], order[i + 1])};
                    return;
                }
            std::copy(order.begin(), order.end(), t.order_.begin() + static_cast<std::ptrdiff_t>(v * depth));
            for (std::size_t i = 0; i < order.size(); ++i) t.rank_[v * n + order[i]] = i + 1;
        }, threads);
    });
    for (const auto& tie : ties)
        if (tie) throw GeneralPositionError(tie->v, tie->a, tie->b);
    return t;
}

inline NearestNeighbors nearest_neighbors(const PointSet& points, std::size_t depth, unsigned threads = default_threads()) {
    const std::size_t n = points.size();
    if (n > 0 && depth > n - 1) throw RangeError("nearest_neighbors: depth exceeds n - 1");
    NearestNeighbors out;
    out.n_ = n;
    out.depth_ = depth;
    out.order_.assign(n * depth, 0);
    if (n == 0 || depth == 0) return out;
    const std::size_t keep = std::min(depth + 1, n - 1);
    std::vector<std::optional<TieViolation>> ties(n);
    points.visit_kernel([&](const auto& k) {
        using Int = std::decay_t<decltype(k.sq(0, 0))>;
        std::vector<Index> by_x(n);
        std::iota(by_x.begin(), by_x.end(), Index{0});
        std::sort(by_x.begin(), by_x.end(), [&](Index a, Index b) {
            auto ca = k.coord(a, 0), cb = k.coord(b, 0);
            return ca != cb ? ca < cb : a < b;
        });
        std::vector<std::size_t> pos(n);
        for (std::size_t i = 0; i < n; ++i) pos[by_x[i]] = i;

        parallel_for(n, [&](Index v) {
            std::vector<std::pair<Int, Index>> best; // ascending, at most `keep`
            best.reserve(keep + 1);
            auto offer = [&](Index u) {
                Int d = k.sq(v, u);
                if (best.size() == keep && !(d < best.back().first)) return;
                auto it = std::upper_bound(best.begin(), best.end(), d, [](const Int& x, const auto& e) { return x < e.first; });
                best.insert(it, {std::move(d), u});
                if (best.size() > keep) best.pop_back();
            };
            // Walk outward in x order; a side is finished once its x gap alone
            // exceeds the worst kept distance.
            auto sweep = [&](auto step_begin, auto done, auto next) {
                for (auto i = step_begin; !done(i); i = next(i)) {
                    Index u = by_x[i];
                    if (best.size() == keep && best.back().first < k.axis_gap_sq(v, u)) break;
                    offer(u);
                }
            };
            const std::size_t p = pos[v];
            sweep(p + 1, [&](std::size_t i) { return i >= n; }, [](std::size_t i) { return i + 1; });
            sweep(static_cast<std::ptrdiff_t>(p) - 1, [](std::ptrdiff_t i) { return i < 0; }, [](std::ptrdiff_t i) { return i - 1; });
            for (std::size_t i = 0; i + 1 < best.size(); ++i)
                if (best[i].first == best[i + 1].first) {
                    // The tied partner may sit outside the kept window; any tie
                    // inside the first depth + 1 ranks is fatal.
                    ties[v] = TieViolation{v, std::min(best[i].second, best[i + 1].second), std::max(best[i].second, best[i + 1].second)};
                    return;
                }
            for (std::size_t s = 0; s < depth; ++s) out.order_[v * depth + s] = best[s].second;
        }, threads);
    });
    for (const auto& tie : ties)
        if (tie) throw GeneralPositionError(tie->v, tie->a, tie->b);
    return out;
}

/// Moves every coordinate by a seed-derived rational offset in
/// (-epsilon, epsilon) and retries with fresh offsets until the result is in
/// general position.
inline PointSet perturb(const PointSet& points, const Coordinate& epsilon, std::uint64_t seed, unsigned max_attempts = 32) {
    if (!(epsilon > Coordinate(0))) throw RangeError("perturb: epsilon must be positive");
    constexpr std::int64_t kDen = std::int64_t{1} << 20;
    const SplitMix64 root(seed);
    for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
        SplitMix64 stream = root.fork(attempt);
        std::vector<Point> moved;
        moved.reserve(points.size());
        auto shift = [&](const Coordinate& c) {
            const auto k = static_cast<std::int64_t>(stream.below(2 * kDen - 1)) - (kDen - 1);
            return c + epsilon * Coordinate(BigInt(k), BigInt(kDen));
        };
        for (const auto& p : points) {
            if (p.dim() == 1) {
                moved.emplace_back(shift(p.x()));
            } else {
                Coordinate x = shift(p.x());
                moved.emplace_back(std::move(x), shift(p.y()));
            }
        }
        try {
            PointSet candidate(std::move(moved));
            if (in_general_position(candidate)) return candidate;
        } catch (const RangeError&) {
            // collision after shifting; draw again
        }
    }
    throw Error("perturb: retry budget exhausted without reaching general position");
}

} // namespace multipack
