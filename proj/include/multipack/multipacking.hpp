#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "multipack/errors.hpp"
#include "multipack/geometry.hpp"

namespace multipack {

/// Sentinel radius meaning r = n - 1 (a plain multipacking).
inline constexpr std::size_t full_radius = std::numeric_limits<std::size_t>::max();

/// Maps full_radius to n - 1 and validates 1 <= r <= n - 1.
inline std::size_t resolve_radius(std::size_t r, std::size_t n) {
    if (r == full_radius) {
        if (n < 2) throw RangeError("radius: full radius needs at least two points");
        return n - 1;
    }
    if (r < 1 || r + 1 > n) throw RangeError("radius " + std::to_string(r) + " outside [1, " + std::to_string(n == 0 ? 0 : n - 1) + "]");
    return r;
}

/// Largest number of selected points allowed inside N_s[v].
constexpr std::size_t neighborhood_bound(std::size_t s) noexcept { return (s + 1) / 2; }

/// A set of point indices together with the radius it is claimed valid for.
class Multipacking {
public:
    Multipacking() = default;
    Multipacking(std::vector<Index> indices, std::size_t r) : indices_(std::move(indices)), r_(r) {
        std::sort(indices_.begin(), indices_.end());
        if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
            throw RangeError("multipacking: duplicate index");
    }

    const std::vector<Index>& indices() const noexcept { return indices_; }
    std::size_t r() const noexcept { return r_; }
    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }

    friend bool operator==(const Multipacking&, const Multipacking&) = default;

private:
    std::vector<Index> indices_;
    std::size_t r_ = 0;
};

/// |N_s[v] ∩ M| = count exceeds bound = floor((s + 1) / 2).
struct Violation {
    Index v = 0;
    std::size_t s = 0;
    std::size_t count = 0;
    std::size_t bound = 0;
    friend bool operator==(const Violation&, const Violation&) = default;
};

struct CheckResult {
    bool valid = true;
    std::optional<Violation> violation;
    explicit operator bool() const noexcept { return valid; }
};

struct SolveStats {
    std::uint64_t nodes = 0;
    std::chrono::nanoseconds elapsed{0};
    /// Only set by decision solvers (fpt); false means "no such set".
    std::optional<bool> found;
};

struct SolveReport {
    Multipacking packing;
    std::string method;
    SolveStats stats;

    std::size_t size() const noexcept { return packing.size(); }
    const std::vector<Index>& indices() const noexcept { return packing.indices(); }
    /// 0 when the report comes from a pure graph solver.
    std::size_t r() const noexcept { return packing.r(); }
};

namespace detail {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    std::chrono::nanoseconds elapsed() const { return std::chrono::steady_clock::now() - start_; }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace detail

/// Validity of M as an r-multipacking: for all v and 1 <= s <= r,
/// |N_s[v] ∩ M| <= floor((s + 1) / 2). O(n r) after an O(n) membership mask.
/// Works with any table exposing size(), depth() and order(v) to depth >= r.
/// The reported violation is the first in (v, s) lexicographic order.
template <class Table>
CheckResult is_r_multipacking(const Table& table, std::span<const Index> members, std::size_t r) {
    const std::size_t n = table.size();
    if (r < 1 || r + 1 > n) throw RangeError("is_r_multipacking: radius " + std::to_string(r) + " outside [1, n - 1]");
    if (r > table.depth()) throw RangeError("is_r_multipacking: table too shallow for radius " + std::to_string(r));
    std::vector<char> in(n, 0);
    for (Index m : members) {
        if (m >= n) throw RangeError("is_r_multipacking: index " + std::to_string(m) + " out of range");
        in[m] = 1;
    }
    for (Index v = 0; v < n; ++v) {
        auto order = table.order(v);
        std::size_t count = in[v] ? 1 : 0;
        for (std::size_t s = 1; s <= r; ++s) {
            count += in[order[s - 1]] ? 1 : 0;
            if (count > neighborhood_bound(s)) return {false, Violation{v, s, count, neighborhood_bound(s)}};
        }
    }
    return {};
}

inline CheckResult is_r_multipacking(const PointSet& points, const NeighborTable& table, std::span<const Index> members, std::size_t r) {
    if (table.size() != points.size()) throw RangeError("is_r_multipacking: table does not match point set");
    return is_r_multipacking(table, members, r);
}

inline constexpr std::size_t default_bruteforce_limit = 16;

namespace detail {

// Depth-first search over index sequences in increasing order. Sequences are
// visited in lexicographic order, so the first set reaching a new maximum
// size is the lexicographically smallest maximum. Invalid sets are never
// extended (validity is hereditary).
class SubsetSearch {
public:
    SubsetSearch(const NeighborTable& table, std::size_t r) : table_(table), n_(table.size()), r_(r), counts_(n_ * (r + 1), 0) {}

    std::vector<Index> run(std::uint64_t& nodes) {
        current_.clear();
        best_.clear();
        upper_ = r_ == n_ - 1 ? n_ / 2 : n_;
        extend(0, nodes);
        return best_;
    }

private:
    bool add(Index i) {
        bool ok = true;
        for (Index v = 0; v < n_; ++v) {
            const std::size_t t = table_.rank(v, i);
            if (t > r_) continue;
            for (std::size_t s = std::max<std::size_t>(t, 1); s <= r_; ++s)
                if (++counts_[v * (r_ + 1) + s] > neighborhood_bound(s)) ok = false;
        }
        if (!ok) remove(i);
        return ok;
    }

    void remove(Index i) {
        for (Index v = 0; v < n_; ++v) {
            const std::size_t t = table_.rank(v, i);
            if (t > r_) continue;
            for (std::size_t s = std::max<std::size_t>(t, 1); s <= r_; ++s) --counts_[v * (r_ + 1) + s];
        }
    }

    void extend(Index next, std::uint64_t& nodes) {
        ++nodes;
        if (current_.size() > best_.size()) best_ = current_;
        if (best_.size() >= upper_) return;
        for (Index i = next; i < n_; ++i) {
            if (current_.size() + (n_ - i) <= best_.size()) return;
            if (!add(i)) continue;
            current_.push_back(i);
            extend(i + 1, nodes);
            current_.pop_back();
            remove(i);
            if (best_.size() >= upper_) return;
        }
    }

    const NeighborTable& table_;
    std::size_t n_, r_;
    std::vector<std::size_t> counts_;
    std::vector<Index> current_, best_;
    std::size_t upper_ = 0;
};

} // namespace detail

/// Exact MP_r(P) by pruned exhaustive search. The witness is the
/// lexicographically smallest maximum set. n = 1 yields {0} by convention.
inline SolveReport bruteforce_max_r_multipacking(const PointSet& points, std::size_t r,
                                                 std::size_t limit_n = default_bruteforce_limit) {
    detail::Stopwatch clock;
    const std::size_t n = points.size();
    if (n == 0) throw RangeError("bruteforce: empty point set");
    if (n > limit_n) throw BudgetExceeded("bruteforce: n = " + std::to_string(n) + " exceeds limit " + std::to_string(limit_n));
    SolveReport report;
    report.method = "brute";
    if (n == 1) {
        report.packing = Multipacking({0}, 0);
        report.stats.nodes = 1;
        report.stats.elapsed = clock.elapsed();
        return report;
    }
    r = resolve_radius(r, n);
    auto table = build_neighbor_table(points);
    detail::SubsetSearch search(table, r);
    report.packing = Multipacking(search.run(report.stats.nodes), r);
    report.stats.elapsed = clock.elapsed();
    return report;
}

/// MP(P): the full-radius case.
inline SolveReport multipacking_number(const PointSet& points, std::size_t limit_n = default_bruteforce_limit) {
    return bruteforce_max_r_multipacking(points, full_radius, limit_n);
}

} // namespace multipack
