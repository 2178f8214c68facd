#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <set>
#include <utility>
#include <vector>

#include "multipack/errors.hpp"
#include "multipack/geometry.hpp"
#include "multipack/graph.hpp"
#include "multipack/multipacking.hpp"

namespace multipack {

inline constexpr std::uint64_t default_node_budget = 50'000'000;

/// Degree bound of the radius-2 conflict graph of any planar point set in
/// general position.
inline constexpr std::size_t gp_degree_bound = 17;

namespace detail {

/// Fixed-universe bitset used by the independent-set searches.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::size_t n, bool full = false) : n_(n), words_((n + 63) / 64, full ? ~std::uint64_t{0} : 0) {
        if (full && n % 64 != 0) words_.back() = (std::uint64_t{1} << (n % 64)) - 1;
    }

    void set(Index i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(Index i) { words_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(Index i) const { return (words_[i / 64] >> (i % 64)) & 1U; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    std::size_t count_and(const VertexSet& o) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) c += static_cast<std::size_t>(std::popcount(words_[i] & o.words_[i]));
        return c;
    }
    bool empty() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }
    VertexSet& operator&=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }
    VertexSet& operator|=(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }
    VertexSet& subtract(const VertexSet& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }
    friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
    friend VertexSet minus(VertexSet a, const VertexSet& b) { return a.subtract(b); }

    /// Calls fn(i) for members in ascending order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    std::vector<Index> members() const {
        std::vector<Index> out;
        for_each([&](Index i) { out.push_back(i); });
        return out;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

struct GraphBits {
    std::vector<VertexSet> open;   // N(v)
    std::vector<VertexSet> closed; // N[v]

    explicit GraphBits(const ConflictGraph& g) {
        const std::size_t n = g.size();
        open.assign(n, VertexSet(n));
        for (Index v = 0; v < n; ++v)
            for (Index u : g.neighbors(v)) open[v].set(u);
        closed = open;
        for (Index v = 0; v < n; ++v) closed[v].set(v);
    }
};

/// Exact maximum independent set by branch and bound.
///
/// bounded(S, lb) returns alpha(S) exactly whenever alpha(S) > lb and some
/// value <= lb otherwise. Degree-0/1 vertices are taken outright, connected
/// components are solved separately, a greedy clique cover bounds alpha from
/// above, and branching is on a maximum-degree vertex.
class MaxIndependentSet {
public:
    MaxIndependentSet(const ConflictGraph& g, std::uint64_t budget) : n_(g.size()), bits_(g), budget_(budget) {}

    std::uint64_t nodes() const noexcept { return nodes_; }

    long long alpha(const VertexSet& s) { return bounded(s, -1); }

    /// Lexicographically smallest maximum independent set: fix vertices in
    /// ascending order whenever some maximum set still contains them.
    std::vector<Index> lex_smallest_maximum() {
        VertexSet s(n_, true);
        long long need = alpha(s);
        std::vector<Index> chosen;
        for (Index i = 0; i < n_ && need > 0; ++i) {
            if (!s.test(i)) continue;
            VertexSet rest = minus(s, bits_.closed[i]);
            if (1 + bounded(rest, need - 2) >= need) {
                chosen.push_back(i);
                s = std::move(rest);
                --need;
            } else {
                s.reset(i);
            }
        }
        return chosen;
    }

private:
    void tick() {
        if (++nodes_ > budget_) throw BudgetExceeded("exact_max_is: node budget of " + std::to_string(budget_) + " exceeded");
    }

    std::size_t degree_in(Index v, const VertexSet& s) const { return bits_.open[v].count_and(s); }

    long long clique_cover(const VertexSet& s) const {
        std::vector<VertexSet> common; // vertices adjacent to every member of clique c
        s.for_each([&](Index v) {
            for (auto& c : common)
                if (c.test(v)) {
                    c &= bits_.open[v];
                    return;
                }
            common.push_back(bits_.open[v] & s);
        });
        return static_cast<long long>(common.size());
    }

    std::vector<VertexSet> components(const VertexSet& s) const {
        std::vector<VertexSet> out;
        VertexSet left = s;
        while (!left.empty()) {
            Index start = 0;
            bool found = false;
            left.for_each([&](Index v) {
                if (!found) start = v, found = true;
            });
            VertexSet comp(n_), frontier(n_);
            comp.set(start);
            frontier.set(start);
            while (!frontier.empty()) {
                VertexSet next(n_);
                frontier.for_each([&](Index v) { next |= bits_.open[v]; });
                next &= left;
                next.subtract(comp);
                comp |= next;
                frontier = std::move(next);
            }
            left.subtract(comp);
            out.push_back(std::move(comp));
        }
        return out;
    }

    long long bounded(VertexSet s, long long lb) {
        tick();
        long long taken = 0;
        for (bool changed = true; changed;) {
            changed = false;
            for (Index v : s.members()) {
                if (!s.test(v)) continue;
                const std::size_t d = degree_in(v, s);
                if (d == 0) {
                    s.reset(v);
                } else if (d == 1) {
                    s.subtract(bits_.closed[v]);
                } else {
                    continue;
                }
                ++taken;
                changed = true;
            }
        }
        if (s.empty()) return taken;
        const long long lb_rest = lb - taken;

        auto comps = components(s);
        if (comps.size() > 1) {
            std::vector<long long> ubs;
            long long rest = 0;
            for (const auto& c : comps) rest += ubs.emplace_back(clique_cover(c));
            long long done = 0;
            for (std::size_t i = 0; i < comps.size(); ++i) {
                rest -= ubs[i];
                const long long lb_i = lb_rest - done - rest;
                const long long val = ubs[i] <= lb_i ? ubs[i] : bounded(comps[i], lb_i);
                if (val <= lb_i) return taken + done + val + rest;
                done += val;
            }
            return taken + done;
        }

        const long long ub = clique_cover(s);
        if (ub <= lb_rest) return taken + ub;

        Index pivot = 0;
        std::size_t pivot_degree = 0;
        bool first = true;
        s.for_each([&](Index v) {
            const std::size_t d = degree_in(v, s);
            if (first || d > pivot_degree) pivot = v, pivot_degree = d, first = false;
        });
        const long long with = 1 + bounded(minus(s, bits_.closed[pivot]), lb_rest - 1);
        VertexSet without = s;
        without.reset(pivot);
        const long long other = bounded(std::move(without), std::max(lb_rest, with));
        return taken + std::max(with, other);
    }

    std::size_t n_;
    GraphBits bits_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
};

/// Decides whether an independent set of size k exists by branching on the
/// closed neighborhood of a minimum-degree vertex: if any size-k set exists,
/// one of them meets N[v]. Counts branching nodes, of which there are fewer
/// than (max_degree + 1)^k.
class BoundedDegreeBranching {
public:
    explicit BoundedDegreeBranching(const ConflictGraph& g) : n_(g.size()), bits_(g) {}

    std::uint64_t nodes() const noexcept { return nodes_; }

    bool find(std::size_t k, std::vector<Index>& chosen) { return search(VertexSet(n_, true), k, chosen); }

private:
    bool search(const VertexSet& s, std::size_t k, std::vector<Index>& chosen) {
        if (k == 0) return true;
        if (s.count() < k) return false;
        ++nodes_;
        Index pivot = 0;
        std::size_t pivot_degree = std::numeric_limits<std::size_t>::max();
        s.for_each([&](Index v) {
            const std::size_t d = bits_.open[v].count_and(s);
            if (d < pivot_degree) pivot = v, pivot_degree = d;
        });
        const VertexSet branch = bits_.closed[pivot] & s;
        for (Index u : branch.members()) {
            chosen.push_back(u);
            if (search(minus(s, bits_.closed[u]), k - 1, chosen)) return true;
            chosen.pop_back();
        }
        return false;
    }

    std::size_t n_;
    GraphBits bits_;
    std::uint64_t nodes_ = 0;
};

} // namespace detail

/// Maximum independent set of a forest: two-state DP per tree (root = the
/// smallest index of its component; children visited in ascending order).
/// Ties between including and excluding a vertex resolve to excluding it.
inline std::vector<Index> forest_max_independent_set(const ConflictGraph& g) {
    if (!g.is_forest()) throw InvariantViolation("forest_max_independent_set: graph has a cycle");
    const std::size_t n = g.size();
    constexpr Index none = std::numeric_limits<Index>::max();
    std::vector<Index> parent(n, none), preorder;
    std::vector<char> seen(n, 0);
    preorder.reserve(n);
    for (Index root = 0; root < n; ++root) {
        if (seen[root]) continue;
        std::vector<Index> stack{root};
        seen[root] = 1;
        while (!stack.empty()) {
            Index v = stack.back();
            stack.pop_back();
            preorder.push_back(v);
            auto nb = g.neighbors(v);
            for (auto it = nb.rbegin(); it != nb.rend(); ++it)
                if (!seen[*it]) {
                    seen[*it] = 1;
                    parent[*it] = v;
                    stack.push_back(*it);
                }
        }
    }
    std::vector<std::size_t> inc(n, 1), exc(n, 0);
    for (auto it = preorder.rbegin(); it != preorder.rend(); ++it) {
        const Index v = *it, p = parent[v];
        if (p == none) continue;
        inc[p] += exc[v];
        exc[p] += std::max(inc[v], exc[v]);
    }
    std::vector<char> take(n, 0);
    for (Index v : preorder) {
        const Index p = parent[v];
        take[v] = (p != none && take[p]) ? 0 : (inc[v] > exc[v] ? 1 : 0);
    }
    std::vector<Index> out;
    for (Index v = 0; v < n; ++v)
        if (take[v]) out.push_back(v);
    return out;
}

/// Maximum 1-multipacking as a maximum independent set of the nearest-neighbor forest.
inline SolveReport max_1_multipacking(const PointSet& points) {
    detail::Stopwatch clock;
    if (points.empty()) throw RangeError("max_1_multipacking: empty point set");
    SolveReport report;
    report.method = "nng";
    if (points.size() == 1) {
        report.packing = Multipacking({0}, 0);
    } else {
        const auto graph = build_nng(nearest_neighbors(points, 1));
        report.packing = Multipacking(forest_max_independent_set(graph), 1);
        report.stats.nodes = graph.size();
    }
    report.stats.elapsed = clock.elapsed();
    return report;
}

/// Exact maximum independent set; the witness is the lexicographically
/// smallest maximum set. The report's radius is 0 (graph-level result).
inline SolveReport exact_max_is(const ConflictGraph& g, std::uint64_t node_budget = default_node_budget) {
    detail::Stopwatch clock;
    detail::MaxIndependentSet search(g, node_budget);
    SolveReport report;
    report.method = "exact";
    report.packing = Multipacking(search.lex_smallest_maximum(), 0);
    report.stats.nodes = search.nodes();
    report.stats.elapsed = clock.elapsed();
    return report;
}

/// Maximum 2-multipacking via an exact maximum independent set of G_P.
inline SolveReport max_2_multipacking_exact(const PointSet& points, std::uint64_t node_budget = default_node_budget) {
    detail::Stopwatch clock;
    auto report = exact_max_is(build_gp(nearest_neighbors(points, 2)), node_budget);
    report.packing = Multipacking(report.indices(), 2);
    report.stats.elapsed = clock.elapsed();
    return report;
}

/// Size-k independent set of g, if one exists (stats.found tells which).
inline SolveReport fpt_independent_set(const ConflictGraph& g, std::size_t k) {
    detail::Stopwatch clock;
    if (k == 0) throw RangeError("fpt: k must be positive");
    detail::BoundedDegreeBranching search(g);
    std::vector<Index> chosen;
    SolveReport report;
    report.method = "fpt";
    report.stats.found = search.find(k, chosen);
    if (!*report.stats.found) chosen.clear();
    report.packing = Multipacking(std::move(chosen), 0);
    report.stats.nodes = search.nodes();
    report.stats.elapsed = clock.elapsed();
    return report;
}

/// A 2-multipacking of size exactly k, or stats.found == false.
inline SolveReport fpt_2_multipacking(const PointSet& points, std::size_t k) {
    if (k == 0) throw RangeError("fpt_2_multipacking: k must be positive");
    detail::Stopwatch clock;
    auto report = fpt_independent_set(build_gp(nearest_neighbors(points, 2)), k);
    report.packing = Multipacking(report.indices(), 2);
    report.stats.elapsed = clock.elapsed();
    return report;
}

/// Minimum-degree greedy independent set followed by 1-out/2-in swaps: drop
/// one chosen vertex x, insert two non-adjacent vertices whose only chosen
/// neighbor was x, then re-saturate. Repeats until no swap applies.
/// stats.nodes counts applied swaps.
inline std::pair<std::vector<Index>, std::uint64_t> greedy_local_search_is(const ConflictGraph& g) {
    const std::size_t n = g.size();
    std::vector<std::size_t> degree(n);
    std::set<std::pair<std::size_t, Index>> queue;
    for (Index v = 0; v < n; ++v) queue.emplace(degree[v] = g.degree(v), v);
    std::vector<char> alive(n, 1), in(n, 0);
    auto drop = [&](Index u) {
        queue.erase({degree[u], u});
        alive[u] = 0;
        for (Index w : g.neighbors(u))
            if (alive[w]) {
                queue.erase({degree[w], w});
                queue.emplace(--degree[w], w);
            }
    };
    while (!queue.empty()) {
        const Index v = queue.begin()->second;
        in[v] = 1;
        drop(v);
        for (Index u : g.neighbors(v))
            if (alive[u]) drop(u);
    }

    std::vector<std::size_t> tight(n, 0); // chosen neighbors of each vertex
    for (Index v = 0; v < n; ++v)
        if (in[v])
            for (Index u : g.neighbors(v)) ++tight[u];
    auto insert = [&](Index v) {
        in[v] = 1;
        for (Index u : g.neighbors(v)) ++tight[u];
    };
    auto saturate = [&] {
        for (Index v = 0; v < n; ++v)
            if (!in[v] && tight[v] == 0) insert(v);
    };

    std::uint64_t swaps = 0;
    for (bool improved = true; improved;) {
        improved = false;
        for (Index x = 0; x < n && !improved; ++x) {
            if (!in[x]) continue;
            std::vector<Index> candidates;
            for (Index y : g.neighbors(x))
                if (!in[y] && tight[y] == 1) candidates.push_back(y);
            for (std::size_t i = 0; i < candidates.size() && !improved; ++i)
                for (std::size_t j = i + 1; j < candidates.size(); ++j) {
                    const Index y = candidates[i], z = candidates[j];
                    if (g.adjacent(y, z)) continue;
                    in[x] = 0;
                    for (Index u : g.neighbors(x)) --tight[u];
                    insert(y);
                    insert(z);
                    saturate();
                    ++swaps;
                    improved = true;
                    break;
                }
        }
    }
    std::vector<Index> out;
    for (Index v = 0; v < n; ++v)
        if (in[v]) out.push_back(v);
    return {out, swaps};
}

inline SolveReport greedy_2_multipacking(const PointSet& points) {
    detail::Stopwatch clock;
    auto [set, swaps] = greedy_local_search_is(build_gp(nearest_neighbors(points, 2)));
    SolveReport report;
    report.method = "greedy";
    report.packing = Multipacking(std::move(set), 2);
    report.stats.nodes = swaps;
    report.stats.elapsed = clock.elapsed();
    return report;
}

struct DegreeAudit {
    std::size_t max_degree = 0;
    Index argmax = 0;
    bool within_bound = true;
};

inline DegreeAudit max_degree_audit(const ConflictGraph& g) {
    DegreeAudit audit;
    for (Index v = 0; v < g.size(); ++v)
        if (g.degree(v) > audit.max_degree) audit.max_degree = g.degree(v), audit.argmax = v;
    audit.within_bound = audit.max_degree <= gp_degree_bound;
    return audit;
}

/// Maximum degree of G_P. Only the first three neighbor ranks of each point
/// need to be tie-free, so this runs on instances far beyond full-table size.
inline DegreeAudit max_degree_audit(const PointSet& points) { return max_degree_audit(build_gp(nearest_neighbors(points, 2))); }

} // namespace multipack
