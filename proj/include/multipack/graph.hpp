#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "multipack/errors.hpp"
#include "multipack/geometry.hpp"

namespace multipack {

enum class GraphKind { generic, nng, gp };

using Edge = std::pair<Index, Index>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
/// Parallel edges collapse; self-loops are rejected.
class ConflictGraph {
public:
    ConflictGraph() = default;

    ConflictGraph(std::size_t n, std::vector<Edge> edges, GraphKind kind = GraphKind::generic) : n_(n), kind_(kind) {
        for (auto& [u, v] : edges) {
            if (u >= n || v >= n) throw RangeError("ConflictGraph: edge endpoint out of range");
            if (u == v) throw InvariantViolation("ConflictGraph: self-loop at " + std::to_string(u));
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        edges_ = std::move(edges);
        adjacency_.assign(n, {});
        for (auto [u, v] : edges_) {
            adjacency_[u].push_back(v);
            adjacency_[v].push_back(u);
        }
        for (auto& list : adjacency_) std::sort(list.begin(), list.end());
    }

    std::size_t size() const noexcept { return n_; }
    GraphKind kind() const noexcept { return kind_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::span<const Index> neighbors(Index v) const { return adjacency_.at(v); }
    std::size_t degree(Index v) const { return adjacency_.at(v).size(); }

    bool adjacent(Index u, Index v) const {
        const auto& list = adjacency_.at(u);
        return std::binary_search(list.begin(), list.end(), v);
    }

    std::size_t max_degree() const {
        std::size_t best = 0;
        for (const auto& list : adjacency_) best = std::max(best, list.size());
        return best;
    }

    bool is_independent(std::span<const Index> set) const {
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j)
                if (adjacent(set[i], set[j])) return false;
        return true;
    }

    /// Acyclic iff no union-find merge ever joins two vertices already connected.
    bool is_forest() const {
        std::vector<Index> parent(n_);
        std::iota(parent.begin(), parent.end(), Index{0});
        auto find = [&](Index x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto [u, v] : edges_) {
            Index a = find(u), b = find(v);
            if (a == b) return false;
            parent[a] = b;
        }
        return true;
    }

    /// One "u v" line per edge, u < v, lexicographically sorted.
    std::string edge_list() const {
        std::string out;
        for (auto [u, v] : edges_) out += std::to_string(u) + ' ' + std::to_string(v) + '\n';
        return out;
    }

private:
    std::size_t n_ = 0;
    GraphKind kind_ = GraphKind::generic;
    std::vector<Edge> edges_;
    std::vector<std::vector<Index>> adjacency_;
};

/// Nearest-neighbor graph: edge {v, n_1(v)} for every v. Mutual pairs
/// collapse to one edge, so with unique nearest neighbors the result is a
/// forest; anything else is an upstream general-position bug.
template <class Table>
ConflictGraph build_nng(const Table& table) {
    const std::size_t n = table.size();
    if (n < 2) throw RangeError("build_nng: need at least two points");
    if (table.depth() < 1) throw RangeError("build_nng: table must hold first neighbors");
    std::vector<Edge> edges;
    edges.reserve(n);
    for (Index v = 0; v < n; ++v) edges.emplace_back(v, table.neighbor(v, 1));
    ConflictGraph g(n, std::move(edges), GraphKind::nng);
    if (!g.is_forest()) throw InvariantViolation("build_nng: nearest-neighbor graph contains a cycle");
    return g;
}

/// Conflict graph for radius 2: for every v the triangle {v, n_1(v), n_2(v)}.
/// Independent sets are exactly the 2-multipackings.
template <class Table>
ConflictGraph build_gp(const Table& table) {
    const std::size_t n = table.size();
    if (n < 3) throw RangeError("build_gp: need at least three points");
    if (table.depth() < 2) throw RangeError("build_gp: table must hold first and second neighbors");
    std::vector<Edge> edges;
    edges.reserve(3 * n);
    for (Index v = 0; v < n; ++v) {
        const Index u1 = table.neighbor(v, 1), u2 = table.neighbor(v, 2);
        edges.emplace_back(v, u1);
        edges.emplace_back(v, u2);
        edges.emplace_back(u1, u2);
    }
    return ConflictGraph(n, std::move(edges), GraphKind::gp);
}

} // namespace multipack
