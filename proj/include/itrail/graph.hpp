#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace itrail {

// Undirected edge, stored once with u < v.
struct Edge {
    std::uint32_t u = 0;
    std::uint32_t v = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Adjacency entry: neighbor plus the index of the connecting edge, so edge
// labelings can be looked up while walking the graph.
struct AdjEntry {
    std::uint32_t to = 0;
    std::uint32_t edge = 0;
};

// Simple undirected graph. Vertices are dense 0-based integers; adjacency is
// CSR-packed and immutable after construction, so concurrent reads are safe.
class Graph {
public:
    Graph() = default;

    Graph(std::uint32_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n == 0) throw std::invalid_argument("Graph: vertex count must be positive");
        for (Edge& e : edges_) {
            if (e.u > e.v) std::swap(e.u, e.v);
            if (e.u == e.v) throw std::invalid_argument("Graph: self-loop rejected");
            if (e.v >= n_) throw std::invalid_argument("Graph: endpoint out of range");
        }
        build_adjacency();
    }

    std::uint32_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(std::uint32_t e) const { return edges_[e]; }

    std::span<const AdjEntry> neighbors(std::uint32_t v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    std::uint32_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }

    // Given an edge and one endpoint, returns the other endpoint.
    std::uint32_t other_endpoint(std::uint32_t e, std::uint32_t at) const {
        const Edge& ed = edges_[e];
        return ed.u == at ? ed.v : ed.u;
    }

    bool has_edge(std::uint32_t u, std::uint32_t v) const {
        if (degree(u) > degree(v)) std::swap(u, v);
        for (const AdjEntry& a : neighbors(u))
            if (a.to == v) return true;
        return false;
    }

    // Structural audit: no loops, no duplicate edges, endpoints in range, and
    // adjacency exactly mirroring the edge list. Throws with a description of
    // the first violation.
    void audit() const {
        if (n_ == 0) throw std::logic_error("audit: empty vertex set");
        std::vector<Edge> sorted = edges_;
        std::sort(sorted.begin(), sorted.end(), [](const Edge& a, const Edge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i].u >= sorted[i].v) throw std::logic_error("audit: edge not stored as (min,max)");
            if (sorted[i].v >= n_) throw std::logic_error("audit: endpoint out of range");
            if (i > 0 && sorted[i] == sorted[i - 1]) throw std::logic_error("audit: duplicate edge");
        }
        std::vector<std::uint32_t> seen(edges_.size(), 0);
        for (std::uint32_t v = 0; v < n_; ++v) {
            for (const AdjEntry& a : neighbors(v)) {
                if (a.edge >= edges_.size()) throw std::logic_error("audit: adjacency edge index out of range");
                const Edge& e = edges_[a.edge];
                if ((e.u != v || e.v != a.to) && (e.v != v || e.u != a.to))
                    throw std::logic_error("audit: adjacency entry disagrees with edge list");
                ++seen[a.edge];
            }
        }
        for (std::uint32_t c : seen)
            if (c != 2) throw std::logic_error("audit: edge does not appear exactly twice in adjacency");
    }

private:
    void build_adjacency() {
        offsets_.assign(n_ + 1, 0);
        for (const Edge& e : edges_) {
            ++offsets_[e.u + 1];
            ++offsets_[e.v + 1];
        }
        for (std::uint32_t v = 0; v < n_; ++v) offsets_[v + 1] += offsets_[v];
        adj_.resize(edges_.size() * 2);
        std::vector<std::uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
        for (std::uint32_t e = 0; e < edges_.size(); ++e) {
            const Edge& ed = edges_[e];
            adj_[cursor[ed.u]++] = {ed.v, e};
            adj_[cursor[ed.v]++] = {ed.u, e};
        }
    }

    std::uint32_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> offsets_;
    std::vector<AdjEntry> adj_;
};

inline double average_degree(const Graph& g) {
    return 2.0 * static_cast<double>(g.edge_count()) / g.vertex_count();
}

inline std::uint64_t pair_count(std::uint64_t n) { return n * (n - 1) / 2; }

inline Graph complete_graph(std::uint32_t n) {
    std::vector<Edge> edges;
    edges.reserve(pair_count(n));
    for (std::uint32_t u = 0; u + 1 < n; ++u)
        for (std::uint32_t v = u + 1; v < n; ++v) edges.push_back({u, v});
    return Graph(n, std::move(edges));
}

inline Graph path_graph(std::uint32_t n) {
    std::vector<Edge> edges;
    for (std::uint32_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return Graph(n, std::move(edges));
}

inline Graph cycle_graph(std::uint32_t n) {
    if (n < 3) throw std::invalid_argument("cycle_graph: need at least 3 vertices");
    std::vector<Edge> edges;
    for (std::uint32_t v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    edges.push_back({0, n - 1});
    return Graph(n, std::move(edges));
}

// Rooted tree where every internal node has `branching` children and all
// leaves sit at depth `depth`. Vertex 0 is the root; vertices are numbered
// level by level, and `level[v]` records the depth of v.
struct DaryTree {
    Graph graph;
    std::uint32_t root = 0;
    std::vector<std::uint32_t> level;
};

inline DaryTree dary_tree(std::uint32_t branching, std::uint32_t depth,
                          std::uint64_t max_vertices = 20'000'000) {
    if (branching < 1 || depth < 1) throw std::invalid_argument("dary_tree: branching and depth must be >= 1");
    std::uint64_t total = 1, width = 1;
    for (std::uint32_t d = 1; d <= depth; ++d) {
        width *= branching;
        total += width;
        if (total > max_vertices)
            throw std::length_error(
                "dary_tree: materialized tree exceeds the vertex budget; "
                "use the implicit root-to-leaf search instead");
    }
    std::vector<Edge> edges;
    edges.reserve(total - 1);
    std::vector<std::uint32_t> level(total, 0);
    std::uint32_t next = 1;
    std::uint64_t level_start = 0, level_size = 1;
    for (std::uint32_t d = 0; d < depth; ++d) {
        for (std::uint64_t i = 0; i < level_size; ++i) {
            auto parent = static_cast<std::uint32_t>(level_start + i);
            for (std::uint32_t c = 0; c < branching; ++c) {
                edges.push_back({parent, next});
                level[next] = d + 1;
                ++next;
            }
        }
        level_start += level_size;
        level_size *= branching;
    }
    return {Graph(static_cast<std::uint32_t>(total), std::move(edges)), 0, std::move(level)};
}

// Induced subgraph on the vertices with keep[v] != 0. Returns the subgraph
// together with the map from new vertex ids back to the originals.
struct InducedSubgraph {
    Graph graph;
    std::vector<std::uint32_t> vertex_map;
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const char> keep) {
    if (keep.size() != g.vertex_count()) throw std::invalid_argument("induced_subgraph: mask size mismatch");
    std::vector<std::uint32_t> vertex_map;
    std::vector<std::uint32_t> new_id(g.vertex_count(), UINT32_MAX);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (keep[v]) {
            new_id[v] = static_cast<std::uint32_t>(vertex_map.size());
            vertex_map.push_back(v);
        }
    }
    std::vector<Edge> edges;
    for (const Edge& e : g.edges())
        if (keep[e.u] && keep[e.v]) edges.push_back({new_id[e.u], new_id[e.v]});
    std::uint32_t n = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(vertex_map.size()));
    return {Graph(n, std::move(edges)), std::move(vertex_map)};
}

}  // namespace itrail
