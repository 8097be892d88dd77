#pragma once

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "itrail/graph.hpp"
#include "itrail/ordering.hpp"
#include "itrail/trail.hpp"

namespace itrail {

class budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SearchBudget {
    std::uint64_t max_expansions = 1'000'000;
    enum class OnExhaust { fail, return_best } on_exhaust = OnExhaust::return_best;
};

// ---------------------------------------------------------------------------
// Longest increasing trail.
//
// Sweep the edges in increasing label order, keeping best[v] = length of the
// longest increasing trail ending at v among the labels seen so far. An edge
// (u,v) updates both endpoints from the values held *before* the edge is
// processed; reading the freshly updated endpoint would let the edge extend a
// trail that already contains it. Strictly increasing labels make trail edges
// automatically distinct, so the sweep is exact.
// ---------------------------------------------------------------------------

// Reusable length-only scorer; the buffers survive across calls so ordering
// enumeration loops run allocation-free.
class TrailSweep {
public:
    // `order` lists edge indices by increasing label.
    std::uint32_t run(const Graph& g, std::span<const std::uint32_t> order) {
        best_.assign(g.vertex_count(), 0);
        std::uint32_t top = 0;
        for (std::uint32_t e : order) {
            const Edge& ed = g.edge(e);
            std::uint32_t bu = best_[ed.u], bv = best_[ed.v];
            std::uint32_t nu = std::max(bu, bv + 1), nv = std::max(bv, bu + 1);
            best_[ed.u] = nu;
            best_[ed.v] = nv;
            top = std::max({top, nu, nv});
        }
        return top;
    }

    // Same sweep, but bails out early once some trail reaches `cap`. Used by
    // ordering enumerations that only care whether the score stays below an
    // incumbent minimum.
    std::uint32_t run_capped(const Graph& g, std::span<const std::uint32_t> order, std::uint32_t cap) {
        best_.assign(g.vertex_count(), 0);
        std::uint32_t top = 0;
        for (std::uint32_t e : order) {
            const Edge& ed = g.edge(e);
            std::uint32_t bu = best_[ed.u], bv = best_[ed.v];
            std::uint32_t nu = std::max(bu, bv + 1), nv = std::max(bv, bu + 1);
            best_[ed.u] = nu;
            best_[ed.v] = nv;
            top = std::max({top, nu, nv});
            if (top >= cap) return top;
        }
        return top;
    }

private:
    std::vector<std::uint32_t> best_;
};

inline std::uint32_t longest_increasing_trail_length(const Graph& g, const EdgeOrdering& ord) {
    TrailSweep sweep;
    auto order = ord.label_to_edge();
    return sweep.run(g, order);
}

// Full solve with witness reconstruction. Each improvement appends a node
// (edge, link to the endpoint's previous improvement), so memory stays O(m)
// and backtracking from the best vertex yields the trail in reverse.
inline Trail longest_increasing_trail(const Graph& g, const EdgeOrdering& ord) {
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    struct Node {
        std::uint32_t edge;
        std::uint32_t prev;  // improvement node of the other endpoint, pre-edge
    };
    std::vector<Node> arena;
    arena.reserve(g.edge_count());
    std::vector<std::uint32_t> best(g.vertex_count(), 0);
    std::vector<std::uint32_t> node_of(g.vertex_count(), kNone);

    auto order = ord.label_to_edge();
    for (std::uint32_t e : order) {
        const Edge& ed = g.edge(e);
        std::uint32_t bu = best[ed.u], bv = best[ed.v];
        std::uint32_t nodeu = node_of[ed.u], nodev = node_of[ed.v];
        if (bv + 1 > bu) {
            best[ed.u] = bv + 1;
            arena.push_back({e, nodev});
            node_of[ed.u] = static_cast<std::uint32_t>(arena.size() - 1);
        }
        if (bu + 1 > bv) {
            best[ed.v] = bu + 1;
            arena.push_back({e, nodeu});
            node_of[ed.v] = static_cast<std::uint32_t>(arena.size() - 1);
        }
    }

    std::uint32_t end_vertex = 0;
    for (std::uint32_t v = 1; v < g.vertex_count(); ++v)
        if (best[v] > best[end_vertex]) end_vertex = v;

    Trail t;
    if (best[end_vertex] == 0) return t;

    std::uint32_t L = best[end_vertex];
    t.edge_indices.resize(L);
    t.labels.resize(L);
    t.vertices.resize(L + 1);
    std::uint32_t v = end_vertex;
    std::uint32_t node = node_of[v];
    for (std::uint32_t i = L; i-- > 0;) {
        const Node& nd = arena[node];
        t.vertices[i + 1] = v;
        t.edge_indices[i] = nd.edge;
        t.labels[i] = ord.label[nd.edge];
        v = g.other_endpoint(nd.edge, v);
        node = nd.prev;
    }
    t.vertices[0] = v;
    return t;
}

// ---------------------------------------------------------------------------
// Budgeted exact longest increasing path.
//
// Depth-first search over (vertex, last label, visited set), expanding
// incident edges in ascending label order. A branch is cut when
//   current length + 1 + cont(e, w) <= incumbent,
// where cont(e, w) bounds the longest increasing trail leaving w on labels
// above label(e); trails dominate paths, so the bound is admissible.
// ---------------------------------------------------------------------------

struct PathSearchResult {
    Path path;
    bool exact = false;
    std::uint64_t expansions = 0;
};

namespace detail {

struct BitsetVisited {
    std::bitset<128> bits;
    bool visit(std::uint32_t v) {
        if (bits[v]) return false;
        bits[v] = true;
        return true;
    }
    void unvisit(std::uint32_t v) { bits[v] = false; }
    bool contains(std::uint32_t v) const { return bits[v]; }
};

struct HashVisited {
    std::unordered_set<std::uint32_t> set;
    bool visit(std::uint32_t v) { return set.insert(v).second; }
    void unvisit(std::uint32_t v) { set.erase(v); }
    bool contains(std::uint32_t v) const { return set.contains(v); }
};

// Per-vertex incident edges sorted by ascending label.
struct LabelSortedAdjacency {
    struct Entry {
        std::uint32_t label;
        std::uint32_t edge;
        std::uint32_t to;
    };
    std::vector<std::uint32_t> offsets;
    std::vector<Entry> entries;

    LabelSortedAdjacency(const Graph& g, const EdgeOrdering& ord) {
        offsets.assign(g.vertex_count() + 1, 0);
        entries.resize(g.edge_count() * 2);
        for (const Edge& e : g.edges()) {
            ++offsets[e.u + 1];
            ++offsets[e.v + 1];
        }
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v) offsets[v + 1] += offsets[v];
        std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
        for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(e);
            entries[cursor[ed.u]++] = {ord.label[e], e, ed.v};
            entries[cursor[ed.v]++] = {ord.label[e], e, ed.u};
        }
        for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
            std::sort(entries.begin() + offsets[v], entries.begin() + offsets[v + 1],
                      [](const Entry& a, const Entry& b) { return a.label < b.label; });
    }

    std::span<const Entry> above(std::uint32_t v, std::uint32_t label) const {
        auto first = entries.begin() + offsets[v], last = entries.begin() + offsets[v + 1];
        auto it = std::upper_bound(first, last, label,
                                   [](std::uint32_t l, const Entry& e) { return l < e.label; });
        return {it, last};
    }
};

// Continuation bounds: cont_u[e] (cont_v[e]) bounds the longest increasing
// trail starting at u (v) that uses only labels above label(e). Produced by a
// single sweep in decreasing label order, snapshotting before each edge.
struct ContinuationBounds {
    std::vector<std::uint32_t> cont_u, cont_v, from_start;

    ContinuationBounds(const Graph& g, const EdgeOrdering& ord) {
        cont_u.resize(g.edge_count());
        cont_v.resize(g.edge_count());
        std::vector<std::uint32_t> s(g.vertex_count(), 0);
        auto order = ord.label_to_edge();
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::uint32_t e = *it;
            const Edge& ed = g.edge(e);
            cont_u[e] = s[ed.u];
            cont_v[e] = s[ed.v];
            std::uint32_t su = s[ed.u], sv = s[ed.v];
            s[ed.u] = std::max(su, sv + 1);
            s[ed.v] = std::max(sv, su + 1);
        }
        from_start = std::move(s);
    }

    std::uint32_t at(std::uint32_t e, const Edge& ed, std::uint32_t endpoint) const {
        return endpoint == ed.u ? cont_u[e] : cont_v[e];
    }
};

template <typename Visited>
class PathDfs {
public:
    PathDfs(const Graph& g, const EdgeOrdering& ord, const SearchBudget& budget)
        : g_(g), ord_(ord), adj_(g, ord), bounds_(g, ord), budget_(budget) {}

    PathSearchResult run() {
        PathSearchResult res;
        exhausted_ = false;
        expansions_ = 0;
        best_len_ = 0;
        for (std::uint32_t v = 0; v < g_.vertex_count() && !exhausted_; ++v) {
            if (bounds_.from_start[v] <= best_len_) continue;
            Visited visited{};
            visited.visit(v);
            stack_vertices_.assign(1, v);
            stack_edges_.clear();
            extend(v, 0, visited);
        }
        res.exact = !exhausted_;
        res.expansions = expansions_;
        res.path = std::move(best_path_);
        if (res.path.vertices.empty() && g_.vertex_count() > 0) res.path.vertices = {0};
        if (exhausted_ && budget_.on_exhaust == SearchBudget::OnExhaust::fail)
            throw budget_error("longest_increasing_path_exact: expansion budget exhausted");
        return res;
    }

private:
    void record_best() {
        best_len_ = static_cast<std::uint32_t>(stack_edges_.size());
        best_path_.vertices = stack_vertices_;
        best_path_.edge_indices = stack_edges_;
        best_path_.labels.resize(stack_edges_.size());
        for (std::size_t i = 0; i < stack_edges_.size(); ++i)
            best_path_.labels[i] = ord_.label[stack_edges_[i]];
    }

    void extend(std::uint32_t v, std::uint32_t last_label, Visited& visited) {
        if (stack_edges_.size() > best_len_) record_best();
        if (exhausted_) return;
        for (const auto& entry : adj_.above(v, last_label)) {
            if (visited.contains(entry.to)) continue;
            std::uint32_t bound = bounds_.at(entry.edge, g_.edge(entry.edge), entry.to);
            if (stack_edges_.size() + 1 + bound <= best_len_) continue;
            if (++expansions_ > budget_.max_expansions) {
                exhausted_ = true;
                return;
            }
            visited.visit(entry.to);
            stack_vertices_.push_back(entry.to);
            stack_edges_.push_back(entry.edge);
            extend(entry.to, entry.label, visited);
            stack_edges_.pop_back();
            stack_vertices_.pop_back();
            visited.unvisit(entry.to);
            if (exhausted_) return;
        }
    }

    const Graph& g_;
    const EdgeOrdering& ord_;
    LabelSortedAdjacency adj_;
    ContinuationBounds bounds_;
    SearchBudget budget_;
    std::vector<std::uint32_t> stack_vertices_, stack_edges_;
    Path best_path_;
    std::uint32_t best_len_ = 0;
    std::uint64_t expansions_ = 0;
    bool exhausted_ = false;
};

}  // namespace detail

inline PathSearchResult longest_increasing_path_exact(const Graph& g, const EdgeOrdering& ord,
                                                      const SearchBudget& budget = {}) {
    if (budget.max_expansions == 0)
        throw std::invalid_argument("longest_increasing_path_exact: budget must be positive");
    if (g.vertex_count() <= 128) {
        detail::PathDfs<detail::BitsetVisited> dfs(g, ord, budget);
        return dfs.run();
    }
    detail::PathDfs<detail::HashVisited> dfs(g, ord, budget);
    return dfs.run();
}

// ---------------------------------------------------------------------------
// Brute-force oracles: exhaustive DFS over every increasing walk. Independent
// of the sweep/pruned solvers above, deliberately unclever.
// ---------------------------------------------------------------------------

namespace detail {

inline void check_bruteforce_guard(const Graph& g) {
    if (g.edge_count() > 25)
        throw std::invalid_argument("bruteforce enumeration limited to graphs with at most 25 edges");
}

inline std::uint32_t walk_deeper(const Graph& g, const EdgeOrdering& ord, std::uint32_t v,
                                 std::uint32_t last_label, std::vector<char>* on_path) {
    std::uint32_t best = 0;
    for (const AdjEntry& a : g.neighbors(v)) {
        if (ord.label[a.edge] <= last_label) continue;
        if (on_path && (*on_path)[a.to]) continue;
        if (on_path) (*on_path)[a.to] = 1;
        std::uint32_t len = 1 + walk_deeper(g, ord, a.to, ord.label[a.edge], on_path);
        if (on_path) (*on_path)[a.to] = 0;
        best = std::max(best, len);
    }
    return best;
}

}  // namespace detail

inline std::uint32_t enumerate_trails_bruteforce(const Graph& g, const EdgeOrdering& ord) {
    detail::check_bruteforce_guard(g);
    std::uint32_t best = 0;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        best = std::max(best, detail::walk_deeper(g, ord, v, 0, nullptr));
    return best;
}

inline std::uint32_t enumerate_paths_bruteforce(const Graph& g, const EdgeOrdering& ord) {
    detail::check_bruteforce_guard(g);
    std::uint32_t best = 0;
    std::vector<char> on_path(g.vertex_count(), 0);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        on_path[v] = 1;
        best = std::max(best, detail::walk_deeper(g, ord, v, 0, &on_path));
        on_path[v] = 0;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Sparse-regime probe: find a long path with a label-blind DFS, cut it into
// floor(L/k) edge-disjoint segments of length k, and count the segments whose
// labels are monotone in at least one traversal direction.
// ---------------------------------------------------------------------------

namespace detail {

// Deepest root-to-leaf branch of the DFS forest, as edge indices in path
// order. A tree branch never repeats a vertex, so this is a path in g.
inline std::vector<std::uint32_t> dfs_deep_path_edges(const Graph& g) {
    const std::uint32_t n = g.vertex_count();
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> parent_vertex(n, kNone), parent_edge(n, kNone), depth(n, 0);
    std::vector<char> seen(n, 0);
    std::vector<std::uint32_t> stack;

    std::uint32_t deepest = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        stack.push_back(root);
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            if (depth[v] > depth[deepest]) deepest = v;
            for (const AdjEntry& a : g.neighbors(v)) {
                if (seen[a.to]) continue;
                seen[a.to] = 1;
                parent_vertex[a.to] = v;
                parent_edge[a.to] = a.edge;
                depth[a.to] = depth[v] + 1;
                stack.push_back(a.to);
            }
        }
    }

    std::vector<std::uint32_t> path_edges;
    path_edges.reserve(depth[deepest]);
    for (std::uint32_t v = deepest; parent_vertex[v] != kNone; v = parent_vertex[v])
        path_edges.push_back(parent_edge[v]);
    std::reverse(path_edges.begin(), path_edges.end());
    return path_edges;
}

}  // namespace detail

struct SparseProbeResult {
    std::uint32_t hits = 0;      // segments increasing in some direction
    std::uint32_t segments = 0;  // segments tested
    std::uint32_t path_length = 0;
};

inline SparseProbeResult sparse_probe_detailed(const Graph& g, const EdgeOrdering& ord, std::uint32_t k) {
    if (k == 0) throw std::invalid_argument("sparse_probe: k must be positive");
    std::vector<std::uint32_t> path_edges = detail::dfs_deep_path_edges(g);
    SparseProbeResult res;
    res.path_length = static_cast<std::uint32_t>(path_edges.size());
    res.segments = res.path_length / k;
    for (std::uint32_t s = 0; s < res.segments; ++s) {
        bool fwd = true, rev = true;
        for (std::uint32_t i = 1; i < k; ++i) {
            std::uint32_t prev = ord.label[path_edges[s * k + i - 1]];
            std::uint32_t cur = ord.label[path_edges[s * k + i]];
            fwd &= prev < cur;
            rev &= prev > cur;
        }
        if (fwd || rev) ++res.hits;
    }
    return res;
}

inline std::uint32_t sparse_probe(const Graph& g, const EdgeOrdering& ord, std::uint32_t k) {
    return sparse_probe_detailed(g, ord, k).hits;
}

}  // namespace itrail
