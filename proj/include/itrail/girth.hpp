#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "itrail/graph.hpp"

namespace itrail {

namespace detail {

// Truncated-BFS scratch for cycle detection, reusable across roots. Stamp
// versioning keeps repeated scans allocation- and clear-free.
class CycleScan {
public:
    explicit CycleScan(const Graph& g)
        : g_(g),
          dist_(g.vertex_count(), 0),
          parent_(g.vertex_count(), kNone),
          stamp_(g.vertex_count(), 0) {}

    // Searches for a cycle of length < k passing through `root`, looking only
    // at vertices with alive[v] != 0 (alive == nullptr means everything).
    // Returns the vertices of one such cycle, or an empty vector.
    //
    // BFS is truncated at depth floor((k-1)/2): every vertex of a short cycle
    // through the root lies within that radius, and some cycle edge must be a
    // non-tree edge, so scanning the adjacency of every reached vertex cannot
    // miss it. A hit (x,y) is reduced to a genuine cycle through the lowest
    // common ancestor of x and y.
    std::vector<std::uint32_t> find_short_cycle(std::uint32_t root, std::uint32_t k,
                                                const std::vector<char>* alive) {
        const std::uint32_t cap = (k - 1) / 2;
        ++version_;
        dist_[root] = 0;
        parent_[root] = kNone;
        stamp_[root] = version_;
        queue_.assign(1, root);
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            std::uint32_t u = queue_[head];
            for (const AdjEntry& a : g_.neighbors(u)) {
                std::uint32_t w = a.to;
                if (alive && !(*alive)[w]) continue;
                if (stamp_[w] != version_) {
                    if (dist_[u] >= cap) continue;
                    stamp_[w] = version_;
                    dist_[w] = dist_[u] + 1;
                    parent_[w] = u;
                    queue_.push_back(w);
                    continue;
                }
                if (parent_[u] == w || parent_[w] == u) continue;  // tree edge
                if (dist_[u] + dist_[w] + 1 <= k - 1) return extract_cycle(u, w);
            }
        }
        return {};
    }

private:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    std::vector<std::uint32_t> extract_cycle(std::uint32_t x, std::uint32_t y) {
        std::vector<std::uint32_t> left{x}, right{y};
        while (dist_[x] > dist_[y]) left.push_back(x = parent_[x]);
        while (dist_[y] > dist_[x]) right.push_back(y = parent_[y]);
        while (x != y) {
            left.push_back(x = parent_[x]);
            right.push_back(y = parent_[y]);
        }
        // left ends at the common ancestor, right stops just before it.
        right.pop_back();
        for (auto it = right.rbegin(); it != right.rend(); ++it) left.push_back(*it);
        return left;
    }

    const Graph& g_;
    std::vector<std::uint32_t> dist_, parent_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t version_ = 0;
    std::vector<std::uint32_t> queue_;
};

}  // namespace detail

// Certificate that no cycle shorter than k exists. Linear-ish per vertex for
// small k; this is the checker intended for large graphs.
inline bool girth_at_least(const Graph& g, std::uint32_t k) {
    if (k <= 3) return true;
    detail::CycleScan scan(g);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (!scan.find_short_cycle(v, k, nullptr).empty()) return false;
    return true;
}

// Exact girth: BFS from every vertex, pruned by the best cycle found so far.
// nullopt for forests. Intended for small and medium graphs; for a cheap
// one-sided check on large graphs use girth_at_least.
inline std::optional<std::uint32_t> girth(const Graph& g) {
    const std::uint32_t n = g.vertex_count();
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t best = kNone;
    std::vector<std::uint32_t> dist(n), parent(n), stamp(n, 0), queue;
    std::uint32_t version = 0;
    for (std::uint32_t root = 0; root < n && best > 3; ++root) {
        ++version;
        dist[root] = 0;
        parent[root] = kNone;
        stamp[root] = version;
        queue.assign(1, root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::uint32_t u = queue[head];
            for (const AdjEntry& a : g.neighbors(u)) {
                std::uint32_t w = a.to;
                if (stamp[w] != version) {
                    // A cycle through root via deeper vertices has length
                    // >= 2*(dist+1); stop expanding once that cannot reach
                    // the incumbent.
                    if (best != kNone && 2 * dist[u] + 2 > best) continue;
                    stamp[w] = version;
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                    continue;
                }
                if (parent[u] == w || parent[w] == u) continue;
                best = std::min(best, dist[u] + dist[w] + 1);
            }
        }
    }
    if (best == kNone) return std::nullopt;
    return best;
}

}  // namespace itrail
