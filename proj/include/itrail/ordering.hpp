#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "itrail/graph.hpp"
#include "itrail/rng.hpp"

namespace itrail {

// Bijective edge labeling: label[e] is the rank of edge e in {1,...,m}.
struct EdgeOrdering {
    std::vector<std::uint32_t> label;

    std::size_t size() const { return label.size(); }

    bool is_bijection() const {
        std::vector<char> seen(label.size() + 1, 0);
        for (std::uint32_t l : label) {
            if (l < 1 || l > label.size() || seen[l]) return false;
            seen[l] = 1;
        }
        return true;
    }

    // Inverse map: position i holds the edge that carries label i+1. This is
    // the processing order used by the label-sweep solvers.
    std::vector<std::uint32_t> label_to_edge() const {
        std::vector<std::uint32_t> order(label.size());
        for (std::uint32_t e = 0; e < label.size(); ++e) order[label[e] - 1] = e;
        return order;
    }

    friend bool operator==(const EdgeOrdering&, const EdgeOrdering&) = default;
};

// Real-valued edge labels in [0,1]; the continuous stand-in for an ordering.
struct RealLabeling {
    std::vector<double> x;
};

struct OrderedGraph {
    Graph graph;
    EdgeOrdering ordering;

    OrderedGraph(Graph g, EdgeOrdering o) : graph(std::move(g)), ordering(std::move(o)) {
        if (ordering.label.size() != graph.edge_count())
            throw std::invalid_argument("OrderedGraph: ordering length differs from edge count");
    }
};

// Uniformly random bijection onto {1,...,m} via an unbiased Fisher-Yates
// shuffle. Same seed, same ordering, bit for bit.
inline EdgeOrdering random_ordering(const Graph& g, const Seed& seed) {
    auto m = static_cast<std::uint32_t>(g.edge_count());
    EdgeOrdering ord;
    ord.label.resize(m);
    std::iota(ord.label.begin(), ord.label.end(), 1u);
    SplitMix64 rng = seed.child(stream::ordering).stream();
    for (std::uint32_t i = m; i > 1; --i) {
        std::uint32_t j = rng.below32(i);
        std::swap(ord.label[i - 1], ord.label[j]);
    }
    return ord;
}

inline RealLabeling random_real_labels(std::size_t m, const Seed& seed) {
    RealLabeling lab;
    lab.x.resize(m);
    SplitMix64 rng = seed.child(stream::real_labels).stream();
    for (double& v : lab.x) v = rng.u01();
    return lab;
}

// Rank transform of real labels. Ties (possible in finite precision) are
// broken by edge index, so the result is always a bijection.
inline EdgeOrdering ordering_from_reals(const RealLabeling& labels) {
    const std::size_t m = labels.x.size();
    for (double v : labels.x)
        if (!(v >= 0.0 && v <= 1.0))
            throw std::invalid_argument("ordering_from_reals: labels must lie in [0,1]");
    std::vector<std::uint32_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0u);
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
        return labels.x[a] != labels.x[b] ? labels.x[a] < labels.x[b] : a < b;
    });
    EdgeOrdering ord;
    ord.label.resize(m);
    for (std::uint32_t r = 0; r < m; ++r) ord.label[idx[r]] = r + 1;
    return ord;
}

}  // namespace itrail
