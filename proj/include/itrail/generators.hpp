#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "itrail/graph.hpp"
#include "itrail/rng.hpp"

namespace itrail {

namespace detail {

// Decodes a flat pair index in [0, n(n-1)/2) into the lexicographic pair
// (u, v), u < v. Rows are u = 0, 1, ...; row u starts at offset
// u*n - u*(u+1)/2.
inline Edge decode_pair(std::uint64_t idx, std::uint64_t n) {
    auto row_offset = [n](std::uint64_t u) { return u * n - u * (u + 1) / 2; };
    // Float guess, then exact fix-up; exact for all indices below 2^52.
    double nn = static_cast<double>(n) - 0.5;
    double disc = nn * nn - 2.0 * static_cast<double>(idx);
    auto u = static_cast<std::uint64_t>(std::max(0.0, nn - std::sqrt(std::max(0.0, disc))));
    if (u >= n - 1) u = n - 2;
    while (u > 0 && row_offset(u) > idx) --u;
    while (row_offset(u + 1) <= idx) ++u;
    std::uint64_t v = u + 1 + (idx - row_offset(u));
    return {static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v)};
}

}  // namespace detail

// Erdos-Renyi G(n, p): each of the n(n-1)/2 pairs is an edge independently
// with probability p. Sparse p uses geometric index skipping, so the cost is
// O(n + m) rather than O(n^2).
inline Graph gen_gnp(std::uint32_t n, double p, const Seed& seed) {
    if (n == 0) throw std::invalid_argument("gen_gnp: n must be positive");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("gen_gnp: p must lie in [0,1]");
    if (p == 0.0) return Graph(n, {});
    if (p == 1.0) return complete_graph(n);

    const std::uint64_t total = pair_count(n);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(static_cast<double>(total) * p * 1.1) + 16);
    SplitMix64 rng = seed.child(stream::gnp).stream();
    const double denom = std::log1p(-p);
    std::uint64_t idx = 0;  // next candidate pair index
    while (idx < total) {
        // Number of excluded pairs before the next included one.
        double skip = std::floor(std::log(rng.u01_open()) / denom);
        if (skip >= static_cast<double>(total - idx)) break;
        idx += static_cast<std::uint64_t>(skip);
        edges.push_back(detail::decode_pair(idx, n));
        ++idx;
    }
    return Graph(n, std::move(edges));
}

// G(n, m): a uniformly random m-subset of all pairs, sampled with Floyd's
// algorithm (exactly uniform). Edges are emitted in lexicographic order.
inline Graph gen_gnm(std::uint32_t n, std::uint64_t m, const Seed& seed) {
    if (n == 0) throw std::invalid_argument("gen_gnm: n must be positive");
    const std::uint64_t total = pair_count(n);
    if (m > total) throw std::invalid_argument("gen_gnm: m exceeds the number of vertex pairs");
    if (m == total) return complete_graph(n);

    SplitMix64 rng = seed.child(stream::gnm).stream();
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2 + 16);
    for (std::uint64_t j = total - m; j < total; ++j) {
        std::uint64_t t = rng.below(j + 1);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> idx(chosen.begin(), chosen.end());
    std::sort(idx.begin(), idx.end());
    std::vector<Edge> edges;
    edges.reserve(idx.size());
    for (std::uint64_t i : idx) edges.push_back(detail::decode_pair(i, n));
    return Graph(n, std::move(edges));
}

}  // namespace itrail
