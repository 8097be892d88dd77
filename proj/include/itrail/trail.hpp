#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "itrail/graph.hpp"
#include "itrail/ordering.hpp"

namespace itrail {

// Certified increasing walk: vertices v_0..v_L, edges e_1..e_L with strictly
// increasing labels. A Path is a Trail whose vertices are also distinct;
// validate_path enforces the extra invariant.
struct Trail {
    std::vector<std::uint32_t> vertices;
    std::vector<std::uint32_t> edge_indices;
    std::vector<std::uint32_t> labels;

    std::size_t length() const { return edge_indices.size(); }
    bool empty() const { return edge_indices.empty(); }
};

using Path = Trail;

enum class WalkDefect {
    none,
    shape_mismatch,       // sequence lengths disagree
    vertex_out_of_range,
    edge_out_of_range,
    not_incident,         // edge i does not join vertices i-1 and i
    label_mismatch,       // stored label differs from the ordering's label
    labels_not_increasing,
    repeated_edge,
    repeated_vertex,      // paths only
};

struct ValidationResult {
    WalkDefect defect = WalkDefect::none;
    std::size_t position = 0;  // index of the offending step

    explicit operator bool() const { return defect == WalkDefect::none; }
};

inline const char* to_string(WalkDefect d) {
    switch (d) {
        case WalkDefect::none: return "none";
        case WalkDefect::shape_mismatch: return "shape_mismatch";
        case WalkDefect::vertex_out_of_range: return "vertex_out_of_range";
        case WalkDefect::edge_out_of_range: return "edge_out_of_range";
        case WalkDefect::not_incident: return "not_incident";
        case WalkDefect::label_mismatch: return "label_mismatch";
        case WalkDefect::labels_not_increasing: return "labels_not_increasing";
        case WalkDefect::repeated_edge: return "repeated_edge";
        case WalkDefect::repeated_vertex: return "repeated_vertex";
    }
    return "unknown";
}

// Independent certifier: checks incidence, edge-distinctness and strict label
// increase against the graph and ordering, not against solver bookkeeping.
inline ValidationResult validate_trail(const Graph& g, const EdgeOrdering& ord, const Trail& t) {
    const std::size_t L = t.edge_indices.size();
    if (t.labels.size() != L) return {WalkDefect::shape_mismatch, 0};
    if (L == 0) {
        if (t.vertices.size() > 1) return {WalkDefect::shape_mismatch, 0};
        if (t.vertices.size() == 1 && t.vertices[0] >= g.vertex_count())
            return {WalkDefect::vertex_out_of_range, 0};
        return {};
    }
    if (t.vertices.size() != L + 1) return {WalkDefect::shape_mismatch, 0};
    for (std::size_t i = 0; i <= L; ++i)
        if (t.vertices[i] >= g.vertex_count()) return {WalkDefect::vertex_out_of_range, i};
    std::unordered_set<std::uint32_t> used;
    used.reserve(L * 2);
    for (std::size_t i = 0; i < L; ++i) {
        std::uint32_t e = t.edge_indices[i];
        if (e >= g.edge_count()) return {WalkDefect::edge_out_of_range, i};
        const Edge& ed = g.edge(e);
        std::uint32_t a = t.vertices[i], b = t.vertices[i + 1];
        if (!((ed.u == a && ed.v == b) || (ed.u == b && ed.v == a)))
            return {WalkDefect::not_incident, i};
        if (t.labels[i] != ord.label[e]) return {WalkDefect::label_mismatch, i};
        if (i > 0 && t.labels[i] <= t.labels[i - 1]) return {WalkDefect::labels_not_increasing, i};
        if (!used.insert(e).second) return {WalkDefect::repeated_edge, i};
    }
    return {};
}

inline ValidationResult validate_path(const Graph& g, const EdgeOrdering& ord, const Path& p) {
    ValidationResult r = validate_trail(g, ord, p);
    if (!r) return r;
    std::unordered_set<std::uint32_t> seen;
    seen.reserve(p.vertices.size() * 2);
    for (std::size_t i = 0; i < p.vertices.size(); ++i)
        if (!seen.insert(p.vertices[i]).second) return {WalkDefect::repeated_vertex, i};
    return {};
}

}  // namespace itrail
