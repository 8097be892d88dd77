#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "itrail/graph.hpp"
#include "itrail/ordering.hpp"

namespace itrail {

// Plain-text graph format:
//   line 1:      "n m"
//   lines 2..m+1: "u v" or "u v label"
// Labels, when present, must be present on every edge and form a bijection
// onto {1,...,m}.
struct ParsedGraph {
    Graph graph;
    std::optional<EdgeOrdering> ordering;
};

class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

inline ParsedGraph parse_graph_text(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) return true;
        }
        ++lineno;
        return false;
    };

    if (!next_line()) throw parse_error(lineno, "missing header line \"n m\"");
    std::uint64_t n = 0, m = 0;
    {
        std::istringstream ss(line);
        std::string extra;
        if (!(ss >> n >> m) || (ss >> extra))
            throw parse_error(lineno, "expected header \"n m\", got \"" + line + "\"");
    }
    if (n == 0 || n > UINT32_MAX) throw parse_error(lineno, "vertex count out of range");

    std::vector<Edge> edges;
    edges.reserve(m);
    std::vector<std::uint32_t> labels;
    bool labels_seen = false;
    for (std::uint64_t i = 0; i < m; ++i) {
        if (!next_line()) throw parse_error(lineno, "expected " + std::to_string(m) + " edge lines, file ended early");
        std::istringstream ss(line);
        std::uint64_t u = 0, v = 0;
        if (!(ss >> u >> v)) throw parse_error(lineno, "expected \"u v [label]\", got \"" + line + "\"");
        std::uint64_t lab = 0;
        bool has_label = static_cast<bool>(ss >> lab);
        std::string extra;
        if (ss >> extra) throw parse_error(lineno, "trailing tokens after edge: \"" + line + "\"");
        if (u >= n || v >= n) throw parse_error(lineno, "endpoint out of range [0," + std::to_string(n) + ")");
        if (u == v) throw parse_error(lineno, "self-loop");
        if (i == 0) labels_seen = has_label;
        if (has_label != labels_seen)
            throw parse_error(lineno, "label column must be present on all edges or none");
        edges.push_back({static_cast<std::uint32_t>(std::min(u, v)), static_cast<std::uint32_t>(std::max(u, v))});
        if (has_label) {
            if (lab < 1 || lab > m) throw parse_error(lineno, "label outside {1,...,m}");
            labels.push_back(static_cast<std::uint32_t>(lab));
        }
    }

    ParsedGraph out{Graph(static_cast<std::uint32_t>(n), std::move(edges)), std::nullopt};
    try {
        out.graph.audit();
    } catch (const std::logic_error& e) {
        throw parse_error(lineno, e.what());
    }
    if (labels_seen) {
        EdgeOrdering ord{std::move(labels)};
        if (!ord.is_bijection()) throw parse_error(lineno, "labels are not a bijection onto {1,...,m}");
        out.ordering = std::move(ord);
    }
    return out;
}

inline void write_graph_text(std::ostream& os, const Graph& g, const EdgeOrdering* ord = nullptr) {
    os << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (std::uint32_t e = 0; e < g.edge_count(); ++e) {
        os << g.edge(e).u << ' ' << g.edge(e).v;
        if (ord) os << ' ' << ord->label[e];
        os << '\n';
    }
}

}  // namespace itrail
