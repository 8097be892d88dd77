#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "itrail/graph.hpp"
#include "itrail/ordering.hpp"
#include "itrail/prune.hpp"
#include "itrail/solvers.hpp"
#include "itrail/trail.hpp"

namespace itrail {

// Label interval, 1-based inclusive.
struct LabelInterval {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    std::uint64_t size() const { return hi < lo ? 0 : hi - lo + 1; }
    bool contains(std::uint64_t l) const { return l >= lo && l <= hi; }
};

struct IntervalPair {
    LabelInterval connector;  // lower labels: glue edges
    LabelInterval growth;     // higher labels: per-round growth graph
};

enum class StitchMode { trail, path };

struct ScheduleConfig {
    std::uint32_t rounds = 0;         // t; 0 derives floor(m / (a + b))
    std::uint64_t connector_size = 0; // a; 0 derives ceil(n * ln ln n)
    std::uint64_t growth_size = 0;    // b; 0 derives ceil((n/2) * sqrt(ln n))
    double eps = 0.1;
    StitchMode mode = StitchMode::trail;
    std::uint64_t round_budget = 50'000;   // expansions per growth search call
    std::uint32_t depth_target = 0;        // per-round length target; 0 derives from core degree
    // Round cores: drop triangles and low-degree fringe. eps = 0.5 keeps the
    // absorption threshold above one edge on the sparse per-round graphs, so
    // deletion does not cascade through whole components.
    PruneConfig prune{4, 0.5, std::numeric_limits<double>::quiet_NaN()};
    double core_min_retained = 0.02;       // round fails below this retention
    std::uint32_t core_min_degree = 1;     // round fails below this core degree
    std::uint32_t min_gain = 1;            // smallest growth accepted as success
    std::uint32_t root_candidates = 64;    // roots probed while the trail is empty
    std::uint32_t connector_probe_cap = 16;
    bool swap_interval_roles = false;      // connector gets b, growth gets a

    void validate() const {
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("ScheduleConfig: eps must lie in (0,1)");
        if (min_gain < 1) throw std::invalid_argument("ScheduleConfig: min_gain must be at least 1");
        prune.validate();
    }
};

// Fills in the derived sizes for a given (n, m). Natural logarithms; sizes
// rounded up, round count rounded down.
inline ScheduleConfig resolve_schedule(std::uint32_t n, std::uint64_t m, ScheduleConfig cfg = {}) {
    cfg.validate();
    if (cfg.connector_size == 0 || cfg.growth_size == 0) {
        if (n < 3) throw std::invalid_argument("resolve_schedule: derived sizes need n >= 3");
        double ln_n = std::log(static_cast<double>(n));
        if (cfg.connector_size == 0)
            cfg.connector_size = std::max<std::uint64_t>(
                1, static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) * std::log(ln_n))));
        if (cfg.growth_size == 0)
            cfg.growth_size = std::max<std::uint64_t>(
                1, static_cast<std::uint64_t>(std::ceil(static_cast<double>(n) / 2.0 * std::sqrt(ln_n))));
    }
    if (cfg.rounds == 0) {
        std::uint64_t per_round = cfg.connector_size + cfg.growth_size;
        cfg.rounds = static_cast<std::uint32_t>(m / per_round);
    }
    return cfg;
}

// Consecutive disjoint interval pairs covering {1,...,t(a+b)}; labels above
// t(a+b) stay unused. Rejects schedules that do not fit into m labels.
inline std::vector<IntervalPair> partition_labels(std::uint64_t m, const ScheduleConfig& cfg) {
    cfg.validate();
    std::uint64_t a = cfg.connector_size, b = cfg.growth_size;
    if (a == 0 || b == 0) throw std::invalid_argument("partition_labels: interval sizes must be positive");
    if (cfg.swap_interval_roles) std::swap(a, b);
    const std::uint64_t t = cfg.rounds;
    if (t * (a + b) > m) throw std::invalid_argument("partition_labels: t*(a+b) exceeds the label count");
    std::vector<IntervalPair> out;
    out.reserve(t);
    std::uint64_t next = 1;
    for (std::uint64_t i = 0; i < t; ++i) {
        IntervalPair pair;
        pair.connector = {next, next + a - 1};
        next += a;
        pair.growth = {next, next + b - 1};
        next += b;
        out.push_back(pair);
    }
    return out;
}

struct ConnectorEdge {
    std::uint32_t edge = 0;
    std::uint32_t label = 0;
    std::uint32_t to = 0;
};

namespace detail {

// Edges of `h_edges` incident to v with label above the floor, ascending by
// label.
inline std::vector<ConnectorEdge> connector_candidates(const Graph& g, const EdgeOrdering& ord,
                                                       std::uint32_t v,
                                                       std::span<const std::uint32_t> h_edges,
                                                       std::uint64_t floor_label) {
    std::vector<ConnectorEdge> out;
    for (std::uint32_t e : h_edges) {
        const Edge& ed = g.edge(e);
        if (ed.u != v && ed.v != v) continue;
        if (ord.label[e] <= floor_label) continue;
        out.push_back({e, ord.label[e], ed.u == v ? ed.v : ed.u});
    }
    std::sort(out.begin(), out.end(),
              [](const ConnectorEdge& x, const ConnectorEdge& y) { return x.label < y.label; });
    return out;
}

}  // namespace detail

// Smallest-label edge of `h_edges` incident to v whose other endpoint lies in
// `target_set` and whose label exceeds floor_label. The smallest admissible
// label leaves the most room for the labels that follow.
inline std::optional<ConnectorEdge> find_connector(const Graph& g, const EdgeOrdering& ord,
                                                   std::uint32_t v, const std::vector<char>& target_set,
                                                   std::span<const std::uint32_t> h_edges,
                                                   std::uint64_t floor_label) {
    for (const ConnectorEdge& c : detail::connector_candidates(g, ord, v, h_edges, floor_label))
        if (target_set[c.to]) return c;
    return std::nullopt;
}

enum class FailureStage { none, core, reachable_set, connector };

inline const char* to_string(FailureStage s) {
    switch (s) {
        case FailureStage::none: return "none";
        case FailureStage::core: return "core";
        case FailureStage::reachable_set: return "reachable-set";
        case FailureStage::connector: return "connector";
    }
    return "unknown";
}

struct RoundOutcome {
    std::uint32_t index = 0;
    bool success = false;
    FailureStage failure_stage = FailureStage::none;
    std::uint32_t gain = 0;  // edges appended this round, connector included
    double core_retained = 0.0;
    std::uint32_t core_min_degree = 0;
    std::uint32_t target = 0;        // per-round growth target s
    std::uint32_t roots_tested = 0;  // membership probes run (sampled |U_i|)
    std::uint32_t roots_reached = 0; // probes that met the target
    std::uint64_t cumulative_length = 0;
};

struct StitchResult {
    Trail trail;
    std::vector<RoundOutcome> rounds;
    ScheduleConfig resolved;
};

namespace detail {

// Bounded DFS for an increasing path inside one round's growth graph,
// restricted to core vertices (and, in path mode, to vertices not already on
// the global walk). Stops as soon as the target is met.
class GrowthSearch {
public:
    GrowthSearch(const Graph& gi, const EdgeOrdering& sub_ord, const std::vector<char>& core,
                 const std::vector<char>* excluded, std::uint64_t budget)
        : gi_(gi), adj_(gi, sub_ord), core_(core), excluded_(excluded), budget_(budget) {}

    // Longest increasing path found from `start`, as subgraph edge ids in
    // path order. Empty when start is inadmissible.
    std::vector<std::uint32_t> run(std::uint32_t start, std::uint32_t target) {
        best_.clear();
        stack_.clear();
        if (!admissible(start)) return {};
        target_ = target;
        expansions_ = 0;
        on_stack_.assign(gi_.vertex_count(), 0);
        on_stack_[start] = 1;
        extend(start, 0);
        return best_;
    }

private:
    bool admissible(std::uint32_t v) const {
        return core_[v] && !(excluded_ && (*excluded_)[v]);
    }

    bool extend(std::uint32_t v, std::uint32_t last_label) {
        if (stack_.size() > best_.size()) {
            best_ = stack_;
            if (best_.size() >= target_) return true;
        }
        for (const auto& entry : adj_.above(v, last_label)) {
            if (!admissible(entry.to) || on_stack_[entry.to]) continue;
            if (++expansions_ > budget_) return true;  // budget spent: keep best
            on_stack_[entry.to] = 1;
            stack_.push_back(entry.edge);
            bool done = extend(entry.to, entry.label);
            stack_.pop_back();
            on_stack_[entry.to] = 0;
            if (done) return true;
        }
        return false;
    }

    const Graph& gi_;
    LabelSortedAdjacency adj_;
    const std::vector<char>& core_;
    const std::vector<char>* excluded_;
    std::uint64_t budget_ = 0, expansions_ = 0;
    std::uint32_t target_ = 0;
    std::vector<std::uint32_t> stack_, best_;
    std::vector<char> on_stack_;
};

}  // namespace detail

// Round-based construction of a long increasing trail (or path).
//
// Labels are split into consecutive pairs (connector interval, growth
// interval). Round i extracts a pruned core from the growth-interval
// subgraph, looks for a connector edge from the current endpoint into a core
// vertex from which a long increasing path exists, and appends connector plus
// path. Every growth label exceeds every earlier label by construction, so
// the walk stays increasing; failed rounds leave the walk untouched. In path
// mode every search excludes vertices already on the walk.
inline StitchResult run_stitching(const Graph& g, const EdgeOrdering& ord, const ScheduleConfig& config) {
    const std::uint32_t n = g.vertex_count();
    const std::uint64_t m = g.edge_count();
    StitchResult result;
    result.resolved = resolve_schedule(n, m, config);
    const ScheduleConfig& cfg = result.resolved;
    const bool path_mode = cfg.mode == StitchMode::path;
    std::vector<IntervalPair> intervals = partition_labels(m, cfg);
    std::vector<std::uint32_t> by_label = ord.label_to_edge();

    Trail& walk = result.trail;
    std::vector<char> on_walk(n, 0);
    const std::vector<char>* excluded = path_mode ? &on_walk : nullptr;

    auto append_step = [&](std::uint32_t parent_edge, std::uint32_t from) {
        std::uint32_t label = ord.label[parent_edge];
        std::uint32_t to = g.other_endpoint(parent_edge, from);
        if (walk.empty()) {
            if (walk.vertices.empty()) walk.vertices.push_back(from);
        }
        if (walk.vertices.back() != from || (!walk.labels.empty() && label <= walk.labels.back()))
            throw std::logic_error("run_stitching: append would break the increasing-walk invariant");
        walk.vertices.push_back(to);
        walk.edge_indices.push_back(parent_edge);
        walk.labels.push_back(label);
        on_walk[from] = 1;
        on_walk[to] = 1;
    };

    for (std::uint32_t i = 0; i < cfg.rounds; ++i) {
        RoundOutcome outcome;
        outcome.index = i;

        // Growth subgraph on this round's high labels; vertex ids are shared
        // with the parent graph.
        const LabelInterval& growth = intervals[i].growth;
        const LabelInterval& connector = intervals[i].connector;
        std::vector<std::uint32_t> growth_edges(by_label.begin() + (growth.lo - 1),
                                                by_label.begin() + growth.hi);
        std::span<const std::uint32_t> connector_edges(by_label.data() + (connector.lo - 1),
                                                       connector.size());
        std::vector<Edge> sub_edges;
        sub_edges.reserve(growth_edges.size());
        EdgeOrdering sub_ord;
        sub_ord.label.reserve(growth_edges.size());
        std::vector<std::uint32_t> sub_to_parent;
        sub_to_parent.reserve(growth_edges.size());
        for (std::uint32_t e : growth_edges) {
            sub_edges.push_back(g.edge(e));
            // Parent labels keep their relative order; offsets inside the
            // interval are irrelevant to the search.
            sub_ord.label.push_back(ord.label[e]);
            sub_to_parent.push_back(e);
        }
        Graph gi(n, std::move(sub_edges));

        CoreResult core = extract_high_girth_core(gi, cfg.prune);
        outcome.core_retained = core.report.retained_fraction;
        std::uint32_t min_deg = min_degree_within(gi, core.in_core);
        bool core_empty = min_deg == std::numeric_limits<std::uint32_t>::max();
        outcome.core_min_degree = core_empty ? 0 : min_deg;
        if (core_empty || outcome.core_retained < cfg.core_min_retained ||
            outcome.core_min_degree < cfg.core_min_degree) {
            outcome.failure_stage = FailureStage::core;
            outcome.cumulative_length = walk.length();
            result.rounds.push_back(outcome);
            continue;
        }

        std::uint32_t target = cfg.depth_target != 0
                                   ? cfg.depth_target
                                   : static_cast<std::uint32_t>(std::ceil(
                                         (1.0 - cfg.eps / 2.0) * std::exp(1.0) * outcome.core_min_degree));
        outcome.target = target;

        detail::GrowthSearch search(gi, sub_ord, core.in_core, excluded, cfg.round_budget);
        std::vector<std::uint32_t> best_path;  // subgraph edge ids
        std::optional<ConnectorEdge> chosen_connector;
        std::uint32_t best_start = 0;

        if (walk.empty()) {
            // No endpoint to glue to yet: probe core vertices as roots and
            // take the best growth path.
            std::uint32_t probed = 0;
            for (std::uint32_t v = 0; v < n && probed < cfg.root_candidates; ++v) {
                if (!core.in_core[v] || (excluded && (*excluded)[v])) continue;
                ++probed;
                ++outcome.roots_tested;
                std::vector<std::uint32_t> found = search.run(v, target);
                if (found.size() >= target) ++outcome.roots_reached;
                if (found.size() > best_path.size()) {
                    best_path = std::move(found);
                    best_start = v;
                    if (best_path.size() >= target) break;
                }
            }
        } else {
            std::uint32_t endpoint = walk.vertices.back();
            std::uint64_t floor_label = walk.labels.back();
            std::vector<ConnectorEdge> candidates =
                detail::connector_candidates(g, ord, endpoint, connector_edges, floor_label);
            if (candidates.empty()) {
                outcome.failure_stage = FailureStage::connector;
                outcome.cumulative_length = walk.length();
                result.rounds.push_back(outcome);
                continue;
            }
            // Lazy reachable-set membership: run the bounded search from each
            // candidate endpoint, smallest connector label first.
            for (const ConnectorEdge& cand : candidates) {
                if (outcome.roots_tested >= cfg.connector_probe_cap) break;
                if (!core.in_core[cand.to] || (excluded && (*excluded)[cand.to])) continue;
                ++outcome.roots_tested;
                std::vector<std::uint32_t> found = search.run(cand.to, target);
                if (found.size() >= target) {
                    ++outcome.roots_reached;
                    best_path = std::move(found);
                    best_start = cand.to;
                    chosen_connector = cand;
                    break;  // smallest label that certifies membership
                }
                if (found.size() > best_path.size()) {
                    best_path = std::move(found);
                    best_start = cand.to;
                    chosen_connector = cand;
                }
            }
            if (!chosen_connector.has_value()) {
                outcome.failure_stage = FailureStage::reachable_set;
                outcome.cumulative_length = walk.length();
                result.rounds.push_back(outcome);
                continue;
            }
        }

        if (best_path.size() < cfg.min_gain) {
            outcome.failure_stage = FailureStage::reachable_set;
            outcome.cumulative_length = walk.length();
            result.rounds.push_back(outcome);
            continue;
        }

        // Commit: connector first (when gluing), then the growth path.
        std::uint64_t before = walk.length();
        if (chosen_connector.has_value()) append_step(chosen_connector->edge, walk.vertices.back());
        std::uint32_t at = best_start;
        for (std::uint32_t sub_e : best_path) {
            append_step(sub_to_parent[sub_e], at);
            at = gi.other_endpoint(sub_e, at);
        }
        outcome.success = true;
        outcome.gain = static_cast<std::uint32_t>(walk.length() - before);
        outcome.cumulative_length = walk.length();
        result.rounds.push_back(outcome);
    }

    // Certify the output before handing it back.
    ValidationResult check = path_mode ? validate_path(g, ord, walk) : validate_trail(g, ord, walk);
    if (!check)
        throw std::logic_error(std::string("run_stitching: output failed validation: ") +
                               to_string(check.defect));
    return result;
}

}  // namespace itrail
