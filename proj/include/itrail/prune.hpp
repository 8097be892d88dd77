#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "itrail/girth.hpp"
#include "itrail/graph.hpp"

namespace itrail {

// Expected number of cycles of length at most k in G(n,p):
//   sum_{l=3..k} C(n,l) * (l-1)!/2 * p^l,
// evaluated in log space so large n stays finite.
inline double expected_short_cycles(std::uint64_t n, std::uint32_t k, double p) {
    if (k < 3) throw std::invalid_argument("expected_short_cycles: k must be at least 3");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("expected_short_cycles: p must lie in [0,1]");
    if (p == 0.0 || n < 3) return 0.0;
    double total = 0.0;
    for (std::uint32_t l = 3; l <= k && l <= n; ++l) {
        double log_term = std::lgamma(static_cast<double>(n) + 1) -
                          std::lgamma(static_cast<double>(n - l) + 1) -
                          std::lgamma(static_cast<double>(l) + 1) +
                          std::lgamma(static_cast<double>(l)) - std::log(2.0) +
                          l * std::log(p);
        total += std::exp(log_term);
    }
    return total;
}

struct PruneConfig {
    std::uint32_t girth_target = 6;  // delete cycles shorter than this
    double eps = 0.1;
    // Vertices with original degree <= degree_floor seed the absorption phase.
    // NaN means "use (1 - eps) * average degree".
    double degree_floor = std::numeric_limits<double>::quiet_NaN();

    void validate() const {
        if (girth_target < 3) throw std::invalid_argument("PruneConfig: girth_target must be at least 3");
        if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("PruneConfig: eps must lie in (0,1)");
    }

    double resolved_floor(double avg_degree) const {
        return std::isnan(degree_floor) ? (1.0 - eps) * avg_degree : degree_floor;
    }
};

struct PruneReport {
    std::vector<std::uint32_t> deleted_cycle_vertices;  // phase 1, in deletion order
    std::vector<std::uint32_t> deleted_low_degree;      // degree floor seeds
    std::vector<std::uint32_t> absorbed_sequence;       // phase 2, in deletion order
    std::uint32_t rounds = 0;                           // = absorbed_sequence.size()
    double retained_fraction = 0.0;
    double degree_floor_used = 0.0;
    double absorb_threshold = 0.0;

    std::size_t deleted_total() const {
        return deleted_cycle_vertices.size() + deleted_low_degree.size() + absorbed_sequence.size();
    }

    // Compact single-line summary; safe to embed in CSV aux columns.
    std::string summary_json() const {
        std::ostringstream os;
        os << "{\"cycle_deleted\":" << deleted_cycle_vertices.size()
           << ",\"low_degree\":" << deleted_low_degree.size()
           << ",\"absorbed\":" << absorbed_sequence.size() << ",\"rounds\":" << rounds
           << ",\"retained\":" << retained_fraction << "}";
        return os.str();
    }
};

struct CoreResult {
    std::vector<char> in_core;  // vertex mask
    PruneReport report;

    std::size_t core_size() const {
        std::size_t c = 0;
        for (char b : in_core) c += b != 0;
        return c;
    }
};

// Two-phase core extraction.
//
// Phase 1 scans vertices in index order; while a cycle shorter than
// girth_target passes through the scanned vertex, the cycle vertex of highest
// current degree (ties to the lowest index) is deleted and the scan repeats.
// Deletions never create cycles, so one pass leaves no short cycle behind.
//
// Phase 2 seeds the deleted set with the phase-1 victims plus every vertex of
// original degree <= degree_floor, then repeatedly deletes the lowest-index
// remaining vertex having strictly more than eps * (average degree) edges
// into the deleted set, until none qualifies.
//
// Never fails: a graph that cannot support the requested core comes back as
// an empty (or small) core with retained_fraction reflecting it.
inline CoreResult extract_high_girth_core(const Graph& g, const PruneConfig& cfg) {
    cfg.validate();
    const std::uint32_t n = g.vertex_count();
    const double avg = average_degree(g);
    const double floor_deg = cfg.resolved_floor(avg);
    const double absorb_threshold = cfg.eps * avg;

    CoreResult res;
    res.in_core.assign(n, 1);
    PruneReport& rep = res.report;
    rep.degree_floor_used = floor_deg;
    rep.absorb_threshold = absorb_threshold;

    std::vector<std::uint32_t> degree(n);
    for (std::uint32_t v = 0; v < n; ++v) degree[v] = g.degree(v);

    std::vector<char>& alive = res.in_core;
    auto delete_vertex = [&](std::uint32_t v) {
        alive[v] = 0;
        for (const AdjEntry& a : g.neighbors(v))
            if (alive[a.to]) --degree[a.to];
    };

    // Phase 1: short-cycle removal.
    detail::CycleScan scan(g);
    for (std::uint32_t v = 0; v < n; ++v) {
        while (alive[v]) {
            std::vector<std::uint32_t> cycle = scan.find_short_cycle(v, cfg.girth_target, &alive);
            if (cycle.empty()) break;
            std::uint32_t victim = cycle[0];
            for (std::uint32_t c : cycle)
                if (degree[c] > degree[victim] || (degree[c] == degree[victim] && c < victim)) victim = c;
            delete_vertex(victim);
            rep.deleted_cycle_vertices.push_back(victim);
        }
    }

    // Phase 2 seeds: vertices whose *original* degree sits at or below the
    // floor (phase-1 victims are already gone).
    for (std::uint32_t v = 0; v < n; ++v) {
        if (alive[v] && static_cast<double>(g.degree(v)) <= floor_deg) {
            delete_vertex(v);
            rep.deleted_low_degree.push_back(v);
        }
    }

    // Absorption. deleted_count[v] = edges from v into the deleted set.
    // Qualification is strict, so a vertex sitting exactly at the threshold
    // survives.
    std::vector<std::uint32_t> deleted_count(n, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        std::uint32_t c = 0;
        for (const AdjEntry& a : g.neighbors(v)) c += alive[a.to] ? 0 : 1;
        deleted_count[v] = c;
    }
    auto qualifies = [&](std::uint32_t v) {
        return static_cast<double>(deleted_count[v]) > absorb_threshold;
    };
    std::set<std::uint32_t> pending;
    for (std::uint32_t v = 0; v < n; ++v)
        if (alive[v] && qualifies(v)) pending.insert(v);
    while (!pending.empty()) {
        std::uint32_t v = *pending.begin();
        pending.erase(pending.begin());
        delete_vertex(v);
        rep.absorbed_sequence.push_back(v);
        for (const AdjEntry& a : g.neighbors(v)) {
            if (!alive[a.to]) continue;
            ++deleted_count[a.to];
            if (qualifies(a.to)) pending.insert(a.to);
        }
    }
    rep.rounds = static_cast<std::uint32_t>(rep.absorbed_sequence.size());
    rep.retained_fraction = 1.0 - static_cast<double>(rep.deleted_total()) / n;
    return res;
}

// Minimum degree of the induced subgraph on the mask; UINT32_MAX when the
// mask is empty.
inline std::uint32_t min_degree_within(const Graph& g, const std::vector<char>& mask) {
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        if (!mask[v]) continue;
        std::uint32_t d = 0;
        for (const AdjEntry& a : g.neighbors(v)) d += mask[a.to] ? 1 : 0;
        best = std::min(best, d);
    }
    return best;
}

}  // namespace itrail
