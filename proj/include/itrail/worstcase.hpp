#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "itrail/graph.hpp"
#include "itrail/ordering.hpp"
#include "itrail/solvers.hpp"

namespace itrail {

struct WorstCaseResult {
    std::uint32_t value = 0;
    EdgeOrdering witness;  // an ordering attaining the minimum
    std::uint64_t orderings_examined = 0;
    bool exhaustive = false;
    bool symmetry_reduced = false;
};

struct ExhaustiveOptions {
    unsigned threads = 1;
    // Fix label 1 on edge 0 and enumerate the rest. Correct only when all
    // edges lie in one automorphism orbit; accepted for complete graphs only.
    bool symmetry_reduce = false;
    std::uint64_t max_orderings = 0;  // 0 = unbounded; otherwise stop early
    std::string checkpoint_path;      // empty = no checkpointing
    std::uint64_t checkpoint_every = 100'000;
};

namespace detail {

// Exact maximum increasing-path scorer for one ordering, with early exit once
// `cap` is reached (orderings at or above the incumbent minimum cannot lower
// it). Buffers are reused across calls.
class PathScorer {
public:
    explicit PathScorer(const Graph& g) : g_(g), on_path_(g.vertex_count(), 0) {}

    std::uint32_t score(std::span<const std::uint32_t> order, std::uint32_t cap) {
        label_of_.assign(g_.edge_count(), 0);
        for (std::uint32_t i = 0; i < order.size(); ++i) label_of_[order[i]] = i + 1;
        best_ = 0;
        cap_ = cap;
        for (std::uint32_t v = 0; v < g_.vertex_count() && best_ < cap_; ++v) {
            on_path_[v] = 1;
            walk(v, 0, 0);
            on_path_[v] = 0;
        }
        return best_;
    }

private:
    void walk(std::uint32_t v, std::uint32_t last_label, std::uint32_t depth) {
        if (depth > best_) best_ = depth;
        if (best_ >= cap_) return;
        for (const AdjEntry& a : g_.neighbors(v)) {
            if (label_of_[a.edge] <= last_label || on_path_[a.to]) continue;
            on_path_[a.to] = 1;
            walk(a.to, label_of_[a.edge], depth + 1);
            on_path_[a.to] = 0;
            if (best_ >= cap_) return;
        }
    }

    const Graph& g_;
    std::vector<std::uint32_t> label_of_;
    std::vector<char> on_path_;
    std::uint32_t best_ = 0, cap_ = 0;
};

struct PartitionState {
    std::uint32_t partition = 0;
    std::vector<std::uint32_t> order;  // next ordering to score (label -> edge)
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> witness;
    std::uint64_t scored = 0;
    bool done = false;
};

inline std::uint64_t graph_fingerprint(const Graph& g) {
    std::uint64_t h = mix64(g.vertex_count() * 0x9e3779b97f4a7c15ull + g.edge_count());
    for (const Edge& e : g.edges()) h = mix64(h ^ (static_cast<std::uint64_t>(e.u) << 32 | e.v));
    return h;
}

// Shared enumeration driver. `score(order, cap)` must return the ordering's
// value, possibly early-exited at cap. Partitions fix which edge receives
// label 1; within a partition the remaining positions run in lexicographic
// order via std::next_permutation, so enumeration is deterministic and
// resumable from a stored state.
template <typename ScorerFactory>
inline WorstCaseResult enumerate_orderings(const Graph& g, const ExhaustiveOptions& opt,
                                           const char* mode_tag, ScorerFactory make_scorer) {
    const auto m = static_cast<std::uint32_t>(g.edge_count());
    WorstCaseResult result;
    if (m == 0) {
        result.value = 0;
        result.orderings_examined = 1;  // the unique empty ordering
        result.exhaustive = true;
        return result;
    }

    if (opt.symmetry_reduce) {
        if (g.edge_count() != pair_count(g.vertex_count()))
            throw std::invalid_argument("symmetry reduction is provided for complete graphs only");
    }

    const std::uint32_t partitions = opt.symmetry_reduce ? 1 : m;
    std::vector<PartitionState> states(partitions);
    for (std::uint32_t p = 0; p < partitions; ++p) {
        PartitionState& st = states[p];
        st.partition = p;
        st.order.reserve(m);
        st.order.push_back(p);
        for (std::uint32_t e = 0; e < m; ++e)
            if (e != p) st.order.push_back(e);
    }

    const std::uint64_t fingerprint = graph_fingerprint(g);

    // Optional resume.
    if (!opt.checkpoint_path.empty()) {
        std::ifstream in(opt.checkpoint_path);
        if (in) {
            nlohmann::json j;
            in >> j;
            if (j.at("fingerprint").get<std::uint64_t>() != fingerprint ||
                j.at("mode").get<std::string>() != mode_tag ||
                j.at("partitions").get<std::uint32_t>() != partitions)
                throw std::runtime_error("worst-case checkpoint does not match this graph/mode");
            for (const auto& js : j.at("states")) {
                PartitionState& st = states.at(js.at("partition").get<std::uint32_t>());
                st.best = js.at("best").get<std::uint32_t>();
                st.witness = js.at("witness").get<std::vector<std::uint32_t>>();
                st.scored = js.at("scored").get<std::uint64_t>();
                st.done = js.at("done").get<bool>();
                if (js.contains("order")) {
                    st.order = js.at("order").get<std::vector<std::uint32_t>>();
                    if (st.order.size() != m) throw std::runtime_error("worst-case checkpoint is corrupt");
                }
            }
        }
    }
    auto save_checkpoint = [&]() {
        if (opt.checkpoint_path.empty()) return;
        nlohmann::json j;
        j["fingerprint"] = fingerprint;
        j["mode"] = mode_tag;
        j["partitions"] = partitions;
        nlohmann::json arr = nlohmann::json::array();
        for (const PartitionState& st : states) {
            nlohmann::json js;
            js["partition"] = st.partition;
            js["best"] = st.best;
            js["witness"] = st.witness;
            js["scored"] = st.scored;
            js["done"] = st.done;
            if (!st.done) js["order"] = st.order;
            arr.push_back(js);
        }
        j["states"] = std::move(arr);
        std::ofstream out(opt.checkpoint_path, std::ios::trunc);
        out << j.dump();
    };

    std::atomic<std::uint32_t> next_partition{0};
    std::atomic<std::uint64_t> scored_total{0};
    for (const PartitionState& st : states) scored_total += st.scored;
    std::atomic<bool> stop{false};

    const unsigned workers = std::max(1u, std::min<unsigned>(opt.threads, partitions));
    // Mid-run snapshots would race against other workers' partition states,
    // so they are taken only in single-threaded runs; parallel runs persist
    // once all workers have stopped.
    const bool periodic_checkpoints = workers == 1 && !opt.checkpoint_path.empty();

    auto run_partition = [&](PartitionState& st) {
        auto scorer = make_scorer();
        std::uint64_t since_checkpoint = 0;
        while (!st.done) {
            if (stop.load(std::memory_order_relaxed)) return;
            std::uint32_t value = scorer.score(st.order, st.best);
            ++st.scored;
            ++scored_total;
            if (value < st.best) {
                st.best = value;
                st.witness = st.order;
            }
            if (!std::next_permutation(st.order.begin() + 1, st.order.end())) st.done = true;
            if (opt.max_orderings != 0 && scored_total.load(std::memory_order_relaxed) >= opt.max_orderings)
                stop.store(true, std::memory_order_relaxed);
            if (periodic_checkpoints && ++since_checkpoint >= opt.checkpoint_every) {
                since_checkpoint = 0;
                save_checkpoint();
            }
        }
    };

    auto worker = [&]() {
        while (!stop.load(std::memory_order_relaxed)) {
            std::uint32_t p = next_partition.fetch_add(1);
            if (p >= partitions) return;
            if (!states[p].done) run_partition(states[p]);
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (!opt.checkpoint_path.empty()) save_checkpoint();

    // Deterministic min-reduce: value first, then partition index.
    const PartitionState* best_state = nullptr;
    bool all_done = true;
    std::uint64_t examined = 0;
    for (const PartitionState& st : states) {
        examined += st.scored;
        all_done = all_done && st.done;
        if (st.witness.empty()) continue;
        if (!best_state || st.best < best_state->best) best_state = &st;
    }
    if (!best_state) throw std::runtime_error("worst-case enumeration scored no orderings");
    result.value = best_state->best;
    result.witness.label.assign(m, 0);
    for (std::uint32_t i = 0; i < m; ++i) result.witness.label[best_state->witness[i]] = i + 1;
    result.orderings_examined = examined;
    result.exhaustive = all_done;
    result.symmetry_reduced = opt.symmetry_reduce;
    return result;
}

}  // namespace detail

// Minimum over all m! orderings of the longest increasing trail. The guard
// keeps full enumeration below ~3.6M orderings.
inline WorstCaseResult worst_case_trail_exhaustive(const Graph& g, const ExhaustiveOptions& opt = {}) {
    if (g.edge_count() > 10)
        throw std::invalid_argument(
            "worst_case_trail_exhaustive: more than 10 edges; use sampled_trail_upper_bound");
    struct TrailScorer {
        const Graph* g;
        TrailSweep sweep;
        std::uint32_t score(std::span<const std::uint32_t> order, std::uint32_t cap) {
            return sweep.run_capped(*g, order, cap);
        }
    };
    return detail::enumerate_orderings(g, opt, "trail", [&]() { return TrailScorer{&g, {}}; });
}

// Minimum over all m! orderings of the longest increasing path.
inline WorstCaseResult worst_case_path_exhaustive(const Graph& g, const ExhaustiveOptions& opt = {}) {
    if (g.edge_count() > 9)
        throw std::invalid_argument("worst_case_path_exhaustive: more than 9 edges");
    return detail::enumerate_orderings(g, opt, "path", [&]() { return detail::PathScorer(g); });
}

// Minimum of the trail sweep over sampled random orderings: an upper bound on
// the worst case, never exact on its own.
inline std::uint32_t sampled_trail_upper_bound(const Graph& g, std::uint64_t trials, const Seed& seed) {
    TrailSweep sweep;
    std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
    for (std::uint64_t t = 0; t < trials; ++t) {
        EdgeOrdering ord = random_ordering(g, seed.child(stream::worst_case, t));
        auto order = ord.label_to_edge();
        best = std::min(best, sweep.run_capped(g, order, best));
    }
    return best;
}

}  // namespace itrail
