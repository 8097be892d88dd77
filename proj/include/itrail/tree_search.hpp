#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "itrail/graph.hpp"
#include "itrail/rng.hpp"

namespace itrail {

// ---------------------------------------------------------------------------
// Implicit-tree search: does a uniform [0,1] edge labeling of the rooted
// D-ary tree of depth k admit a label-increasing path from root to leaf?
//
// The tree is never materialized. Every node owns a deterministic stream
// keyed by its address (trial key hashed down the child-index path), so its
// child edge labels are identical no matter when the search visits it.
// Children whose label does not exceed the incoming threshold can never be
// traversed and are dropped on the spot; the rest are visited in ascending
// label order, which reaches a leaf quickly when one is reachable.
// ---------------------------------------------------------------------------

enum class TrialOutcome { success, failure, capped };

struct TrialResult {
    TrialOutcome outcome = TrialOutcome::failure;
    std::uint64_t expansions = 0;
};

inline constexpr std::uint32_t kMaxTreeBranching = 64;

namespace detail {

inline std::uint64_t tree_child_key(std::uint64_t parent_key, std::uint32_t rank) {
    return mix64(parent_key ^ (0x9e3779b97f4a7c15ull * (rank + 1)));
}

class ImplicitTreeDfs {
public:
    ImplicitTreeDfs(std::uint32_t branching, std::uint32_t depth, std::uint64_t cap)
        : branching_(branching), depth_(depth), cap_(cap) {}

    TrialResult run(std::uint64_t root_key) {
        expansions_ = 0;
        int r = explore(root_key, 0, 0.0);
        TrialResult res;
        res.expansions = expansions_;
        res.outcome = r > 0 ? TrialOutcome::success : (r < 0 ? TrialOutcome::capped : TrialOutcome::failure);
        return res;
    }

private:
    // 1 = increasing path to a leaf found, 0 = subtree exhausted, -1 = capped.
    int explore(std::uint64_t key, std::uint32_t level, double threshold) {
        if (level == depth_) return 1;
        if (++expansions_ > cap_) return -1;
        SplitMix64 rng(key);
        std::array<double, kMaxTreeBranching> labels;
        std::array<std::uint32_t, kMaxTreeBranching> index;
        std::uint32_t count = 0;
        for (std::uint32_t j = 0; j < branching_; ++j) {
            double v = rng.u01();
            if (v > threshold) {
                labels[count] = v;
                index[count] = j;
                ++count;
            }
        }
        // Visit ascending: the smallest admissible label leaves most
        // headroom. Insertion sort; the admissible set is tiny.
        for (std::uint32_t i = 1; i < count; ++i) {
            double lv = labels[i];
            std::uint32_t ix = index[i];
            std::uint32_t j = i;
            for (; j > 0 && labels[j - 1] > lv; --j) {
                labels[j] = labels[j - 1];
                index[j] = index[j - 1];
            }
            labels[j] = lv;
            index[j] = ix;
        }
        for (std::uint32_t i = 0; i < count; ++i) {
            int r = explore(tree_child_key(key, index[i]), level + 1, labels[i]);
            if (r != 0) return r;
        }
        return 0;
    }

    std::uint32_t branching_, depth_;
    std::uint64_t cap_, expansions_ = 0;
};

}  // namespace detail

struct TreeSearchConfig {
    std::uint32_t branching = 2;  // D
    std::uint32_t depth = 2;      // k
    std::uint64_t trials = 1000;
    Seed seed;
    std::uint64_t expansion_cap = 100'000'000;
    unsigned threads = 1;

    void validate() const {
        if (branching < 1 || depth < 1)
            throw std::invalid_argument("TreeSearchConfig: branching and depth must be >= 1");
        if (branching > kMaxTreeBranching)
            throw std::invalid_argument("TreeSearchConfig: branching above supported maximum");
        if (expansion_cap == 0) throw std::invalid_argument("TreeSearchConfig: expansion_cap must be positive");
    }
};

// One exact sample of the root-to-leaf event.
inline TrialResult increasing_root_leaf_trial(std::uint32_t branching, std::uint32_t depth,
                                              std::uint64_t trial_key, std::uint64_t expansion_cap) {
    detail::ImplicitTreeDfs dfs(branching, depth, expansion_cap);
    return dfs.run(trial_key);
}

struct TreeTrialStats {
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t failures = 0;
    std::uint64_t capped = 0;  // invalid trials, excluded from the estimate
    std::uint64_t total_expansions = 0;

    std::uint64_t valid() const { return successes + failures; }
    double estimate() const {
        return valid() == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(valid());
    }
    double standard_error() const {
        if (valid() == 0) return 0.0;
        double p = estimate();
        return std::sqrt(p * (1.0 - p) / static_cast<double>(valid()));
    }
};

inline TreeTrialStats run_tree_trials(const TreeSearchConfig& cfg) {
    cfg.validate();
    const unsigned workers = std::max(1u, cfg.threads);
    std::vector<TrialResult> results(cfg.trials);
    std::atomic<std::uint64_t> next{0};
    auto work = [&]() {
        detail::ImplicitTreeDfs dfs(cfg.branching, cfg.depth, cfg.expansion_cap);
        while (true) {
            std::uint64_t t = next.fetch_add(1);
            if (t >= cfg.trials) break;
            results[t] = dfs.run(cfg.seed.child(stream::tree_trial, t).key());
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    TreeTrialStats stats;
    stats.trials = cfg.trials;
    for (const TrialResult& r : results) {
        stats.total_expansions += r.expansions;
        switch (r.outcome) {
            case TrialOutcome::success: ++stats.successes; break;
            case TrialOutcome::failure: ++stats.failures; break;
            case TrialOutcome::capped: ++stats.capped; break;
        }
    }
    return stats;
}

// ---------------------------------------------------------------------------
// Good paths. A label sequence X_1..X_k is *good* for a margin delta when
//   1. X_1 <= ... <= X_k,
//   2. 1 - delta - 1/k <= X_k <= 1 - delta,
//   3. X_i >= (i/k) * X_k for every i.
// Exactly one cyclic rotation of the increments of a monotone sequence
// satisfies condition 3, which pins the probability of a fixed path being
// good in closed form.
// ---------------------------------------------------------------------------

struct GoodPathParams {
    std::uint32_t k = 2;
    double delta = 0.0;

    void validate() const {
        if (k < 1) throw std::invalid_argument("GoodPathParams: k must be at least 1");
        if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("GoodPathParams: delta must lie in [0,1)");
        if (1.0 - delta - 1.0 / k < 0.0)
            throw std::domain_error("GoodPathParams: requires 1 - delta - 1/k >= 0");
    }
};

// log of (1/k) * (1/k!) * [(1-delta)^k - (1-delta-1/k)^k], evaluated without
// leaving log space until the final difference.
inline double good_path_log_probability(const GoodPathParams& p) {
    p.validate();
    const double k = p.k;
    const double r = (1.0 - p.delta - 1.0 / k) / (1.0 - p.delta);  // in [0,1)
    return -std::log(k) - std::lgamma(k + 1) + k * std::log(1.0 - p.delta) +
           std::log1p(-std::pow(r, k));
}

inline double good_path_probability(const GoodPathParams& p) {
    return std::exp(good_path_log_probability(p));
}

// Sandwich bounds: (1-delta)^k / (2k*k!) <= P <= (1-delta)^k / (k*k!).
struct GoodPathBounds {
    double lower;
    double upper;
};

inline GoodPathBounds good_path_bounds(const GoodPathParams& p) {
    p.validate();
    const double k = p.k;
    double log_upper = k * std::log(1.0 - p.delta) - std::log(k) - std::lgamma(k + 1);
    return {std::exp(log_upper - std::log(2.0)), std::exp(log_upper)};
}

inline bool is_good_path(std::span<const double> labels, double delta) {
    const std::size_t k = labels.size();
    if (k == 0) throw std::invalid_argument("is_good_path: empty label sequence");
    for (double x : labels)
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("is_good_path: labels must lie in [0,1]");
    const double xk = labels[k - 1];
    if (!(xk >= 1.0 - delta - 1.0 / static_cast<double>(k) && xk <= 1.0 - delta)) return false;
    for (std::size_t i = 1; i < k; ++i)
        if (labels[i] < labels[i - 1]) return false;
    for (std::size_t i = 1; i <= k; ++i)
        if (labels[i - 1] < (static_cast<double>(i) / static_cast<double>(k)) * xk) return false;
    return true;
}

// The unique cyclic rotation of nonnegative increments whose prefix sums
// dominate the linear ramp (j/k) * sum. Ties (degenerate inputs) resolve to
// the smallest rotation index and are flagged.
struct RotationResult {
    std::uint32_t rotation = 0;
    bool tie = false;
    std::uint32_t qualifying = 0;
};

inline RotationResult unique_good_rotation(std::span<const double> increments) {
    const std::size_t k = increments.size();
    if (k == 0) throw std::invalid_argument("unique_good_rotation: empty increment sequence");
    double total = 0.0;
    for (double x : increments) {
        if (!(x >= 0.0)) throw std::invalid_argument("unique_good_rotation: increments must be nonnegative");
        total += x;
    }
    if (!(total > 0.0)) throw std::invalid_argument("unique_good_rotation: increments must have positive sum");

    RotationResult res;
    std::uint32_t first = 0;
    double best_margin = -std::numeric_limits<double>::infinity();
    std::uint32_t best_rot = 0;
    for (std::uint32_t r = 0; r < k; ++r) {
        // The j = k prefix equals the full sum, so that condition holds by
        // construction and is excluded from the numeric check.
        double prefix = 0.0;
        double margin = std::numeric_limits<double>::infinity();
        for (std::size_t j = 1; j < k; ++j) {
            prefix += increments[(r + j - 1) % k];
            margin = std::min(margin, prefix - (static_cast<double>(j) / static_cast<double>(k)) * total);
        }
        if (margin >= 0.0 && res.qualifying++ == 0) first = r;
        if (margin > best_margin) {
            best_margin = margin;
            best_rot = r;
        }
    }
    res.tie = res.qualifying > 1;
    res.rotation = res.qualifying > 0 ? first : best_rot;  // unreachable for generic inputs
    return res;
}

// Growth ratio D*e*(1-delta)/k: the base of the geometric series formed by
// path pairs sharing edges. Above 1, the last term dominates.
inline double good_path_growth_ratio(std::uint32_t branching, std::uint32_t depth, double delta) {
    return static_cast<double>(branching) * std::exp(1.0) * (1.0 - delta) / static_cast<double>(depth);
}

// ---------------------------------------------------------------------------
// Second-moment diagnostics on a materialized tree: per-trial count Z of good
// root-to-leaf paths, its first two moments, and the growth ratio
// q = D*e*(1-delta)/k that governs the pair-correlation sum.
// ---------------------------------------------------------------------------

struct SecondMomentDiagnostics {
    std::uint32_t branching = 0;
    std::uint32_t depth = 0;
    double delta = 0.0;
    std::uint64_t trials = 0;
    double mean_z = 0.0;
    double mean_z2 = 0.0;
    double second_moment_ratio = 0.0;  // mean(Z^2) / mean(Z)^2
    double q = 0.0;
    double p_positive = 0.0;  // empirical P[Z >= 1]
    double c_fit_k32 = 0.0;   // p_positive * k^(3/2)
    double c_fit_k = 0.0;     // p_positive * k
};

inline SecondMomentDiagnostics second_moment_diagnostics(std::uint32_t branching, std::uint32_t depth,
                                                         double delta, std::uint64_t trials,
                                                         const Seed& seed,
                                                         std::uint64_t max_vertices = 2'000'000) {
    GoodPathParams params{depth, delta};
    params.validate();
    DaryTree tree = dary_tree(branching, depth, max_vertices);
    const Graph& g = tree.graph;

    // Vertices are numbered level by level, so vertex v > 0 hangs on edge
    // v - 1, whose stored endpoints are (parent, v).
    std::vector<std::uint32_t> leaves;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
        if (tree.level[v] == depth) leaves.push_back(v);

    std::vector<double> labels(g.edge_count());
    std::vector<double> path_labels(depth);
    double sum_z = 0.0, sum_z2 = 0.0;
    std::uint64_t positive = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SplitMix64 rng = seed.child(stream::diagnostics, t).stream();
        for (double& x : labels) x = rng.u01();
        std::uint64_t z = 0;
        for (std::uint32_t leaf : leaves) {
            std::uint32_t v = leaf;
            for (std::uint32_t d = depth; d-- > 0;) {
                path_labels[d] = labels[v - 1];
                v = g.edge(v - 1).u;
            }
            if (is_good_path(path_labels, delta)) ++z;
        }
        sum_z += static_cast<double>(z);
        sum_z2 += static_cast<double>(z) * static_cast<double>(z);
        positive += z > 0 ? 1 : 0;
    }

    SecondMomentDiagnostics diag;
    diag.branching = branching;
    diag.depth = depth;
    diag.delta = delta;
    diag.trials = trials;
    diag.mean_z = sum_z / static_cast<double>(trials);
    diag.mean_z2 = sum_z2 / static_cast<double>(trials);
    diag.second_moment_ratio = diag.mean_z > 0 ? diag.mean_z2 / (diag.mean_z * diag.mean_z) : 0.0;
    diag.q = good_path_growth_ratio(branching, depth, delta);
    diag.p_positive = static_cast<double>(positive) / static_cast<double>(trials);
    diag.c_fit_k32 = diag.p_positive * std::pow(static_cast<double>(depth), 1.5);
    diag.c_fit_k = diag.p_positive * static_cast<double>(depth);
    return diag;
}

}  // namespace itrail
