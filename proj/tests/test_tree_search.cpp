#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "itrail/rng.hpp"
#include "itrail/tree_search.hpp"

using namespace itrail;

namespace {

// Exhaustive success probability for the explicit depth-2 binary tree: all
// 6! label orders, counted directly from the tree shape. Vertex v > 0 hangs
// on edge v-1, so the root edges are 0 and 1, and leaf edges are 2..5 with
// edges 2,3 under edge 0 and edges 4,5 under edge 1.
double exact_d2_k2_probability() {
    std::array<std::uint32_t, 6> perm{};
    std::iota(perm.begin(), perm.end(), 0u);
    int total = 0, hits = 0;
    do {
        ++total;
        std::array<std::uint32_t, 6> label{};
        for (std::uint32_t pos = 0; pos < 6; ++pos) label[perm[pos]] = pos;
        bool ok = label[0] < label[2] || label[0] < label[3] || label[1] < label[4] ||
                  label[1] < label[5];
        hits += ok ? 1 : 0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(total == 720);
    return static_cast<double>(hits) / 720.0;
}

}  // namespace

TEST_CASE("single-branch trees succeed with probability 1/k!") {
    TreeSearchConfig cfg;
    cfg.branching = 1;
    cfg.depth = 4;
    cfg.trials = 100'000;
    cfg.seed = Seed(2024);
    TreeTrialStats stats = run_tree_trials(cfg);
    CHECK(stats.capped == 0);
    const double p = 1.0 / 24.0;
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(stats.valid()));
    CHECK(std::abs(stats.estimate() - p) <= 4 * sigma);
}

TEST_CASE("depth-2 binary tree matches the exhaustive rank-order average") {
    const double exact = exact_d2_k2_probability();
    TreeSearchConfig cfg;
    cfg.branching = 2;
    cfg.depth = 2;
    cfg.trials = 60'000;
    cfg.seed = Seed(77);
    TreeTrialStats stats = run_tree_trials(cfg);
    const double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(stats.valid()));
    CHECK(std::abs(stats.estimate() - exact) <= 4 * sigma);
}

TEST_CASE("tree trials are deterministic and thread-count independent") {
    TreeSearchConfig cfg;
    cfg.branching = 3;
    cfg.depth = 5;
    cfg.trials = 4000;
    cfg.seed = Seed(5);
    TreeTrialStats once = run_tree_trials(cfg);
    TreeTrialStats again = run_tree_trials(cfg);
    cfg.threads = 4;
    TreeTrialStats parallel = run_tree_trials(cfg);
    CHECK(once.successes == again.successes);
    CHECK(once.successes == parallel.successes);
    CHECK(once.total_expansions == parallel.total_expansions);
}

TEST_CASE("expansion cap is an explicit outcome, not a failure") {
    TrialResult r = increasing_root_leaf_trial(8, 40, Seed(9).child(stream::tree_trial, 0).key(), 5);
    CHECK(r.outcome == TrialOutcome::capped);
    CHECK(r.expansions == 6);  // cap + 1, where the walk stopped

    TreeSearchConfig cfg;
    cfg.branching = 8;
    cfg.depth = 40;
    cfg.trials = 50;
    cfg.seed = Seed(9);
    cfg.expansion_cap = 5;
    TreeTrialStats stats = run_tree_trials(cfg);
    CHECK(stats.capped > 0);
    CHECK(stats.trials == stats.successes + stats.failures + stats.capped);
}

TEST_CASE("tree search config validation") {
    TreeSearchConfig cfg;
    cfg.branching = 0;
    CHECK_THROWS_AS(run_tree_trials(cfg), std::invalid_argument);
    cfg.branching = kMaxTreeBranching + 1;
    CHECK_THROWS_AS(run_tree_trials(cfg), std::invalid_argument);
}

TEST_CASE("good path probability closed form") {
    SECTION("k=2, delta=0 is exactly 3/16") {
        CHECK(good_path_probability({2, 0.0}) == Catch::Approx(3.0 / 16.0).epsilon(1e-12));
    }
    SECTION("k=1 accepts every label in the window") {
        CHECK(good_path_probability({1, 0.0}) == Catch::Approx(1.0));
    }
    SECTION("domain violations throw") {
        CHECK_THROWS_AS(good_path_probability({2, 0.6}), std::domain_error);  // 1-delta-1/2 < 0
        CHECK_THROWS_AS(good_path_probability({3, -0.1}), std::invalid_argument);
    }
    SECTION("always inside the sandwich bounds") {
        for (std::uint32_t k = 2; k <= 12; ++k)
            for (double delta : {0.05, 0.1, 0.2}) {
                if (1.0 - delta - 1.0 / k < 0.0) continue;
                GoodPathParams params{k, delta};
                double p = good_path_probability(params);
                GoodPathBounds b = good_path_bounds(params);
                CHECK(p >= b.lower);
                CHECK(p <= b.upper);
            }
    }
    SECTION("Monte Carlo frequency of the three conditions") {
        GoodPathParams params{5, 0.1};
        const double p = good_path_probability(params);
        SplitMix64 rng(Seed(31).key());
        const int draws = 1'000'000;
        int hits = 0;
        std::array<double, 5> labels{};
        for (int t = 0; t < draws; ++t) {
            for (double& x : labels) x = rng.u01();
            hits += is_good_path(labels, params.delta) ? 1 : 0;
        }
        double freq = static_cast<double>(hits) / draws;
        double sigma = std::sqrt(p * (1 - p) / draws);
        CHECK(std::abs(freq - p) <= 3 * sigma);
    }
}

TEST_CASE("good path conditions on hand-checked sequences") {
    CHECK(is_good_path(std::array{0.4, 0.7}, 0.25));
    CHECK_FALSE(is_good_path(std::array{0.3, 0.7}, 0.25));  // prefix below the ramp
    CHECK_FALSE(is_good_path(std::array{0.7, 0.4}, 0.25));  // not monotone
    CHECK_FALSE(is_good_path(std::array{0.4, 0.9}, 0.25));  // last label above the window
    CHECK_THROWS_AS(is_good_path(std::array{0.4, 1.7}, 0.25), std::invalid_argument);
}

TEST_CASE("exactly one rotation dominates the ramp") {
    SECTION("hand-checked pair") {
        RotationResult r = unique_good_rotation(std::array{0.7, 0.1});
        CHECK(r.rotation == 0);
        CHECK_FALSE(r.tie);
        CHECK(r.qualifying == 1);
    }
    SECTION("equal increments qualify everywhere and flag a tie") {
        RotationResult r = unique_good_rotation(std::array{0.2, 0.2, 0.2});
        CHECK(r.rotation == 0);
        CHECK(r.tie);
        CHECK(r.qualifying == 3);
    }
    SECTION("uniqueness over random increments") {
        SplitMix64 rng(Seed(41).key());
        std::array<double, 8> inc{};
        for (int t = 0; t < 10'000; ++t) {
            for (double& x : inc) x = rng.u01_open();
            RotationResult r = unique_good_rotation(inc);
            CHECK(r.qualifying == 1);
        }
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(unique_good_rotation(std::span<const double>{}), std::invalid_argument);
        CHECK_THROWS_AS(unique_good_rotation(std::array{0.0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(unique_good_rotation(std::array{0.5, -0.1}), std::invalid_argument);
    }
}

TEST_CASE("second moment diagnostics") {
    SECTION("single-branch trees have Z in {0,1} with mean equal to the formula") {
        const std::uint32_t k = 4;
        const double delta = 0.1;
        SecondMomentDiagnostics diag = second_moment_diagnostics(1, k, delta, 20'000, Seed(51));
        double p = good_path_probability({k, delta});
        CHECK(diag.mean_z2 == Catch::Approx(diag.mean_z));  // indicator variable
        double sigma = std::sqrt(p * (1 - p) / static_cast<double>(diag.trials));
        CHECK(std::abs(diag.mean_z - p) <= 4 * sigma);
        CHECK(diag.p_positive == Catch::Approx(diag.mean_z));
    }
    SECTION("mean count scales with the number of root-leaf paths") {
        const std::uint32_t d = 3, k = 3;
        const double delta = 0.2;
        SecondMomentDiagnostics diag = second_moment_diagnostics(d, k, delta, 100'000, Seed(52));
        double per_path = good_path_probability({k, delta});
        double expect = 27.0 * per_path;
        double var = diag.mean_z2 - diag.mean_z * diag.mean_z;
        double sigma = std::sqrt(var / static_cast<double>(diag.trials));
        CHECK(std::abs(diag.mean_z - expect) <= 4 * sigma);
        CHECK(diag.q == Catch::Approx(good_path_growth_ratio(d, k, delta)));
        CHECK(diag.c_fit_k32 == Catch::Approx(diag.p_positive * std::pow(3.0, 1.5)));
    }
    SECTION("growth ratio arithmetic") {
        CHECK(good_path_growth_ratio(10, 20, 0.1) ==
              Catch::Approx(10.0 * std::exp(1.0) * 0.9 / 20.0).epsilon(1e-12));
        CHECK(good_path_growth_ratio(10, 20, 0.1) == Catch::Approx(1.223227).margin(5e-7));
    }
    SECTION("oversized trees hit the memory budget") {
        CHECK_THROWS_AS(second_moment_diagnostics(10, 20, 0.1, 10, Seed(1)), std::length_error);
    }
}
