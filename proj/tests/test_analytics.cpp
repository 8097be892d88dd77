#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "itrail/analytics.hpp"
#include "itrail/generators.hpp"
#include "itrail/graph.hpp"
#include "itrail/ordering.hpp"
#include "itrail/solvers.hpp"

using namespace itrail;

namespace {

// Exact count of increasing paths with exactly k edges (counted once per
// undirected path; each is increasing in precisely one direction).
std::uint64_t count_increasing_k_paths(const Graph& g, const EdgeOrdering& ord, std::uint32_t k,
                                       std::uint32_t v, std::uint32_t last_label, std::uint32_t depth,
                                       std::vector<char>& on_path) {
    if (depth == k) return 1;
    std::uint64_t total = 0;
    for (const AdjEntry& a : g.neighbors(v)) {
        if (ord.label[a.edge] <= last_label || on_path[a.to]) continue;
        on_path[a.to] = 1;
        total += count_increasing_k_paths(g, ord, k, a.to, ord.label[a.edge], depth + 1, on_path);
        on_path[a.to] = 0;
    }
    return total;
}

std::uint64_t count_increasing_k_paths(const Graph& g, const EdgeOrdering& ord, std::uint32_t k) {
    std::uint64_t total = 0;
    std::vector<char> on_path(g.vertex_count(), 0);
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
        on_path[v] = 1;
        total += count_increasing_k_paths(g, ord, k, v, 0, 0, on_path);
        on_path[v] = 0;
    }
    return total;
}

}  // namespace

TEST_CASE("expected increasing paths on K_4 equals the exhaustive average") {
    // Average the exact 2-edge count over all 720 orderings of K_4; the
    // formula C(4,3) * 3! * 1^2 / 2! = 12 must match. (The count is in fact
    // deterministic: every 2-edge path is increasing in one direction.)
    Graph g = complete_graph(4);
    std::vector<std::uint32_t> order(6);
    std::iota(order.begin(), order.end(), 0u);
    std::uint64_t total = 0, orderings = 0;
    do {
        EdgeOrdering ord;
        ord.label.resize(6);
        for (std::uint32_t pos = 0; pos < 6; ++pos) ord.label[order[pos]] = pos + 1;
        total += count_increasing_k_paths(g, ord, 2);
        ++orderings;
    } while (std::next_permutation(order.begin(), order.end()));
    REQUIRE(orderings == 720);
    double average = static_cast<double>(total) / static_cast<double>(orderings);
    CHECK(average == Catch::Approx(12.0));
    CHECK(expected_increasing_paths({4, 1.0, 2, 0.0}).value == Catch::Approx(12.0));
}

TEST_CASE("expected increasing paths, closed form") {
    CHECK(expected_increasing_paths({2, 1.0, 1, 0.0}).value == Catch::Approx(2.0));
    CHECK(expected_increasing_paths({10, 1.0, 12, 0.0}).value == 0.0);  // k > n-1
    CHECK(expected_increasing_paths({10, 0.0, 3, 0.0}).value == 0.0);
    CHECK_THROWS_AS(expected_increasing_paths({0, 0.5, 1, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(expected_increasing_paths({10, 1.5, 1, 0.0}), std::invalid_argument);

    SECTION("Monte Carlo check at n=100, k=5, p=0.1") {
        // Reduced sample count here; the acceptance suite runs the full-size
        // version of this comparison.
        const std::uint32_t n = 100, k = 5;
        const double p = 0.1;
        const int samples = 2'000;
        double sum = 0, sum_sq = 0;
        for (int t = 0; t < samples; ++t) {
            Graph g = gen_gnp(n, p, Seed(900).child(t));
            EdgeOrdering ord = random_ordering(g, Seed(901).child(t));
            auto c = static_cast<double>(count_increasing_k_paths(g, ord, k));
            sum += c;
            sum_sq += c * c;
        }
        double mean = sum / samples;
        double sd = std::sqrt((sum_sq / samples - mean * mean) / (samples - 1));
        CHECK(std::abs(mean - expected_increasing_paths({n, p, k, 0.0}).value) <= 4 * sd);
    }
}

TEST_CASE("expected increasing trail upper bound") {
    // n^(k+1) * p^k / k! at n=2, k=1, p=1 is 4; the true 1-edge trail count
    // is 2 (one edge, two directions), so this is a bound, not an equality.
    CHECK(expected_increasing_trails_upper({2, 1.0, 1, 0.0}).value == Catch::Approx(4.0));
    CHECK(static_cast<double>(2) <= expected_increasing_trails_upper({2, 1.0, 1, 0.0}).value);
    CHECK(expected_increasing_trails_upper({10, 1.0, 30, 0.0}).value < 1.0);  // 30 > e*10

    SECTION("dominates the path expectation") {
        for (std::uint64_t n : {5ull, 20ull, 100ull})
            for (double p : {0.05, 0.5, 1.0})
                for (std::uint32_t k : {1u, 2u, 5u, 10u}) {
                    RegimeQuery q{n, p, k, 0.0};
                    CHECK(expected_increasing_trails_upper(q).log_value >=
                          expected_increasing_paths(q).log_value);
                }
    }
}

TEST_CASE("thresholds") {
    CHECK(trail_threshold(1000, 0.01, 0.0) == Catch::Approx(std::exp(1.0) * 10.0));
    CHECK(trail_threshold(1000, 0.01, 0.1) / trail_threshold(1000, 0.01, 0.0) == Catch::Approx(1.1));
    // ln(10^6)/ln(ln(10^6)) = 13.8155/2.6258
    CHECK(sparse_threshold(1'000'000) == Catch::Approx(5.2615).margin(5e-4));
    CHECK_THROWS_AS(sparse_threshold(2), std::invalid_argument);
}

TEST_CASE("log-space evaluation agrees with direct arithmetic") {
    // Wherever the direct product does not overflow, the log-gamma route must
    // agree to 10 significant digits.
    auto direct_expected_paths = [](std::uint64_t n, double p, std::uint32_t k) {
        double v = static_cast<double>(k + 1);  // (k+1)!/k!
        for (std::uint32_t i = 0; i < k + 1; ++i) v *= static_cast<double>(n - i) / (i + 1);
        for (std::uint32_t i = 0; i < k; ++i) v *= p;
        return v;
    };
    for (std::uint64_t n : {10ull, 50ull, 400ull})
        for (double p : {0.02, 0.3, 1.0})
            for (std::uint32_t k : {1u, 3u, 7u}) {
                double direct = direct_expected_paths(n, p, k);
                REQUIRE(std::isfinite(direct));
                CHECK(expected_increasing_paths({n, p, k, 0.0}).value ==
                      Catch::Approx(direct).epsilon(1e-10));
            }
    // Far outside double range the log form stays finite.
    LogValue huge = expected_increasing_paths({2'000'000, 0.5, 500'000, 0.0});
    CHECK(std::isfinite(huge.log_value));
    CHECK_FALSE(huge.representable());
}

TEST_CASE("trail bound crosses below one by the first-moment threshold") {
    for (std::uint64_t n : {100ull, 1000ull, 10'000ull})
        for (double p : {0.05, 0.2, 1.0}) {
            if (static_cast<double>(n) * p < 10) continue;
            for (double eps : {0.1, 0.3}) {
                auto k_star = static_cast<std::uint32_t>(std::ceil(trail_threshold(n, p, eps)));
                bool crossed = false;
                for (std::uint32_t k = 1; k <= k_star; ++k)
                    if (expected_increasing_trails_upper({n, p, k, eps}).log_value < 0.0) {
                        crossed = true;
                        break;
                    }
                CHECK(crossed);
            }
        }
}
