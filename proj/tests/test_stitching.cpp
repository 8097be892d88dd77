#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "itrail/generators.hpp"
#include "itrail/graph.hpp"
#include "itrail/ordering.hpp"
#include "itrail/stitching.hpp"
#include "itrail/trail.hpp"

using namespace itrail;

namespace {

ScheduleConfig explicit_schedule(std::uint32_t t, std::uint64_t a, std::uint64_t b) {
    ScheduleConfig cfg;
    cfg.rounds = t;
    cfg.connector_size = a;
    cfg.growth_size = b;
    return cfg;
}

void check_accounting(const StitchResult& res) {
    std::uint64_t total = 0, cumulative = 0;
    for (const RoundOutcome& r : res.rounds) {
        CHECK((r.gain > 0) == r.success);
        CHECK((r.failure_stage == FailureStage::none) == r.success);
        total += r.gain;
        CHECK(r.cumulative_length >= cumulative);  // the walk only grows
        CHECK(r.cumulative_length == total);
        cumulative = r.cumulative_length;
    }
    CHECK(res.trail.length() == total);
}

}  // namespace

TEST_CASE("label partition") {
    SECTION("worked example") {
        auto pairs = partition_labels(10, explicit_schedule(2, 2, 3));
        REQUIRE(pairs.size() == 2);
        CHECK(pairs[0].connector.lo == 1);
        CHECK(pairs[0].connector.hi == 2);
        CHECK(pairs[0].growth.lo == 3);
        CHECK(pairs[0].growth.hi == 5);
        CHECK(pairs[1].connector.lo == 6);
        CHECK(pairs[1].connector.hi == 7);
        CHECK(pairs[1].growth.lo == 8);
        CHECK(pairs[1].growth.hi == 10);
    }
    SECTION("leftover labels stay unused") {
        auto pairs = partition_labels(11, explicit_schedule(2, 2, 3));
        REQUIRE(pairs.size() == 2);
        CHECK(pairs[1].growth.hi == 10);  // label 11 belongs to no interval
    }
    SECTION("overfull schedules are rejected") {
        CHECK_THROWS_AS(partition_labels(9, explicit_schedule(2, 2, 3)), std::invalid_argument);
    }
    SECTION("intervals are disjoint, ordered, and correctly sized") {
        auto pairs = partition_labels(1000, explicit_schedule(7, 40, 90));
        std::uint64_t prev_hi = 0;
        for (const IntervalPair& p : pairs) {
            CHECK(p.connector.lo == prev_hi + 1);
            CHECK(p.connector.size() == 40);
            CHECK(p.growth.lo == p.connector.hi + 1);
            CHECK(p.growth.size() == 90);
            prev_hi = p.growth.hi;
        }
        CHECK(prev_hi == 7 * 130);
    }
    SECTION("swapped roles exchange the sizes") {
        ScheduleConfig cfg = explicit_schedule(2, 2, 3);
        cfg.swap_interval_roles = true;
        auto pairs = partition_labels(10, cfg);
        CHECK(pairs[0].connector.size() == 3);
        CHECK(pairs[0].growth.size() == 2);
    }
}

TEST_CASE("derived schedule sizes use natural logs") {
    ScheduleConfig cfg = resolve_schedule(2000, pair_count(2000));
    CHECK(cfg.connector_size == 4057);  // ceil(2000 * ln ln 2000)
    CHECK(cfg.growth_size == 2757);     // ceil(1000 * sqrt(ln 2000))
    CHECK(cfg.rounds == 293);
    CHECK_THROWS_AS(resolve_schedule(2, 1), std::invalid_argument);
}

TEST_CASE("connector selection") {
    // Vertex 0 with two connector edges: label 5 to a vertex outside the
    // target set, label 7 into it.
    Graph g(4, {{0, 1}, {0, 2}, {1, 3}});
    EdgeOrdering ord{{7, 5, 2}};
    std::vector<char> in_u = {0, 1, 0, 0};
    std::vector<std::uint32_t> h_edges = {0, 1};

    SECTION("smallest admissible label into the target set") {
        auto c = find_connector(g, ord, 0, in_u, h_edges, 3);
        REQUIRE(c.has_value());
        CHECK(c->edge == 0);
        CHECK(c->to == 1);
        CHECK(c->label == 7);
    }
    SECTION("no incident connector edges") {
        auto c = find_connector(g, ord, 3, {0, 0, 0, 0}, {h_edges.data(), 2}, 0);
        CHECK_FALSE(c.has_value());
    }
    SECTION("labels at or below the floor never qualify") {
        std::vector<char> all = {1, 1, 1, 1};
        CHECK_FALSE(find_connector(g, ord, 0, all, h_edges, 7).has_value());
        CHECK(find_connector(g, ord, 0, all, h_edges, 6).has_value());
    }
}

TEST_CASE("single-round construction on a complete graph") {
    Graph g = complete_graph(40);
    EdgeOrdering ord = random_ordering(g, Seed(60));
    ScheduleConfig cfg = explicit_schedule(1, 100, 500);
    StitchResult res = run_stitching(g, ord, cfg);
    REQUIRE(res.rounds.size() == 1);
    CHECK(validate_trail(g, ord, res.trail));
    check_accounting(res);
    // The one round needs no connector, so the walk is exactly its best
    // growth path and all labels come from the growth interval.
    if (res.rounds[0].success) {
        auto pairs = partition_labels(g.edge_count(), cfg);
        for (std::uint32_t l : res.trail.labels) CHECK(pairs[0].growth.contains(l));
    }
}

TEST_CASE("trail construction is certified and accounted") {
    const std::uint32_t n = 300;
    Graph g = complete_graph(n);
    for (std::uint64_t s = 0; s < 5; ++s) {
        EdgeOrdering ord = random_ordering(g, Seed(61).child(s));
        ScheduleConfig cfg;
        cfg.mode = StitchMode::trail;
        StitchResult res = run_stitching(g, ord, cfg);
        CHECK(validate_trail(g, ord, res.trail));
        check_accounting(res);
        CHECK(res.trail.length() > 0);
    }
}

TEST_CASE("path construction never repeats a vertex") {
    const std::uint32_t n = 2000;
    const double p = 4.0 * std::log(static_cast<double>(n)) / n;
    for (std::uint64_t s = 0; s < 3; ++s) {
        Graph g = gen_gnp(n, p, Seed(62).child(s));
        EdgeOrdering ord = random_ordering(g, Seed(63).child(s));
        ScheduleConfig cfg;
        cfg.mode = StitchMode::path;
        StitchResult res = run_stitching(g, ord, cfg);
        CHECK(validate_path(g, ord, res.trail));
        check_accounting(res);
        CHECK(res.trail.length() > 0);
    }
}

TEST_CASE("rounds fail cleanly when the core floors are unreachable") {
    Graph g = complete_graph(60);
    EdgeOrdering ord = random_ordering(g, Seed(64));
    ScheduleConfig cfg = explicit_schedule(3, 100, 400);
    cfg.core_min_degree = 100;  // no round core can reach this
    StitchResult res = run_stitching(g, ord, cfg);
    CHECK(res.trail.length() == 0);
    CHECK(validate_trail(g, ord, res.trail));
    REQUIRE(res.rounds.size() == 3);
    for (const RoundOutcome& r : res.rounds) {
        CHECK_FALSE(r.success);
        CHECK(r.failure_stage == FailureStage::core);
        CHECK(r.gain == 0);
    }
}

TEST_CASE("stitching is deterministic") {
    Graph g = complete_graph(120);
    EdgeOrdering ord = random_ordering(g, Seed(65));
    ScheduleConfig cfg;
    StitchResult a = run_stitching(g, ord, cfg);
    StitchResult b = run_stitching(g, ord, cfg);
    CHECK(a.trail.edge_indices == b.trail.edge_indices);
    REQUIRE(a.rounds.size() == b.rounds.size());
    for (std::size_t i = 0; i < a.rounds.size(); ++i) {
        CHECK(a.rounds[i].success == b.rounds[i].success);
        CHECK(a.rounds[i].gain == b.rounds[i].gain);
    }
}

TEST_CASE("label layering holds across rounds") {
    Graph g = complete_graph(150);
    EdgeOrdering ord = random_ordering(g, Seed(66));
    StitchResult res = run_stitching(g, ord, {});
    auto pairs = partition_labels(g.edge_count(), res.resolved);
    // Map every used label to its round; rounds must appear in nondecreasing
    // order along the walk, with strictly increasing labels inside.
    std::uint32_t prev_round = 0;
    std::uint32_t prev_label = 0;
    for (std::uint32_t l : res.trail.labels) {
        CHECK(l > prev_label);
        std::uint32_t round = 0;
        bool found = false;
        for (std::uint32_t i = 0; i < pairs.size(); ++i) {
            if (pairs[i].connector.contains(l) || pairs[i].growth.contains(l)) {
                round = i;
                found = true;
                break;
            }
        }
        CHECK(found);  // leftover labels never appear
        CHECK(round >= prev_round);
        prev_round = round;
        prev_label = l;
    }
}
