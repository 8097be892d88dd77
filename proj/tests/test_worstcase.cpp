#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>

#include "itrail/generators.hpp"
#include "itrail/graph.hpp"
#include "itrail/solvers.hpp"
#include "itrail/worstcase.hpp"

using namespace itrail;

TEST_CASE("average degree bound values") {
    CHECK(average_degree(complete_graph(4)) == Catch::Approx(3.0));
    CHECK(average_degree(cycle_graph(5)) == Catch::Approx(2.0));
    Graph star(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
    CHECK(average_degree(star) == Catch::Approx(10.0 / 6.0));
}

TEST_CASE("exhaustive worst-case trail values") {
    WorstCaseResult k3 = worst_case_trail_exhaustive(complete_graph(3));
    CHECK(k3.value == 3);
    CHECK(k3.orderings_examined == 6);
    CHECK(k3.exhaustive);

    WorstCaseResult k4 = worst_case_trail_exhaustive(complete_graph(4));
    CHECK(k4.value == 3);
    CHECK(k4.orderings_examined == 720);
    CHECK(k4.exhaustive);

    SECTION("the witness ordering attains the minimum") {
        Graph g = complete_graph(4);
        REQUIRE(k4.witness.is_bijection());
        CHECK(longest_increasing_trail_length(g, k4.witness) == k4.value);
    }
    SECTION("size guard points to sampling") {
        CHECK_THROWS_AS(worst_case_trail_exhaustive(gen_gnm(7, 11, Seed(8))), std::invalid_argument);
    }
}

TEST_CASE("exhaustive worst-case path values") {
    CHECK(worst_case_path_exhaustive(Graph(2, {{0, 1}})).value == 1);
    CHECK(worst_case_path_exhaustive(complete_graph(3)).value == 2);
    // Golden value, frozen from the first verified exhaustive run.
    WorstCaseResult k4 = worst_case_path_exhaustive(complete_graph(4));
    CHECK(k4.value == 2);
    CHECK(k4.orderings_examined == 720);

    CHECK_THROWS_AS(worst_case_path_exhaustive(complete_graph(5)), std::invalid_argument);
}

TEST_CASE("worst-case path never exceeds worst-case trail") {
    for (const Graph& g : {complete_graph(4), cycle_graph(4), path_graph(5)}) {
        CHECK(worst_case_path_exhaustive(g).value <= worst_case_trail_exhaustive(g).value);
    }
}

TEST_CASE("sampled upper bound sandwiches exact values") {
    Graph k4 = complete_graph(4);
    std::uint32_t sampled = sampled_trail_upper_bound(k4, 10'000, Seed(1));
    // Sampling can only overshoot the true minimum; the average-degree bound
    // pins it from below, so equality identifies the exact value.
    CHECK(sampled == 3);
    CHECK(static_cast<double>(sampled) >= average_degree(k4));

    Graph k6 = complete_graph(6);
    std::uint32_t s6 = sampled_trail_upper_bound(k6, 20'000, Seed(2));
    CHECK(static_cast<double>(s6) >= average_degree(k6));
    CHECK(s6 == 5);
}

TEST_CASE("symmetry reduction on complete graphs") {
    WorstCaseResult full = worst_case_trail_exhaustive(complete_graph(4));
    ExhaustiveOptions opt;
    opt.symmetry_reduce = true;
    WorstCaseResult reduced = worst_case_trail_exhaustive(complete_graph(4), opt);
    CHECK(reduced.value == full.value);
    CHECK(reduced.orderings_examined == 120);
    CHECK(reduced.symmetry_reduced);
    CHECK(reduced.exhaustive);

    CHECK_THROWS_AS(worst_case_trail_exhaustive(path_graph(4), opt), std::invalid_argument);
}

TEST_CASE("parallel enumeration matches single-threaded") {
    Graph g = gen_gnm(6, 8, Seed(3));
    WorstCaseResult solo = worst_case_trail_exhaustive(g);
    ExhaustiveOptions opt;
    opt.threads = 4;
    WorstCaseResult multi = worst_case_trail_exhaustive(g, opt);
    CHECK(solo.value == multi.value);
    CHECK(solo.witness.label == multi.witness.label);
    CHECK(solo.orderings_examined == multi.orderings_examined);
}

TEST_CASE("partial runs and checkpoint resume") {
    namespace fs = std::filesystem;
    Graph g = complete_graph(4);
    const std::string ckpt = (fs::temp_directory_path() / "itrail_wc_ckpt.json").string();
    std::remove(ckpt.c_str());

    WorstCaseResult full = worst_case_trail_exhaustive(g);

    ExhaustiveOptions partial;
    partial.max_orderings = 150;
    partial.checkpoint_path = ckpt;
    partial.checkpoint_every = 40;
    WorstCaseResult head = worst_case_trail_exhaustive(g, partial);
    CHECK_FALSE(head.exhaustive);
    CHECK(head.orderings_examined < 720);

    ExhaustiveOptions resume;
    resume.checkpoint_path = ckpt;
    WorstCaseResult tail = worst_case_trail_exhaustive(g, resume);
    CHECK(tail.exhaustive);
    CHECK(tail.value == full.value);
    CHECK(tail.orderings_examined == 720);
    CHECK(tail.witness.label == full.witness.label);

    SECTION("checkpoints refuse a different graph") {
        CHECK_THROWS_AS(worst_case_trail_exhaustive(cycle_graph(4), resume), std::runtime_error);
    }
    std::remove(ckpt.c_str());
}

TEST_CASE("empty graph edge case") {
    WorstCaseResult r = worst_case_trail_exhaustive(Graph(3, {}));
    CHECK(r.value == 0);
    CHECK(r.exhaustive);
}
