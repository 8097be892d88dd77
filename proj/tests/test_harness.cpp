#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "itrail/harness.hpp"

using namespace itrail;

namespace {

ExperimentConfig base_config() {
    ExperimentConfig cfg;
    cfg.name = "t";
    cfg.algorithm = "dp-trail";
    cfg.n_values = {20, 30};
    cfg.p_values = {0.2, 0.8};
    cfg.trials = 3;
    cfg.root_seed = 99;
    cfg.timing = false;
    return cfg;
}

std::string csv_of(const ExperimentRun& run) {
    std::ostringstream os;
    emit_csv(run.records, os);
    return os.str();
}

}  // namespace

TEST_CASE("grid parsing") {
    CHECK(parse_grid_u32("250,500,1000") == std::vector<std::uint32_t>{250, 500, 1000});
    CHECK(parse_grid_u32("250:2000:x2") == std::vector<std::uint32_t>{250, 500, 1000, 2000});
    CHECK(parse_grid_u32("7") == std::vector<std::uint32_t>{7});
    CHECK(parse_grid_double("0.1,0.5") == std::vector<double>{0.1, 0.5});
    CHECK(parse_grid_double("1:8:x2") == std::vector<double>{1.0, 2.0, 4.0, 8.0});
    CHECK_THROWS_AS(parse_grid_u32(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_u32("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_u32("10:20:x1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_grid_u32("10:20"), std::invalid_argument);
}

TEST_CASE("experiment grid produces exactly cells x trials rows, sorted") {
    ExperimentRun run = run_experiment(base_config());
    REQUIRE(run.records.size() == 12);
    CHECK(run.cell_failures == 0);
    // Sorted by (n, p, trial); every row carries the right parameters.
    std::size_t idx = 0;
    for (std::uint32_t n : {20u, 30u})
        for (double p : {0.2, 0.8})
            for (std::uint32_t t : {0u, 1u, 2u}) {
                const ExperimentRecord& r = run.records[idx++];
                CHECK(r.n == n);
                CHECK(r.p == p);
                CHECK(r.trial == t);
                CHECK(r.algorithm == "dp-trail");
                CHECK(r.ms == 0.0);
            }
}

TEST_CASE("identical configs give byte-identical output at any worker count") {
    ExperimentConfig cfg = base_config();
    std::string once = csv_of(run_experiment(cfg));
    std::string again = csv_of(run_experiment(cfg));
    cfg.threads = 8;
    std::string parallel = csv_of(run_experiment(cfg));
    CHECK(once == again);
    CHECK(once == parallel);

    SECTION("different roots differ") {
        ExperimentConfig other = base_config();
        other.root_seed = 100;
        CHECK(csv_of(run_experiment(other)) != once);
    }
}

TEST_CASE("csv shape") {
    CHECK(std::string(kCsvHeader) == "experiment,n,p,seed,trial,algorithm,length,ratio,ms,aux");
    SECTION("empty record list emits only the header") {
        std::ostringstream os;
        emit_csv({}, os);
        CHECK(os.str() == std::string(kCsvHeader) + "\n");
    }
    SECTION("one record, two lines, quoted aux") {
        ExperimentRecord r;
        r.experiment = "e";
        r.n = 5;
        r.p = 0.125;
        r.seed = 7;
        r.trial = 0;
        r.algorithm = "dp-trail";
        r.length = 4;
        r.ratio = 0.333333333;
        r.ms = 0;
        r.aux = "{\"m\":5}";
        std::ostringstream os;
        emit_csv({r}, os);
        CHECK(os.str() == std::string(kCsvHeader) +
                              "\ne,5,0.125,7,0,dp-trail,4,0.333333,0,\"{\"\"m\"\":5}\"\n");
    }
}

TEST_CASE("json round trip") {
    ExperimentConfig cfg = base_config();
    cfg.algorithm = "sparse-probe";
    cfg.n_values = {40};
    cfg.p_values = {0.1};
    ExperimentRun run = run_experiment(cfg);
    std::ostringstream first;
    emit_json(run.records, first);
    std::istringstream in(first.str());
    std::vector<ExperimentRecord> parsed = parse_records_json(in);
    REQUIRE(parsed.size() == run.records.size());
    std::ostringstream second;
    emit_json(parsed, second);
    CHECK(first.str() == second.str());

    SECTION("empty array") {
        std::ostringstream os;
        emit_json({}, os);
        CHECK(os.str() == "[]\n");
        std::istringstream empty(os.str());
        CHECK(parse_records_json(empty).empty());
    }
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = base_config();
    cfg.n_values.clear();
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);

    cfg = base_config();
    cfg.m_values = {10};  // both grids set
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);

    cfg = base_config();
    cfg.algorithm = "quantum";
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);

    cfg = base_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("cell errors become rows, not absences") {
    ExperimentConfig cfg = base_config();
    cfg.n_values = {3};
    cfg.p_values.clear();
    cfg.m_values = {100};  // more edges than C(3,2): every trial fails
    cfg.trials = 2;
    ExperimentRun run = run_experiment(cfg);
    REQUIRE(run.records.size() == 2);
    CHECK(run.cell_failures == 2);
    for (const ExperimentRecord& r : run.records) {
        CHECK(r.length == 0);
        CHECK(r.aux.find("\"error\"") != std::string::npos);
    }
}

TEST_CASE("algorithms produce sane rows") {
    ExperimentConfig cfg = base_config();
    cfg.n_values = {24};
    cfg.p_values = {0.5};
    cfg.trials = 2;
    for (const char* alg : {"dp-trail", "path-exact", "stitch-trail", "stitch-path", "sparse-probe"}) {
        cfg.algorithm = alg;
        ExperimentRun run = run_experiment(cfg);
        REQUIRE(run.records.size() == 2);
        CHECK(run.cell_failures == 0);
        for (const ExperimentRecord& r : run.records) {
            CHECK(r.aux.find("\"error\"") == std::string::npos);
            if (std::string(alg) == "dp-trail") CHECK(r.length >= 3);  // average degree bound
        }
    }
}

TEST_CASE("ratio scales by e*n*p") {
    ExperimentConfig cfg = base_config();
    cfg.n_values = {30};
    cfg.p_values = {1.0};
    cfg.trials = 1;
    ExperimentRun run = run_experiment(cfg);
    const ExperimentRecord& r = run.records.at(0);
    CHECK(r.ratio == Catch::Approx(static_cast<double>(r.length) / (std::exp(1.0) * 30.0)));
}
