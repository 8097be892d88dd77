// Command-line laboratory for increasing trails and paths in randomly
// edge-ordered graphs.

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "itrail/itrail.hpp"

namespace {

using namespace itrail;

struct OutputTarget {
    std::ofstream file;
    std::ostream* os = &std::cout;

    void open(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path, std::ios::trunc);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        os = &file;
    }
};

int emit_records(const ExperimentRun& run, const std::string& format, const std::string& out_path,
                 bool strict) {
    OutputTarget out;
    out.open(out_path);
    if (format == "json")
        emit_json(run.records, *out.os);
    else
        emit_csv(run.records, *out.os);
    if (strict && run.cell_failures > 0) {
        std::cerr << run.cell_failures << " cell(s) failed\n";
        return 2;
    }
    return 0;
}

void add_common_options(CLI::App* cmd, ExperimentConfig& cfg, std::string& n_grid, std::string& p_grid,
                        std::string& m_grid, std::string& format, std::string& out_path, bool& strict) {
    cmd->add_option("--n", n_grid, "vertex counts: list 250,500 or geometric 250:2000:x2")->required();
    cmd->add_option("--p", p_grid, "edge probabilities (grid syntax)");
    cmd->add_option("--m", m_grid, "edge counts (grid syntax); alternative to --p");
    cmd->add_option("--trials", cfg.trials, "trials per grid cell")->capture_default_str();
    cmd->add_option("--seed", cfg.root_seed, "root seed")->capture_default_str();
    cmd->add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
    cmd->add_option("--budget", cfg.budget, "search expansion budget")->capture_default_str();
    cmd->add_option("--name", cfg.name, "experiment id column")->capture_default_str();
    cmd->add_flag("--timing,!--no-timing", cfg.timing,
                  "measure wall time per trial (disable for byte-reproducible output)");
    cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", out_path, "output path, - for stdout")->capture_default_str();
    cmd->add_flag("--strict", strict, "exit 2 when any cell fails");
}

ExperimentConfig finish_config(ExperimentConfig cfg, const std::string& n_grid,
                               const std::string& p_grid, const std::string& m_grid) {
    cfg.n_values = parse_grid_u32(n_grid);
    if (!p_grid.empty()) cfg.p_values = parse_grid_double(p_grid);
    if (!m_grid.empty()) cfg.m_values = parse_grid_u64(m_grid);
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"increasing-trail laboratory"};
    app.require_subcommand(1);
    // Config files use one [section] per subcommand and are given before the
    // subcommand name; command-line flags override file values.
    app.set_config("--config", "", "read options from a key=value config file");
    app.allow_config_extras(CLI::config_extras_mode::ignore_all);

    // --- simulate-trail / simulate-path / sparse-probe -------------------
    struct SimArgs {
        ExperimentConfig cfg;
        std::string n_grid, p_grid, m_grid;
        std::string format = "csv", out_path = "-";
        bool strict = false;
    };
    SimArgs trail_args, path_args, probe_args, stitch_args;

    CLI::App* sim_trail = app.add_subcommand("simulate-trail", "longest increasing trail on random graphs");
    add_common_options(sim_trail, trail_args.cfg, trail_args.n_grid, trail_args.p_grid,
                       trail_args.m_grid, trail_args.format, trail_args.out_path, trail_args.strict);

    CLI::App* sim_path = app.add_subcommand("simulate-path", "budgeted exact longest increasing path");
    add_common_options(sim_path, path_args.cfg, path_args.n_grid, path_args.p_grid, path_args.m_grid,
                       path_args.format, path_args.out_path, path_args.strict);

    CLI::App* probe = app.add_subcommand("sparse-probe", "segment probe for the very sparse regime");
    add_common_options(probe, probe_args.cfg, probe_args.n_grid, probe_args.p_grid, probe_args.m_grid,
                       probe_args.format, probe_args.out_path, probe_args.strict);
    probe->add_option("--k", probe_args.cfg.probe_k, "segment length")->capture_default_str();

    // --- construct (stitching) -------------------------------------------
    CLI::App* construct = app.add_subcommand("construct", "round-based trail/path construction");
    std::string construct_mode = "trail";
    std::uint32_t c_rounds = 0;
    std::uint64_t c_a = 0, c_b = 0;
    bool c_swap = false;
    add_common_options(construct, stitch_args.cfg, stitch_args.n_grid, stitch_args.p_grid,
                       stitch_args.m_grid, stitch_args.format, stitch_args.out_path,
                       stitch_args.strict);
    construct->add_option("--mode", construct_mode, "trail or path")
        ->check(CLI::IsMember({"trail", "path"}))->capture_default_str();
    construct->add_option("--eps", stitch_args.cfg.eps, "schedule epsilon")->capture_default_str();
    construct->add_option("--rounds", c_rounds, "round count t (0 = derive)");
    construct->add_option("--connector-size", c_a, "connector interval size a (0 = derive)");
    construct->add_option("--growth-size", c_b, "growth interval size b (0 = derive)");
    construct->add_flag("--swap-intervals", c_swap, "swap the a/b size assignment");
    std::string rounds_out = "-";
    construct->add_option("--rounds-out", rounds_out, "per-round CSV path")->capture_default_str();

    // --- tree-lemma --------------------------------------------------------
    CLI::App* tree = app.add_subcommand("tree-lemma", "root-to-leaf increasing paths in random labeled trees");
    std::string tree_d_grid = "2";
    std::uint32_t tree_k = 0;
    double tree_delta = 0.1;
    std::uint64_t tree_trials = 1000, tree_cap = 100'000'000;
    unsigned tree_threads = 1;
    std::uint64_t tree_seed = 0;
    bool tree_moments = false;
    std::string tree_out = "-";
    tree->add_option("--branching,-D", tree_d_grid, "branching factors (grid syntax)")->capture_default_str();
    tree->add_option("--depth,-k", tree_k, "depth; 0 = round(0.8*e*D)")->capture_default_str();
    tree->add_option("--delta", tree_delta, "good-path margin")->capture_default_str();
    tree->add_option("--trials", tree_trials, "trials per branching factor")->capture_default_str();
    tree->add_option("--cap", tree_cap, "expansion cap per trial")->capture_default_str();
    tree->add_option("--threads", tree_threads, "worker threads")->capture_default_str();
    tree->add_option("--seed", tree_seed, "root seed")->capture_default_str();
    tree->add_flag("--moments", tree_moments, "also run explicit-tree second-moment diagnostics");
    tree->add_option("--out", tree_out, "output path")->capture_default_str();

    // --- girth-prune ----------------------------------------------------
    CLI::App* prune_cmd = app.add_subcommand("girth-prune", "high-girth high-min-degree core extraction");
    std::uint32_t pr_n = 1024, pr_k = 6, pr_trials = 1;
    std::uint64_t pr_m = 0, pr_seed = 0;
    double pr_p = -1.0, pr_eps = 0.1, pr_floor = std::numeric_limits<double>::quiet_NaN();
    bool pr_full = false;
    std::string pr_out = "-";
    prune_cmd->add_option("--n", pr_n, "vertex count")->capture_default_str();
    prune_cmd->add_option("--m", pr_m, "edge count (G(n,m) model)");
    prune_cmd->add_option("--p", pr_p, "edge probability (G(n,p) model)");
    prune_cmd->add_option("--girth", pr_k, "girth target")->capture_default_str();
    prune_cmd->add_option("--eps", pr_eps, "epsilon")->capture_default_str();
    prune_cmd->add_option("--floor", pr_floor, "degree floor (default (1-eps)*avg)");
    prune_cmd->add_option("--trials", pr_trials, "seeded runs")->capture_default_str();
    prune_cmd->add_option("--seed", pr_seed, "root seed")->capture_default_str();
    prune_cmd->add_flag("--full-report", pr_full, "dump deleted vertex sets");
    prune_cmd->add_option("--out", pr_out, "output path")->capture_default_str();

    // --- worst-case -------------------------------------------------------
    CLI::App* worst = app.add_subcommand("worst-case", "minimum over edge orderings of the best trail/path");
    std::string wc_graph_file;
    std::uint32_t wc_complete = 0;
    bool wc_paths = false, wc_sampled = false, wc_symmetry = false;
    std::uint64_t wc_trials = 10'000, wc_seed = 0, wc_max = 0;
    unsigned wc_threads = 1;
    std::string wc_checkpoint;
    worst->add_option("--graph", wc_graph_file, "plain-text graph file (n m header, u v lines)");
    worst->add_option("--complete", wc_complete, "use the complete graph K_n");
    worst->add_flag("--paths", wc_paths, "score increasing paths instead of trails");
    worst->add_flag("--sampled", wc_sampled, "sampled upper bound instead of full enumeration");
    worst->add_flag("--symmetry", wc_symmetry, "fix label 1 on edge 0 (complete graphs)");
    worst->add_option("--trials", wc_trials, "orderings sampled in --sampled mode")->capture_default_str();
    worst->add_option("--seed", wc_seed, "root seed for --sampled")->capture_default_str();
    worst->add_option("--threads", wc_threads, "worker threads")->capture_default_str();
    worst->add_option("--max-orderings", wc_max, "stop after this many orderings (0 = all)");
    worst->add_option("--checkpoint", wc_checkpoint, "checkpoint file for resumable runs");

    // --- expectations ----------------------------------------------------
    CLI::App* expect = app.add_subcommand("expectations", "closed-form expectation table");
    std::string ex_n = "1000", ex_p = "0.01", ex_k = "1,2,4,8";
    double ex_eps = 0.1;
    std::string ex_out = "-";
    expect->add_option("--n", ex_n, "vertex counts (grid syntax)")->capture_default_str();
    expect->add_option("--p", ex_p, "edge probabilities (grid syntax)")->capture_default_str();
    expect->add_option("--k", ex_k, "path/trail lengths (grid syntax)")->capture_default_str();
    expect->add_option("--eps", ex_eps, "epsilon for the trail threshold")->capture_default_str();
    expect->add_option("--out", ex_out, "output path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim_trail->parsed()) {
            trail_args.cfg.algorithm = "dp-trail";
            auto cfg = finish_config(trail_args.cfg, trail_args.n_grid, trail_args.p_grid, trail_args.m_grid);
            return emit_records(run_experiment(cfg), trail_args.format, trail_args.out_path, trail_args.strict);
        }
        if (sim_path->parsed()) {
            path_args.cfg.algorithm = "path-exact";
            auto cfg = finish_config(path_args.cfg, path_args.n_grid, path_args.p_grid, path_args.m_grid);
            return emit_records(run_experiment(cfg), path_args.format, path_args.out_path, path_args.strict);
        }
        if (probe->parsed()) {
            probe_args.cfg.algorithm = "sparse-probe";
            auto cfg = finish_config(probe_args.cfg, probe_args.n_grid, probe_args.p_grid, probe_args.m_grid);
            return emit_records(run_experiment(cfg), probe_args.format, probe_args.out_path, probe_args.strict);
        }
        if (construct->parsed()) {
            stitch_args.cfg.algorithm = construct_mode == "path" ? "stitch-path" : "stitch-trail";
            auto cfg = finish_config(stitch_args.cfg, stitch_args.n_grid, stitch_args.p_grid,
                                     stitch_args.m_grid);
            // Per-run execution so the per-round log can be emitted.
            OutputTarget rounds_csv;
            rounds_csv.open(rounds_out);
            *rounds_csv.os << "run_id,round,status,failure_stage,gain,core_retained,core_min_degree,"
                              "cumulative_length\n";
            const bool use_p = !cfg.p_values.empty();
            std::uint32_t run_id = 0;
            std::vector<ExperimentRecord> records;
            for (std::size_t cell = 0; cell < cfg.cells(); ++cell) {
                std::size_t params = use_p ? cfg.p_values.size() : cfg.m_values.size();
                std::uint32_t n = cfg.n_values[cell / params];
                for (std::uint32_t trial = 0; trial < cfg.trials; ++trial, ++run_id) {
                    Seed trial_seed = Seed(cfg.root_seed).child(cell, trial);
                    Graph g = use_p ? gen_gnp(n, cfg.p_values[cell % params], trial_seed)
                                    : gen_gnm(n, cfg.m_values[cell % params], trial_seed);
                    EdgeOrdering ord = random_ordering(g, trial_seed);
                    ScheduleConfig sc;
                    sc.mode = construct_mode == "path" ? StitchMode::path : StitchMode::trail;
                    sc.eps = cfg.eps;
                    sc.rounds = c_rounds;
                    sc.connector_size = c_a;
                    sc.growth_size = c_b;
                    sc.swap_interval_roles = c_swap;
                    sc.round_budget = cfg.budget;
                    StitchResult sr = run_stitching(g, ord, sc);
                    for (const RoundOutcome& r : sr.rounds) {
                        *rounds_csv.os << run_id << ',' << r.index << ','
                                       << (r.success ? "success" : "failure") << ','
                                       << to_string(r.failure_stage) << ',' << r.gain << ','
                                       << detail::format_g6(r.core_retained) << ','
                                       << r.core_min_degree << ',' << r.cumulative_length << '\n';
                    }
                    std::cerr << "run " << run_id << ": n=" << n << " m=" << g.edge_count()
                              << " length=" << sr.trail.length() << '\n';
                }
            }
            return 0;
        }
        if (tree->parsed()) {
            OutputTarget out;
            out.open(tree_out);
            *out.os << "D,k,delta,trials,successes,capped,estimate,stderr,Q";
            if (tree_moments) *out.os << ",mean_z,mean_z2,ratio,p_positive";
            *out.os << '\n';
            for (std::uint32_t d : parse_grid_u32(tree_d_grid)) {
                std::uint32_t k = tree_k != 0
                                      ? tree_k
                                      : static_cast<std::uint32_t>(std::llround(0.8 * std::exp(1.0) * d));
                TreeSearchConfig cfg;
                cfg.branching = d;
                cfg.depth = k;
                cfg.trials = tree_trials;
                cfg.seed = Seed(tree_seed).child(d);
                cfg.expansion_cap = tree_cap;
                cfg.threads = tree_threads;
                TreeTrialStats stats = run_tree_trials(cfg);
                double q = static_cast<double>(d) * std::exp(1.0) * (1.0 - tree_delta) / k;
                *out.os << d << ',' << k << ',' << detail::format_g6(tree_delta) << ',' << stats.trials
                        << ',' << stats.successes << ',' << stats.capped << ','
                        << detail::format_g6(stats.estimate()) << ','
                        << detail::format_g6(stats.standard_error()) << ',' << detail::format_g6(q);
                if (tree_moments) {
                    SecondMomentDiagnostics diag =
                        second_moment_diagnostics(d, k, tree_delta, tree_trials, Seed(tree_seed).child(d));
                    *out.os << ',' << detail::format_g6(diag.mean_z) << ','
                            << detail::format_g6(diag.mean_z2) << ','
                            << detail::format_g6(diag.second_moment_ratio) << ','
                            << detail::format_g6(diag.p_positive);
                }
                *out.os << '\n';
            }
            return 0;
        }
        if (prune_cmd->parsed()) {
            if ((pr_m == 0) == (pr_p < 0.0))
                throw std::invalid_argument("girth-prune: provide exactly one of --m and --p");
            OutputTarget out;
            out.open(pr_out);
            for (std::uint32_t t = 0; t < pr_trials; ++t) {
                Seed s = Seed(pr_seed).child(t);
                Graph g = pr_m != 0 ? gen_gnm(pr_n, pr_m, s) : gen_gnp(pr_n, pr_p, s);
                PruneConfig cfg{pr_k, pr_eps, pr_floor};
                CoreResult core = extract_high_girth_core(g, cfg);
                InducedSubgraph sub = induced_subgraph(g, core.in_core);
                bool girth_ok = sub.vertex_map.empty() || girth_at_least(sub.graph, pr_k);
                nlohmann::json j;
                j["trial"] = t;
                j["n"] = pr_n;
                j["m"] = g.edge_count();
                j["girth_target"] = pr_k;
                j["eps"] = pr_eps;
                j["retained_fraction"] = core.report.retained_fraction;
                j["cycle_deleted"] = core.report.deleted_cycle_vertices.size();
                j["low_degree"] = core.report.deleted_low_degree.size();
                j["absorbed"] = core.report.absorbed_sequence.size();
                j["rounds"] = core.report.rounds;
                j["core_vertices"] = sub.vertex_map.size();
                j["girth_ok"] = girth_ok;
                if (!sub.vertex_map.empty()) j["core_min_degree"] = min_degree_within(g, core.in_core);
                if (pr_full) {
                    j["deleted_cycle_vertices"] = core.report.deleted_cycle_vertices;
                    j["deleted_low_degree"] = core.report.deleted_low_degree;
                    j["absorbed_sequence"] = core.report.absorbed_sequence;
                }
                *out.os << j.dump() << '\n';
            }
            return 0;
        }
        if (worst->parsed()) {
            Graph g = [&]() {
                if (!wc_graph_file.empty()) {
                    std::ifstream in(wc_graph_file);
                    if (!in) throw std::runtime_error("cannot open graph file: " + wc_graph_file);
                    return parse_graph_text(in).graph;
                }
                if (wc_complete >= 2) return complete_graph(wc_complete);
                throw std::invalid_argument("worst-case: provide --graph FILE or --complete N");
            }();
            auto start = std::chrono::steady_clock::now();
            if (wc_sampled) {
                std::uint32_t bound = sampled_trail_upper_bound(g, wc_trials, Seed(wc_seed));
                double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
                std::cout << "sampled upper bound: " << bound << "\n"
                          << "orderings examined: " << wc_trials << "\n"
                          << "average-degree lower bound: " << average_degree(g) << "\n"
                          << "wall time: " << secs << " s\n";
                return 0;
            }
            ExhaustiveOptions opt;
            opt.threads = wc_threads;
            opt.symmetry_reduce = wc_symmetry;
            opt.max_orderings = wc_max;
            opt.checkpoint_path = wc_checkpoint;
            WorstCaseResult res =
                wc_paths ? worst_case_path_exhaustive(g, opt) : worst_case_trail_exhaustive(g, opt);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::cout << (wc_paths ? "worst-case path" : "worst-case trail") << ": " << res.value << "\n";
            std::cout << "witness ordering (label per edge):";
            for (std::uint32_t l : res.witness.label) std::cout << ' ' << l;
            std::cout << "\norderings examined: " << res.orderings_examined
                      << (res.exhaustive ? " (exhaustive" : " (partial")
                      << (res.symmetry_reduced ? ", symmetry-reduced)" : ")") << "\n"
                      << "wall time: " << secs << " s\n";
            return 0;
        }
        if (expect->parsed()) {
            OutputTarget out;
            out.open(ex_out);
            *out.os << "n,p,k,eps,expected_paths_log,expected_paths,trails_upper_log,trails_upper,"
                       "trail_threshold,sparse_threshold\n";
            for (std::uint32_t n : parse_grid_u32(ex_n))
                for (double p : parse_grid_double(ex_p))
                    for (std::uint32_t k : parse_grid_u32(ex_k)) {
                        RegimeQuery q{n, p, k, ex_eps};
                        LogValue paths = expected_increasing_paths(q);
                        LogValue trails = expected_increasing_trails_upper(q);
                        *out.os << n << ',' << detail::format_g6(p) << ',' << k << ','
                                << detail::format_g6(ex_eps) << ',' << detail::format_g6(paths.log_value)
                                << ',' << detail::format_g6(paths.value) << ','
                                << detail::format_g6(trails.log_value) << ','
                                << detail::format_g6(trails.value) << ','
                                << detail::format_g6(trail_threshold(n, p, ex_eps)) << ','
                                << detail::format_g6(n >= 3 ? sparse_threshold(n) : 0.0) << '\n';
                    }
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
