#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "itrail/generators.hpp"
#include "itrail/graph.hpp"
#include "itrail/ordering.hpp"
#include "itrail/rng.hpp"
#include "itrail/solvers.hpp"
#include "itrail/stitching.hpp"

namespace itrail {

// One trial's outcome row. `aux` carries algorithm-specific extras as a
// compact JSON string.
struct ExperimentRecord {
    std::string experiment;
    std::uint32_t n = 0;
    double p = 0.0;
    std::uint64_t seed = 0;  // derived per-trial stream key
    std::uint32_t trial = 0;
    std::string algorithm;
    std::uint64_t length = 0;
    double ratio = 0.0;  // length / (e * n * p)
    double ms = 0.0;
    std::string aux;

    friend bool operator==(const ExperimentRecord&, const ExperimentRecord&) = default;
};

struct ExperimentConfig {
    std::string name = "exp";
    std::string algorithm = "dp-trail";  // dp-trail | path-exact | stitch-trail | stitch-path | sparse-probe
    std::vector<std::uint32_t> n_values;
    std::vector<double> p_values;        // exactly one of p_values / m_values
    std::vector<std::uint64_t> m_values;
    std::uint32_t trials = 1;
    std::uint64_t root_seed = 0;
    unsigned threads = 1;
    bool timing = true;  // false pins the ms column to 0 for byte-reproducible output
    std::uint64_t budget = 1'000'000;
    std::uint32_t probe_k = 4;
    double eps = 0.1;

    void validate() const {
        if (n_values.empty()) throw std::invalid_argument("ExperimentConfig: empty n grid");
        if (p_values.empty() == m_values.empty())
            throw std::invalid_argument("ExperimentConfig: provide exactly one of the p and m grids");
        if (trials == 0) throw std::invalid_argument("ExperimentConfig: trials must be positive");
        if (algorithm != "dp-trail" && algorithm != "path-exact" && algorithm != "stitch-trail" &&
            algorithm != "stitch-path" && algorithm != "sparse-probe")
            throw std::invalid_argument("ExperimentConfig: unknown algorithm \"" + algorithm + "\"");
    }

    std::size_t cells() const {
        return n_values.size() * (p_values.empty() ? m_values.size() : p_values.size());
    }
};

struct ExperimentRun {
    std::vector<ExperimentRecord> records;
    std::uint64_t cell_failures = 0;
};

namespace detail {

inline std::string format_g6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline std::string stitch_aux(const Graph& g, const StitchResult& sr) {
    std::uint64_t ok = 0, fail_core = 0, fail_reach = 0, fail_conn = 0;
    for (const RoundOutcome& r : sr.rounds) {
        if (r.success) {
            ++ok;
            continue;
        }
        switch (r.failure_stage) {
            case FailureStage::core: ++fail_core; break;
            case FailureStage::reachable_set: ++fail_reach; break;
            case FailureStage::connector: ++fail_conn; break;
            case FailureStage::none: break;
        }
    }
    std::ostringstream os;
    os << "{\"m\":" << g.edge_count() << ",\"rounds\":" << sr.rounds.size() << ",\"ok\":" << ok
       << ",\"fail_core\":" << fail_core << ",\"fail_reach\":" << fail_reach
       << ",\"fail_conn\":" << fail_conn << "}";
    return os.str();
}

inline ExperimentRecord run_cell_trial(const ExperimentConfig& cfg, std::uint32_t n, bool use_p,
                                       double p_in, std::uint64_t m_in, std::size_t cell,
                                       std::uint32_t trial) {
    Seed trial_seed = Seed(cfg.root_seed).child(cell, trial);
    ExperimentRecord rec;
    rec.experiment = cfg.name;
    rec.n = n;
    rec.seed = trial_seed.key();
    rec.trial = trial;
    rec.algorithm = cfg.algorithm;

    rec.p = use_p ? p_in
                  : (n >= 2 ? static_cast<double>(m_in) / static_cast<double>(pair_count(n)) : 0.0);
    auto start = std::chrono::steady_clock::now();
    try {
        Graph g = use_p ? gen_gnp(n, p_in, trial_seed) : gen_gnm(n, m_in, trial_seed);
        EdgeOrdering ord = random_ordering(g, trial_seed);
        std::ostringstream aux;
        if (cfg.algorithm == "dp-trail") {
            rec.length = longest_increasing_trail_length(g, ord);
            aux << "{\"m\":" << g.edge_count() << "}";
        } else if (cfg.algorithm == "path-exact") {
            SearchBudget budget{cfg.budget, SearchBudget::OnExhaust::return_best};
            PathSearchResult res = longest_increasing_path_exact(g, ord, budget);
            rec.length = res.path.length();
            aux << "{\"m\":" << g.edge_count() << ",\"exact\":" << (res.exact ? "true" : "false")
                << ",\"expansions\":" << res.expansions << "}";
        } else if (cfg.algorithm == "stitch-trail" || cfg.algorithm == "stitch-path") {
            ScheduleConfig sc;
            sc.mode = cfg.algorithm == "stitch-trail" ? StitchMode::trail : StitchMode::path;
            sc.eps = cfg.eps;
            sc.round_budget = cfg.budget;
            StitchResult sr = run_stitching(g, ord, sc);
            rec.length = sr.trail.length();
            aux << stitch_aux(g, sr);
        } else {  // sparse-probe
            SparseProbeResult res = sparse_probe_detailed(g, ord, cfg.probe_k);
            rec.length = res.hits;
            aux << "{\"m\":" << g.edge_count() << ",\"segments\":" << res.segments
                << ",\"path_len\":" << res.path_length << "}";
        }
        rec.aux = aux.str();
        double scale = std::exp(1.0) * static_cast<double>(n) * rec.p;
        rec.ratio = scale > 0.0 ? static_cast<double>(rec.length) / scale : 0.0;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (char& c : msg)
            if (c == '"' || c == '\\' || static_cast<unsigned char>(c) < 0x20) c = ' ';
        rec.aux = std::string("{\"error\":\"") + msg + "\"}";
        rec.length = 0;
        rec.ratio = 0.0;
    }
    if (cfg.timing) {
        rec.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return rec;
}

}  // namespace detail

// Runs every (grid cell x trial), possibly on several worker threads. Rows
// come back sorted by (cell, trial) and are bit-identical for a fixed config
// and root seed regardless of worker count (with timing disabled, which is
// the reproducibility mode). Per-cell errors become rows, never aborts.
inline ExperimentRun run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const bool use_p = !cfg.p_values.empty();
    const std::size_t param_count = use_p ? cfg.p_values.size() : cfg.m_values.size();
    const std::size_t total = cfg.cells() * cfg.trials;

    ExperimentRun run;
    run.records.resize(total);
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> failures{0};

    auto work = [&]() {
        while (true) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= total) break;
            std::size_t cell = idx / cfg.trials;
            auto trial = static_cast<std::uint32_t>(idx % cfg.trials);
            std::uint32_t n = cfg.n_values[cell / param_count];
            std::size_t pi = cell % param_count;
            ExperimentRecord rec =
                detail::run_cell_trial(cfg, n, use_p, use_p ? cfg.p_values[pi] : 0.0,
                                       use_p ? 0 : cfg.m_values[pi], cell, trial);
            if (rec.aux.rfind("{\"error\"", 0) == 0) failures.fetch_add(1);
            run.records[idx] = std::move(rec);
        }
    };

    unsigned workers = std::max(1u, cfg.threads);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    run.cell_failures = failures.load();
    return run;
}

// ---------------------------------------------------------------------------
// Emission. CSV header is fixed; floating-point fields use 6 significant
// digits in both formats; aux travels as a (quoted) JSON string.
// ---------------------------------------------------------------------------

inline constexpr const char* kCsvHeader = "experiment,n,p,seed,trial,algorithm,length,ratio,ms,aux";

namespace detail {

inline std::string csv_quote(const std::string& s) {
    bool needs = s.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace detail

inline void emit_csv(const std::vector<ExperimentRecord>& records, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const ExperimentRecord& r : records) {
        os << detail::csv_quote(r.experiment) << ',' << r.n << ',' << detail::format_g6(r.p) << ','
           << r.seed << ',' << r.trial << ',' << detail::csv_quote(r.algorithm) << ',' << r.length
           << ',' << detail::format_g6(r.ratio) << ',' << detail::format_g6(r.ms) << ','
           << detail::csv_quote(r.aux) << '\n';
    }
}

inline void emit_json(const std::vector<ExperimentRecord>& records, std::ostream& os) {
    os << "[";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const ExperimentRecord& r = records[i];
        os << (i == 0 ? "\n" : ",\n");
        os << "  {\"experiment\":\"" << detail::json_escape(r.experiment) << "\",\"n\":" << r.n
           << ",\"p\":" << detail::format_g6(r.p) << ",\"seed\":" << r.seed << ",\"trial\":" << r.trial
           << ",\"algorithm\":\"" << detail::json_escape(r.algorithm) << "\",\"length\":" << r.length
           << ",\"ratio\":" << detail::format_g6(r.ratio) << ",\"ms\":" << detail::format_g6(r.ms)
           << ",\"aux\":\"" << detail::json_escape(r.aux) << "\"}";
    }
    os << (records.empty() ? "]" : "\n]") << '\n';
}

inline std::vector<ExperimentRecord> parse_records_json(std::istream& in) {
    nlohmann::json j;
    in >> j;
    std::vector<ExperimentRecord> out;
    out.reserve(j.size());
    for (const auto& item : j) {
        ExperimentRecord r;
        r.experiment = item.at("experiment").get<std::string>();
        r.n = item.at("n").get<std::uint32_t>();
        r.p = item.at("p").get<double>();
        r.seed = item.at("seed").get<std::uint64_t>();
        r.trial = item.at("trial").get<std::uint32_t>();
        r.algorithm = item.at("algorithm").get<std::string>();
        r.length = item.at("length").get<std::uint64_t>();
        r.ratio = item.at("ratio").get<double>();
        r.ms = item.at("ms").get<double>();
        r.aux = item.at("aux").get<std::string>();
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Grid syntax: "250,500,1000" or geometric "250:2000:x2".
// ---------------------------------------------------------------------------

namespace detail {

template <typename T, typename Parse>
std::vector<T> parse_grid(const std::string& text, Parse parse_one) {
    std::vector<T> out;
    auto colon_1 = text.find(':');
    if (colon_1 != std::string::npos) {
        auto colon_2 = text.find(':', colon_1 + 1);
        if (colon_2 == std::string::npos || text.size() <= colon_2 + 1 || text[colon_2 + 1] != 'x')
            throw std::invalid_argument("grid: expected lo:hi:xFACTOR, got \"" + text + "\"");
        T lo = parse_one(text.substr(0, colon_1));
        T hi = parse_one(text.substr(colon_1 + 1, colon_2 - colon_1 - 1));
        double factor = std::stod(text.substr(colon_2 + 2));
        if (!(factor > 1.0)) throw std::invalid_argument("grid: geometric factor must exceed 1");
        double v = static_cast<double>(lo);
        while (static_cast<T>(v) <= hi) {
            out.push_back(static_cast<T>(v));
            v *= factor;
        }
        if (out.empty()) throw std::invalid_argument("grid: empty range \"" + text + "\"");
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (tok.empty()) throw std::invalid_argument("grid: empty element in \"" + text + "\"");
        out.push_back(parse_one(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("grid: no values in \"" + text + "\"");
    return out;
}

}  // namespace detail

inline std::vector<std::uint32_t> parse_grid_u32(const std::string& text) {
    return detail::parse_grid<std::uint32_t>(
        text, [](const std::string& s) { return static_cast<std::uint32_t>(std::stoul(s)); });
}

inline std::vector<std::uint64_t> parse_grid_u64(const std::string& text) {
    return detail::parse_grid<std::uint64_t>(
        text, [](const std::string& s) { return static_cast<std::uint64_t>(std::stoull(s)); });
}

inline std::vector<double> parse_grid_double(const std::string& text) {
    return detail::parse_grid<double>(text, [](const std::string& s) { return std::stod(s); });
}

}  // namespace itrail
