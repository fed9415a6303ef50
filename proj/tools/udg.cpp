#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "udg/enumerate.hpp"
#include "udg/graph6.hpp"
#include "udg/pipeline.hpp"
#include "udg/solver.hpp"
#include "udg/tuud.hpp"

using namespace udg;
using nlohmann::json;

namespace {

json complex_list(const std::vector<Complex>& values)
{
    json out = json::array();
    for (Complex z : values) out.push_back({z.real(), z.imag()});
    return out;
}

json trace_json(const Trace& trace)
{
    json out = json::array();
    for (const TraceStep& s : trace)
        out.push_back({{"branch", s.branch},
                       {"move", to_string(s.move)},
                       {"vertices", s.vertices},
                       {"params", complex_list(s.params)}});
    return out;
}

std::vector<Graph> read_graph6_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<Graph> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto end = line.find_first_of(" \t#\r");
        line = line.substr(0, end);
        if (!line.empty()) out.push_back(parse_graph6(line));
    }
    return out;
}

struct JsonlWriter {
    std::optional<std::ofstream> out;

    explicit JsonlWriter(const std::string& path)
    {
        if (path.empty()) return;
        out.emplace(path);
        if (!*out) throw std::runtime_error("cannot write " + path);
    }
    void operator()(const json& record)
    {
        if (out) *out << record.dump() << '\n';
    }
};

void write_lines(const std::vector<std::string>& codes, const std::string& path)
{
    if (path.empty() || path == "-") {
        for (const std::string& c : codes) std::cout << c << '\n';
        return;
    }
    std::string text;
    for (const std::string& c : codes) text += c + '\n';
    write_file_atomic(path, text);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Unit-distance graph enumeration and embedding"};
    app.require_subcommand(1);

    int jobs = 1;
    std::string checkpoint;
    bool no_prune = false;
    std::uint64_t max_hosts = 0;
    auto add_enumerate_options = [&](CLI::App* cmd) {
        cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--checkpoint", checkpoint, "directory for sealed levels and resume cursors");
        cmd->add_flag("--no-prune", no_prune, "disable the minimum-degree pruning rules");
        cmd->add_option("--max-hosts", max_hosts, "stop after this many extended hosts (0 = no limit)");
    };
    auto enumerate_config = [&] {
        EnumerateConfig c;
        c.prune = !no_prune;
        c.jobs = jobs;
        c.max_hosts = max_hosts;
        return c;
    };
    auto checkpoint_path = [&]() -> std::optional<std::filesystem::path> {
        if (checkpoint.empty()) return std::nullopt;
        return std::filesystem::path(checkpoint);
    };

    std::string forbidden_path, out_path;
    int n = 0, m = 0;

    auto* enumerate_cmd = app.add_subcommand("enumerate", "F-free graphs with n vertices and m edges");
    enumerate_cmd->add_option("--n", n)->required()->check(CLI::Range(0, 63));
    enumerate_cmd->add_option("--m", m)->required()->check(CLI::NonNegativeNumber);
    enumerate_cmd->add_option("--forbidden", forbidden_path, "forbidden family (graph6 lines)")->required();
    enumerate_cmd->add_option("--out", out_path, "output file (default stdout)");
    add_enumerate_options(enumerate_cmd);

    auto* density_cmd = app.add_subcommand("maxdensity", "largest m with a nonempty F-free level");
    density_cmd->add_option("--n", n)->required()->check(CLI::Range(0, 63));
    density_cmd->add_option("--forbidden", forbidden_path)->required();
    density_cmd->add_option("--out", out_path, "also write the level's codes here");
    add_enumerate_options(density_cmd);

    std::string catalog_path, in_path, report_path;
    auto* filter_cmd = app.add_subcommand("tuud-filter", "drop graphs containing a totally unfaithful pattern");
    filter_cmd->add_option("--catalog", catalog_path)->required();
    filter_cmd->add_option("--in", in_path)->required();
    filter_cmd->add_option("--out", out_path)->required();
    filter_cmd->add_option("--report", report_path, "JSONL record per rejected graph");

    std::string graph_code;
    std::uint64_t seed = 0;
    int retries = EmbedConfig{}.max_retries;
    double tol = EmbedConfig{}.eps_res;
    bool paranoid = false;
    auto* embed_cmd = app.add_subcommand("embed", "decide whether one graph is a unit-distance graph");
    embed_cmd->add_option("--graph", graph_code, "graph6 code")->required();
    embed_cmd->add_option("--seed", seed);
    embed_cmd->add_option("--retries", retries)->check(CLI::PositiveNumber);
    embed_cmd->add_option("--tol", tol)->check(CLI::PositiveNumber);
    embed_cmd->add_flag("--paranoid", paranoid, "re-check a refutation at tolerance 1e-12");
    embed_cmd->add_option("--out", out_path, "result file (default stdout)");

    int max_n = 12;
    auto* reproduce_cmd = app.add_subcommand("reproduce", "recompute the densest-graph table up to max-n");
    reproduce_cmd->add_option("--max-n", max_n)->check(CLI::Range(0, 63));
    reproduce_cmd->add_option("--forbidden", forbidden_path)->required();
    reproduce_cmd->add_option("--tuud-catalog", catalog_path)->required();
    reproduce_cmd->add_option("--seed", seed);
    reproduce_cmd->add_option("--report", report_path, "JSONL decision and row records");
    add_enumerate_options(reproduce_cmd);

    int max_vertices = 7;
    std::string adjudicated_path;
    auto* derive_cmd = app.add_subcommand("derive-forbidden", "build the minimal non-unit-distance family");
    derive_cmd->add_option("--max-vertices", max_vertices)->check(CLI::Range(0, 12));
    derive_cmd->add_option("--adjudicated", adjudicated_path,
                           "graphs to treat as forbidden when the solver cannot decide them");
    derive_cmd->add_option("--out", out_path, "family file (default stdout)");
    derive_cmd->add_option("--report", report_path, "JSONL record per non-embedded graph");
    derive_cmd->add_option("--jobs", jobs)->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enumerate_cmd || *density_cmd) {
            const ForbiddenFamily family = load_forbidden(forbidden_path);
            LevelStore store(family.members, enumerate_config(), checkpoint_path());
            if (*enumerate_cmd) {
                const Level& level = store.level(n, m);
                write_lines(level.codes, out_path);
                std::cerr << level.codes.size() << " graphs\n";
            } else {
                const auto [ubar, level] = store.max_density(n);
                std::cout << "n=" << n << " ubar=" << ubar << " count=" << level->codes.size() << '\n';
                if (!out_path.empty()) write_lines(level->codes, out_path);
            }
            return 0;
        }

        if (*filter_cmd) {
            const TuudCatalog catalog = load_catalog(catalog_path);
            JsonlWriter report(report_path);
            std::vector<std::string> survivors;
            std::ifstream in(in_path);
            if (!in) throw std::runtime_error("cannot open " + in_path);
            std::string line;
            while (std::getline(in, line)) {
                line = line.substr(0, line.find_first_of(" \t#\r"));
                if (line.empty()) continue;
                if (auto hit = is_reducible(parse_graph6(line), catalog))
                    report({{"graph6", line}, {"entry", hit->entry}, {"embedding", hit->embedding}});
                else
                    survivors.push_back(line);
            }
            write_lines(survivors, out_path);
            std::cerr << survivors.size() << " survivors\n";
            return 0;
        }

        if (*embed_cmd) {
            EmbedConfig config;
            config.rng_seed = seed;
            config.max_retries = retries;
            config.eps_rank = config.eps_mod = config.eps_res = tol;
            const Graph g = parse_graph6(graph_code);
            const SolverOutcome out = solve(g, config);
            json rec{{"graph6", graph_code}, {"outcome", out.tag()}, {"nodes", out.nodes},
                     {"trace", trace_json(out.trace)}};
            if (const auto* e = std::get_if<Embedded>(&out.result)) {
                rec["coords"] = complex_list(e->coords);
                rec["branch"] = e->branch;
                rec["seed"] = e->seed;
                rec["random_constraints"] = e->random_constraints;
                rec["numeric"] = e->numeric;
            } else if (const auto* u = std::get_if<Unknown>(&out.result)) {
                rec["reason"] = u->reason;
            }
            if (paranoid && out.refuted()) rec["paranoid_agrees"] = paranoid_agrees(g, config);
            const std::string text = rec.dump(2) + '\n';
            if (out_path.empty() || out_path == "-")
                std::cout << text;
            else
                write_file_atomic(out_path, text);
            return 0;
        }

        if (*reproduce_cmd) {
            RunConfig config;
            config.max_n = max_n;
            config.enumerate = enumerate_config();
            config.embed.rng_seed = seed;
            config.checkpoint = checkpoint_path();
            const ForbiddenFamily family = load_forbidden(forbidden_path);
            const TuudCatalog catalog = load_catalog(catalog_path);
            JsonlWriter report(report_path);
            const RunReport run = reproduce_table1(family.members, catalog, config, std::ref(report));
            for (const RowReport& row : run.rows) {
                const Table1Row& r = row.observed;
                std::cout << "n=" << r.n << " u=" << r.u << " f_free=" << r.f_free << " tuud_free=" << r.tuud_free
                          << " embedded=" << r.embedded << " unknown=" << row.unknown << " time=" << row.seconds
                          << "s " << (row.matches() ? "match" : "MISMATCH");
                for (const std::string& s : row.mismatches) std::cout << " [" << s << ']';
                std::cout << '\n';
            }
            if (run.partial) {
                std::cerr << "partial run: " << run.error << '\n';
                return 1;
            }
            return run.all_match() ? 0 : 2;
        }

        if (*derive_cmd) {
            DeriveConfig config;
            config.max_vertices = max_vertices;
            config.jobs = jobs;
            if (!adjudicated_path.empty()) config.adjudicated_forbidden = read_graph6_file(adjudicated_path);
            JsonlWriter report(report_path);
            const DeriveResult result = derive_forbidden(config, std::ref(report));
            for (int v = 0; v <= max_vertices; ++v)
                if (result.added_per_order[v] > 0)
                    std::cerr << v << " vertices: " << result.added_per_order[v] << " added\n";
            for (const FlaggedGraph& f : result.flagged) std::cerr << "flagged " << f.graph6 << ": " << f.reason << '\n';
            if (out_path.empty() || out_path == "-") {
                for (const Graph& g : result.family.members) std::cout << emit_graph6(g) << '\n';
            } else {
                save_forbidden(result.family, out_path);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
