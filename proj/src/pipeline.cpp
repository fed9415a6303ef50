#include "udg/pipeline.hpp"

#include <chrono>
#include <set>

#include "udg/canonical.hpp"
#include "udg/graph6.hpp"
#include "udg/parallel.hpp"
#include "udg/solver.hpp"

namespace udg {

const std::vector<Table1Row>& expected_table1()
{
    static const std::vector<Table1Row> rows{
        {0, 0, 1, 1, 1},    {1, 0, 1, 1, 1},    {2, 1, 1, 1, 1},      {3, 3, 1, 1, 1},     {4, 5, 1, 1, 1},
        {5, 7, 1, 1, 1},    {6, 9, 4, 4, 4},    {7, 12, 1, 1, 1},     {8, 14, 3, 3, 3},    {9, 18, 1, 1, 1},
        {10, 20, 1, 1, 1},  {11, 23, 2, 2, 2},  {12, 27, 1, 1, 1},    {13, 30, 1, 1, 1},   {14, 33, 2, 2, 2},
        {15, 37, 1, 1, 1},  {16, 41, 1, 1, 1},  {17, 43, 15, 8, 7},   {18, 46, 84, 38, 16}, {19, 50, 17, 5, 3},
        {20, 54, 7, 1, 1},  {21, 57, 149, 19, 5},
    };
    return rows;
}

bool RunReport::all_match() const
{
    if (partial) return false;
    for (const RowReport& r : rows)
        if (!r.matches()) return false;
    return true;
}

namespace {

nlohmann::json coords_json(const std::vector<Complex>& coords)
{
    nlohmann::json out = nlohmann::json::array();
    for (Complex z : coords) out.push_back({z.real(), z.imag()});
    return out;
}

void compare(RowReport& row)
{
    const auto& table = expected_table1();
    const Table1Row& got = row.observed;
    if (got.n < 0 || got.n >= static_cast<int>(table.size())) return;
    const Table1Row& want = table[got.n];
    auto check = [&](const char* name, long long expected, long long observed) {
        if (expected != observed)
            row.mismatches.push_back(std::string(name) + ": expected " + std::to_string(expected) + ", got " +
                                     std::to_string(observed));
    };
    check("u", want.u, got.u);
    check("f_free", want.f_free, got.f_free);
    check("tuud_free", want.tuud_free, got.tuud_free);
    check("embedded", want.embedded, got.embedded);
}

}  // namespace

RunReport reproduce_table1(const std::vector<Graph>& family, const TuudCatalog& catalog, const RunConfig& config,
                           const RecordSink& sink)
{
    RunReport report;
    LevelStore store(family, config.enumerate, config.checkpoint);
    const int jobs = std::max(config.enumerate.jobs, 1);

    for (int n = 0; n <= config.max_n; ++n) {
        const auto start = std::chrono::steady_clock::now();
        std::pair<int, const Level*> density;
        try {
            density = store.max_density(n);
        } catch (const BudgetExceededError& e) {
            report.partial = true;
            report.error = "budget exhausted at n = " + std::to_string(n);
            break;
        }
        const auto [ubar, level] = density;
        const std::vector<Graph> graphs = level->graphs();

        std::vector<std::optional<ReducibleReport>> reducible(graphs.size());
        parallel_for(graphs.size(), jobs, [&](std::size_t i, int) { reducible[i] = is_reducible(graphs[i], catalog); });
        std::vector<std::optional<SolverOutcome>> outcomes(graphs.size());
        parallel_for(graphs.size(), jobs, [&](std::size_t i, int) {
            if (!reducible[i]) outcomes[i] = solve(graphs[i], config.embed);
        });

        RowReport row;
        row.observed = {n, ubar, static_cast<long long>(graphs.size()), 0, 0};
        row.seed = config.embed.rng_seed;
        for (std::size_t i = 0; i < graphs.size(); ++i) {
            nlohmann::json rec{{"type", "decision"}, {"n", n}, {"m", ubar}, {"graph6", level->codes[i]}};
            if (reducible[i]) {
                rec["stage"] = "tuud";
                rec["outcome"] = "reducible";
                rec["entry"] = reducible[i]->entry;
                rec["embedding"] = reducible[i]->embedding;
            } else {
                ++row.observed.tuud_free;
                const SolverOutcome& out = *outcomes[i];
                rec["stage"] = "solver";
                rec["outcome"] = out.tag();
                if (const auto* e = std::get_if<Embedded>(&out.result)) {
                    ++row.observed.embedded;
                    rec["branch"] = e->branch;
                    rec["coords"] = coords_json(e->coords);
                    rec["numeric"] = e->numeric;
                } else if (const auto* u = std::get_if<Unknown>(&out.result)) {
                    ++row.unknown;
                    rec["reason"] = u->reason;
                }
            }
            if (sink) sink(rec);
        }
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        compare(row);
        if (sink) {
            sink({{"type", "row"},
                  {"n", n},
                  {"u", row.observed.u},
                  {"f_free", row.observed.f_free},
                  {"tuud_free", row.observed.tuud_free},
                  {"embedded", row.observed.embedded},
                  {"unknown", row.unknown},
                  {"seconds", row.seconds},
                  {"seed", row.seed},
                  {"matches", row.matches()},
                  {"mismatches", row.mismatches}});
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

DeriveResult derive_forbidden(const DeriveConfig& config, const RecordSink& sink)
{
    if (config.max_vertices < 0 || config.max_vertices > 12)
        throw std::invalid_argument("derive_forbidden supports at most 12 vertices");
    DeriveResult result;
    result.family.source = "derived up to " + std::to_string(config.max_vertices) + " vertices";
    result.added_per_order.assign(config.max_vertices + 1, 0);

    std::set<std::string> adjudicated;
    for (const Graph& g : config.adjudicated_forbidden) adjudicated.insert(canonical_form(g).graph6);

    EnumerateConfig enumerate;
    enumerate.jobs = config.jobs;
    LevelMap levels;
    levels[{0, 0}] = Level{0, 0, {emit_graph6(Graph(0))}};
    std::vector<Graph>& family = result.family.members;

    for (int n = 1; n <= config.max_vertices; ++n) {
        for (int m = 0; m <= n * (n - 1) / 2; ++m) {
            const Level level = build_level(n, m, levels, family, enumerate);
            const std::vector<Graph> graphs = level.graphs();
            std::vector<SolverOutcome> outcomes(graphs.size());
            parallel_for(graphs.size(), config.jobs,
                         [&](std::size_t i, int) { outcomes[i] = solve(graphs[i], config.embed); });

            Level kept{n, m, {}};
            for (std::size_t i = 0; i < graphs.size(); ++i) {
                const std::string& code = level.codes[i];
                const SolverOutcome& out = outcomes[i];
                std::string decision = out.tag();
                bool add = false;
                if (out.refuted()) {
                    int refuted_parts = 0, unknown_parts = 0;
                    for (auto [u, v] : graphs[i].edges()) {
                        Graph part = graphs[i];
                        part.remove_edge(u, v);
                        const SolverOutcome sub = solve(part, config.embed);
                        refuted_parts += sub.refuted();
                        unknown_parts += sub.unknown();
                    }
                    if (refuted_parts > 0) {
                        result.flagged.push_back({code, "refuted, but so is a single-edge deletion"});
                        decision = "flagged";
                    } else {
                        add = true;
                        if (unknown_parts > 0)
                            result.flagged.push_back({code, "added; a single-edge deletion is undecided"});
                    }
                } else if (out.unknown()) {
                    if (adjudicated.count(code)) {
                        add = true;
                        decision = "adjudicated";
                        result.adjudicated.push_back(code);
                    } else {
                        result.flagged.push_back({code, std::get<Unknown>(out.result).reason});
                    }
                }
                if (add) {
                    family.push_back(graphs[i]);
                    ++result.added_per_order[n];
                } else {
                    kept.codes.push_back(code);
                }
                if (sink && (add || !out.embedded()))
                    sink({{"type", "derive"}, {"n", n}, {"m", m}, {"graph6", code}, {"decision", decision},
                          {"added", add}});
            }
            levels[{n, m}] = std::move(kept);
        }
    }
    return result;
}

}  // namespace udg
