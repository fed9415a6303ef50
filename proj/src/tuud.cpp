#include "udg/tuud.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "udg/graph6.hpp"
#include "udg/solver.hpp"
#include "udg/subgraph.hpp"

namespace udg {

CatalogError::CatalogError(int line, const std::string& what)
    : std::runtime_error("catalog line " + std::to_string(line) + ": " + what), line_(line)
{
}

TuudCatalog parse_catalog(const std::string& text, const std::string& source)
{
    TuudCatalog catalog{{}, source};
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream fields(line);
        std::string code;
        if (!(fields >> code) || code[0] == '#') continue;
        TuudEntry entry;
        try {
            entry.witness = parse_graph6(code);
        } catch (const Graph6Error& e) {
            throw CatalogError(line_no, e.what());
        }
        std::string extra;
        if (!(fields >> entry.p >> entry.q) || (fields >> extra && extra[0] != '#'))
            throw CatalogError(line_no, "expected 'graph6 p q'");
        const int n = entry.witness.order();
        if (entry.p < 0 || entry.q < 0 || entry.p >= n || entry.q >= n || entry.p == entry.q)
            throw CatalogError(line_no, "pair out of range");
        if (entry.witness.has_edge(entry.p, entry.q)) throw CatalogError(line_no, "distinguished pair is an edge");
        catalog.entries.push_back(std::move(entry));
    }
    return catalog;
}

TuudCatalog load_catalog(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_catalog(text.str(), path.string());
}

std::optional<ReducibleReport> is_reducible(const Graph& g, const TuudCatalog& catalog)
{
    for (std::size_t i = 0; i < catalog.entries.size(); ++i) {
        const TuudEntry& e = catalog.entries[i];
        if (e.witness.order() > g.order() || e.witness.size() > g.size()) continue;
        std::optional<ReducibleReport> hit;
        for_each_embedding(g, e.witness, std::nullopt, [&](std::span<const int> phi) {
            if (g.has_edge(phi[e.p], phi[e.q])) return true;
            hit = ReducibleReport{i, std::vector<int>(phi.begin(), phi.end())};
            return false;
        });
        if (hit) return hit;
    }
    return std::nullopt;
}

EntryValidation validate_entry(const TuudEntry& entry, const EmbedConfig& config)
{
    const Graph& g = entry.witness;
    if (g.has_edge(entry.p, entry.q)) return {EntryVerdict::invalid, "distinguished pair is an edge"};

    const SolverOutcome base = solve(g, config);
    if (base.refuted()) return {EntryVerdict::invalid, "witness is not a unit-distance graph"};
    if (base.unknown()) return {EntryVerdict::inconclusive, "solver gave no answer on the witness"};

    const SaturateResult sat = saturate(initial_system(g, config), config);
    if (sat.budget_exhausted) return {EntryVerdict::inconclusive, "branch budget"};
    std::mt19937_64 rng(config.rng_seed);
    for (const ConstraintSystem& leaf : sat.leaves) {
        if (leaf.graph().has_edge(entry.p, entry.q)) continue;
        const CompletionResult done = randomized_completion(leaf, config, rng);
        if (!done.embedding)
            return {EntryVerdict::inconclusive, "leaf " + leaf.branch() + " without forced pair: " + done.failure};
        const auto& f = done.embedding->coords;
        const double dist = std::abs(f[entry.p] - f[entry.q]);
        if (std::abs(dist - 1.0) > config.eps_res)
            return {EntryVerdict::invalid, "leaf " + leaf.branch() + " draws the pair at distance " +
                                               std::to_string(dist)};
        return {EntryVerdict::inconclusive, "leaf " + leaf.branch() + " keeps the pair at unit distance "
                                            "without forcing it"};
    }

    Graph closed = g;
    closed.add_edge(entry.p, entry.q);
    if (!solve(closed, config).embedded())
        return {EntryVerdict::invalid, "witness plus the distinguished edge does not embed"};
    return {EntryVerdict::valid, {}};
}

}  // namespace udg
