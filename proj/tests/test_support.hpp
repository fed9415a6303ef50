#pragma once

// Brute-force oracles and generators shared by the test binaries. Nothing here
// calls into the enumeration or solver code it is used to check.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "udg/graph.hpp"
#include "udg/canonical.hpp"
#include "udg/graph6.hpp"
#include "udg/subgraph.hpp"

namespace udg::testing {

inline Graph random_graph(std::mt19937_64& rng, int n, double p)
{
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n)
{
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

/// Every injective edge-preserving map, by trying all injections.
inline std::vector<std::vector<int>> brute_embeddings(const Graph& host, const Graph& pattern)
{
    std::vector<std::vector<int>> out;
    const int pn = pattern.order();
    const int hn = host.order();
    if (pn > hn) return out;
    std::vector<int> phi(pn, -1);
    std::vector<bool> used(hn, false);
    auto rec = [&](auto&& self, int p) -> void {
        if (p == pn) {
            for (auto [a, b] : pattern.edges())
                if (!host.has_edge(phi[a], phi[b])) return;
            out.push_back(phi);
            return;
        }
        for (int h = 0; h < hn; ++h) {
            if (used[h]) continue;
            used[h] = true;
            phi[p] = h;
            self(self, p + 1);
            used[h] = false;
        }
    };
    rec(rec, 0);
    return out;
}

inline bool brute_isomorphic(const Graph& a, const Graph& b)
{
    if (a.order() != b.order() || a.size() != b.size()) return false;
    std::vector<int> perm(a.order());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (a.permuted(perm) == b) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// All graphs on n vertices with m edges up to isomorphism, by brute force over
/// labeled edge subsets (n <= 6 only).
inline std::vector<Graph> brute_all_graphs(int n, int m)
{
    std::vector<Edge> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    std::vector<Graph> reps;
    const int k = static_cast<int>(slots.size());
    for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
        if (std::popcount(mask) != m) continue;
        Graph g(n);
        for (int i = 0; i < k; ++i)
            if ((mask >> i) & 1U) g.add_edge(slots[i].first, slots[i].second);
        bool dup = false;
        for (const Graph& r : reps)
            if (brute_isomorphic(r, g)) {
                dup = true;
                break;
            }
        if (!dup) reps.push_back(g);
    }
    return reps;
}

inline std::vector<std::pair<int, std::string>> densest_codes()
{
    std::ifstream in(std::string(UDG_DATA_DIR) + "/densest_graphs.txt");
    std::vector<std::pair<int, std::string>> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto space = line.find(' ');
        out.emplace_back(std::stoi(line.substr(0, space)), line.substr(space + 1));
    }
    return out;
}

/// Naive oracle: add a vertex to every F-free graph of the previous order in
/// every possible way, keep the F-free results, deduplicate by canonical code.
inline std::map<std::pair<int, int>, std::set<std::string>> naive_levels(int max_n, const std::vector<Graph>& family)
{
    std::map<std::pair<int, int>, std::set<std::string>> out;
    std::vector<Graph> previous{Graph(0)};
    out[{0, 0}].insert(emit_graph6(Graph(0)));
    for (int n = 1; n <= max_n; ++n) {
        std::set<std::string> seen;
        std::vector<Graph> current;
        for (const Graph& g : previous) {
            for (VertexSet nb = 0; nb < (VertexSet{1} << (n - 1)); ++nb) {
                const Graph h = g.with_vertex(nb);
                if (contains_subgraph(h, family)) continue;
                const std::string code = canonical_form(h).graph6;
                if (seen.insert(code).second) {
                    current.push_back(h);
                    out[{n, h.size()}].insert(code);
                }
            }
        }
        previous = std::move(current);
    }
    return out;
}

/// u(n) for n = 0..21, the densest unit-distance edge counts.
inline constexpr int kDensestU[] = {0, 0, 1, 3, 5, 7, 9, 12, 14, 18, 20, 23, 27, 30, 33, 37, 41, 43, 46, 50, 54, 57};

}  // namespace udg::testing
