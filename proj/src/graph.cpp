#include "udg/graph.hpp"

#include <algorithm>

namespace udg {

std::vector<int> members(VertexSet s)
{
    std::vector<int> out;
    out.reserve(std::popcount(s));
    while (s != 0) {
        out.push_back(std::countr_zero(s));
        s &= s - 1;
    }
    return out;
}

VertexSet make_set(std::span<const int> vertices)
{
    VertexSet s = 0;
    for (int v : vertices) s |= bit(v);
    return s;
}

Graph::Graph(int n) : n_(n)
{
    if (n < 0 || n > kMaxVertices)
        throw std::invalid_argument("graph order must be in [0, 64], got " + std::to_string(n));
}

Graph::Graph(int n, std::span<const Edge> edges) : Graph(n)
{
    for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(int v) const
{
    if (v < 0 || v >= n_)
        throw std::out_of_range("vertex " + std::to_string(v) + " out of range for order " +
                                std::to_string(n_));
}

int Graph::size() const
{
    int twice = 0;
    for (int v = 0; v < n_; ++v) twice += std::popcount(rows_[v]);
    return twice / 2;
}

void Graph::add_edge(int u, int v)
{
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    rows_[u] |= bit(v);
    rows_[v] |= bit(u);
}

void Graph::remove_edge(int u, int v)
{
    check_vertex(u);
    check_vertex(v);
    rows_[u] &= ~bit(v);
    rows_[v] &= ~bit(u);
}

int Graph::min_degree() const
{
    if (n_ == 0) return 0;
    int best = kMaxVertices;
    for (int v = 0; v < n_; ++v) best = std::min(best, degree(v));
    return best;
}

VertexSet Graph::min_degree_vertices() const
{
    const int d = min_degree();
    VertexSet s = 0;
    for (int v = 0; v < n_; ++v)
        if (degree(v) == d) s |= bit(v);
    return s;
}

int Graph::max_degree() const
{
    int best = 0;
    for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
    return best;
}

std::vector<Edge> Graph::edges() const
{
    std::vector<Edge> out;
    for (int u = 0; u < n_; ++u)
        for (int v : members(rows_[u] & ~prefix_mask(u + 1))) out.emplace_back(u, v);
    return out;
}

Graph Graph::permuted(std::span<const int> perm) const
{
    Graph g(n_);
    for (int u = 0; u < n_; ++u) {
        VertexSet row = 0;
        for (int v : members(rows_[u])) row |= bit(perm[v]);
        g.rows_[perm[u]] = row;
    }
    return g;
}

Graph Graph::with_vertex(VertexSet neighborhood) const
{
    if (n_ >= kMaxVertices) throw std::length_error("graph already has 64 vertices");
    if ((neighborhood & ~all_vertices()) != 0)
        throw std::invalid_argument("neighborhood refers to vertices outside the graph");
    Graph g = *this;
    g.n_ = n_ + 1;
    g.rows_[n_] = neighborhood;
    for (int v : members(neighborhood)) g.rows_[v] |= bit(n_);
    return g;
}

Graph Graph::without_vertex(int v) const
{
    check_vertex(v);
    return induced(all_vertices() & ~bit(v));
}

Graph Graph::induced(VertexSet keep) const
{
    const std::vector<int> kept = members(keep & all_vertices());
    std::array<int, kMaxVertices> index{};
    for (std::size_t i = 0; i < kept.size(); ++i) index[kept[i]] = static_cast<int>(i);
    Graph g(static_cast<int>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i) {
        VertexSet row = 0;
        for (int w : members(rows_[kept[i]] & keep)) row |= bit(index[w]);
        g.rows_[i] = row;
    }
    return g;
}

int Graph::component_count() const
{
    VertexSet unseen = all_vertices();
    int components = 0;
    while (unseen != 0) {
        ++components;
        VertexSet frontier = unseen & (~unseen + 1);
        unseen &= ~frontier;
        while (frontier != 0) {
            VertexSet next = 0;
            for (int v : members(frontier)) next |= rows_[v];
            frontier = next & unseen;
            unseen &= ~frontier;
        }
    }
    return components;
}

bool Graph::is_connected() const { return component_count() <= 1; }

bool operator==(const Graph& a, const Graph& b)
{
    if (a.n_ != b.n_) return false;
    return std::equal(a.rows_.begin(), a.rows_.begin() + a.n_, b.rows_.begin());
}

Graph complete_graph(int n)
{
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph cycle_graph(int n)
{
    Graph g(n);
    for (int v = 0; v < n && n >= 3; ++v) g.add_edge(v, (v + 1) % n);
    return g;
}

Graph path_graph(int n)
{
    Graph g(n);
    for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
    return g;
}

Graph complete_bipartite(int a, int b)
{
    Graph g(a + b);
    for (int u = 0; u < a; ++u)
        for (int v = a; v < a + b; ++v) g.add_edge(u, v);
    return g;
}

Graph empty_graph(int n) { return Graph(n); }

Graph moser_spindle()
{
    // Apex 0; rhombus 0-1-2-3 with short diagonal 1-3, rhombus 0-4-5-6 with
    // short diagonal 4-6; tips 2 and 5 are unit distance apart.
    return Graph(7, {{0, 1}, {0, 3}, {1, 3}, {1, 2}, {2, 3},
                     {0, 4}, {0, 6}, {4, 6}, {4, 5}, {5, 6},
                     {2, 5}});
}

}  // namespace udg
