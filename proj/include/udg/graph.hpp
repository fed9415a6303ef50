#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace udg {

inline constexpr int kMaxVertices = 64;

/// Set of vertex ids packed into one machine word (bit v <=> vertex v).
using VertexSet = std::uint64_t;

inline constexpr VertexSet bit(int v) { return VertexSet{1} << v; }
inline constexpr VertexSet prefix_mask(int n) { return n >= 64 ? ~VertexSet{0} : bit(n) - 1; }
inline int count(VertexSet s) { return std::popcount(s); }
inline bool contains_all(VertexSet outer, VertexSet inner) { return (outer & inner) == inner; }

std::vector<int> members(VertexSet s);
VertexSet make_set(std::span<const int> vertices);

using Edge = std::pair<int, int>;

/// Simple undirected graph on at most 64 vertices with word-packed adjacency rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);
    Graph(int n, std::span<const Edge> edges);
    Graph(int n, std::initializer_list<Edge> edges)
        : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

    int order() const { return n_; }
    int size() const;

    bool has_edge(int u, int v) const { return (rows_[u] >> v) & 1U; }
    VertexSet neighbors(int v) const { return rows_[v]; }
    int degree(int v) const { return std::popcount(rows_[v]); }
    VertexSet all_vertices() const { return prefix_mask(n_); }

    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    /// δ(G); 0 for the empty vertex set.
    int min_degree() const;
    VertexSet min_degree_vertices() const;
    int max_degree() const;

    std::vector<Edge> edges() const;

    /// Vertex v of this graph becomes vertex perm[v] of the result.
    Graph permuted(std::span<const int> perm) const;
    /// Appends vertex n adjacent to exactly `neighborhood`.
    Graph with_vertex(VertexSet neighborhood) const;
    /// Deletes vertex v; higher ids shift down by one.
    Graph without_vertex(int v) const;
    Graph induced(VertexSet keep) const;

    bool is_connected() const;
    int component_count() const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    void check_vertex(int v) const;

    int n_ = 0;
    std::array<VertexSet, kMaxVertices> rows_{};
};

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph complete_bipartite(int a, int b);
Graph empty_graph(int n);
/// 7 vertices, 11 edges: two unit rhombi sharing an apex, far tips joined.
Graph moser_spindle();

}  // namespace udg
