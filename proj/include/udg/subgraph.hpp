#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

/// Restricts where selected pattern vertices may land in the host.
struct Anchor {
    enum class Mode {
        exact,      ///< pattern_vertices[i] maps to host_vertices[i]
        set_equal,  ///< image of pattern_vertices equals host_vertices as a set
        set_within  ///< image of pattern_vertices lies inside host_vertices
    };

    std::vector<int> pattern_vertices;
    std::vector<int> host_vertices;
    Mode mode = Mode::set_equal;

    static Anchor set_equal(VertexSet pattern, VertexSet host);
    static Anchor set_within(VertexSet pattern, VertexSet host);
};

/// Receives phi with phi[p] = host vertex of pattern vertex p; return false to stop.
using EmbeddingVisitor = std::function<bool(std::span<const int>)>;

/// Enumerates injective, edge-preserving maps pattern -> host (not induced).
/// Returns the number of embeddings visited.
std::uint64_t for_each_embedding(const Graph& host, const Graph& pattern,
                                 const std::optional<Anchor>& anchor, const EmbeddingVisitor& visit);

/// Collects embeddings, stopping after `limit` (0 = no limit).
std::vector<std::vector<int>> subgraph_embeddings(const Graph& host, const Graph& pattern,
                                                  const std::optional<Anchor>& anchor = std::nullopt,
                                                  std::size_t limit = 0);

bool embeds(const Graph& host, const Graph& pattern, const std::optional<Anchor>& anchor = std::nullopt);

std::optional<std::vector<int>> find_embedding(const Graph& host, const Graph& pattern,
                                               const std::optional<Anchor>& anchor = std::nullopt);

/// True iff some family member is a (not necessarily induced) subgraph of host.
bool contains_subgraph(const Graph& host, std::span<const Graph> family);

}  // namespace udg
