#pragma once

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

/// graph6 string of a graph relabeled by canonical_labeling. Two graphs share a
/// code iff they are isomorphic.
struct CanonicalCode {
    std::string graph6;

    friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

/// Canonical relabeling by equitable-partition refinement plus individualization
/// search, pruned with discovered automorphisms. Returns perm with vertex v
/// mapped to perm[v]. Optional `colors` (one int per vertex) restricts the
/// result to color-preserving isomorphisms; smaller colors come first.
std::vector<int> canonical_labeling(const Graph& g, std::span<const int> colors = {});

CanonicalCode canonical_form(const Graph& g);

/// Canonical code of a vertex-colored graph, with the color sequence appended
/// so that differently colored copies never collide.
std::string colored_canonical_key(const Graph& g, std::span<const int> colors);

bool isomorphic(const Graph& a, const Graph& b);

}  // namespace udg
