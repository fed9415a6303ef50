#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "udg/constraint_system.hpp"

namespace udg {

// The four logic moves acting on a ConstraintSystem.
//
//   L0   every 4-cycle v1-v2-v3-v4 of a unit-distance drawing is a rhombus, so
//        f(v1) - f(v2) + f(v3) - f(v4) = 0.
//   L1a  two vertices equal on the whole kernel: no injective drawing.
//   L1b  two edges with f(e1) = omega f(e2) kernel-wide and |omega| != 1.
//   L2   an edge and a non-edge locked with |omega| = 1: the non-edge has unit
//        length too, so add it (and the rhombi it closes).
//   L3   three edges with a f(e1) + b f(e2) + c f(e3) = 0: for unit-length
//        edges one of two linear relations between f(e1), f(e2) must hold.

/// One row per distinct 4-cycle, traversed from its smallest vertex towards
/// the smaller of that vertex's two cycle neighbours.
std::vector<CVector> rhombus_constraints(const Graph& g);

/// Rows for the 4-cycles that use edge {u, v} (which must be present in g).
std::vector<CVector> rhombi_through_edge(const Graph& g, int u, int v);

/// G_0 := G with A_0 from rhombus_constraints.
ConstraintSystem initial_system(const Graph& g, const EmbedConfig& config);

/// f(first.a) - f(first.b) = omega * (f(second.a) - f(second.b)) on the kernel.
struct RatioRelation {
    Edge first;
    Edge second;
    Complex omega;
};

std::optional<Edge> find_vertex_collision(const ConstraintSystem& sys, const EmbedConfig& config);

std::optional<RatioRelation> find_nonunit_ratio(const ConstraintSystem& sys, const EmbedConfig& config);

struct ForcedEdge {
    Edge edge;  ///< existing edge
    Edge pair;  ///< non-adjacent pair forced to unit distance
    Complex omega;
    std::vector<CVector> new_rows;  ///< rhombi closed by the new edge
};

std::optional<ForcedEdge> find_forced_edge(const ConstraintSystem& sys, const EmbedConfig& config);

/// Adds the forced edge and its rhombus rows; the branch string gains a '0'.
void apply_forced_edge(ConstraintSystem& sys, const ForcedEdge& forced);

/// Outcome of the Heron-type case split for a x + b y + c z = 0 with
/// |x| = |y| = |z| = 1. Each child (p, q) encodes p x + q y = 0 where
///   p = (|a|^2 + |b|^2 - |c|^2 +- i sqrt(d2)) a,   q = 2 |a|^2 b,
///   d2 = (2|a||b|)^2 - (|a|^2 + |b|^2 - |c|^2)^2.
struct HeronBranch {
    Complex a, b, c;
    double d2 = 0.0;
    std::vector<std::pair<Complex, Complex>> children;

    bool refuted() const { return children.empty(); }
};

/// Two children when d2 > eps, one when |d2| <= eps (collinear case), none
/// when d2 < -eps. Throws std::domain_error if a or b vanishes.
HeronBranch heron_branch(Complex a, Complex b, Complex c, double eps);

struct DependentTriple {
    std::array<Edge, 3> edges;
    Complex a, b, c;  ///< normalized: max modulus 1, a real positive
};

/// Scales (a, b, c) so the largest modulus is 1 and a is real positive.
std::array<Complex, 3> normalize_triple(Complex a, Complex b, Complex c);

/// First edge triple (lexicographic over pairwise non-proportional edges)
/// whose differences span exactly two dimensions. Triples in `skip` are
/// ignored.
std::optional<DependentTriple> find_dependent_triple(const ConstraintSystem& sys, const EmbedConfig& config,
                                                     std::span<const std::array<Edge, 3>> skip = {});

}  // namespace udg
