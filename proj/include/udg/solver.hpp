#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "udg/constraint_system.hpp"
#include "udg/moves.hpp"

namespace udg {

enum class Move { rhombi, collision, nonunit_ratio, forced_edge, heron_split, heron_refute, leaf };

std::string to_string(Move m);

/// One applied move. `branch` is the branch string of the node it acted on.
/// vertices/params per move:
///   rhombi        -, {row count}
///   collision     {u, v}
///   nonunit_ratio {e1.a, e1.b, e2.a, e2.b}, {omega}
///   forced_edge   {e.a, e.b, pair.a, pair.b}, {omega}
///   heron_split   {e1.a, e1.b, e2.a, e2.b, e3.a, e3.b}, {a, b, c, p0, q0[, p1, q1]}
///   heron_refute  as heron_split, {a, b, c}
///   leaf          -, {kernel dimension}
struct TraceStep {
    std::string branch;
    Move move;
    std::vector<int> vertices;
    std::vector<Complex> params;
};

using Trace = std::vector<TraceStep>;

struct SaturateResult {
    std::vector<ConstraintSystem> leaves;  ///< discovery (depth-first) order
    Trace trace;
    int nodes = 0;
    bool budget_exhausted = false;

    bool refuted() const { return leaves.empty() && !budget_exhausted; }
};

/// Depth-first expansion: at each node apply L1a/L1b, else L2, else L3;
/// nodes where none applies become leaves.
SaturateResult saturate(ConstraintSystem root, const EmbedConfig& config);

struct Embedding {
    std::vector<Complex> coords;
    int random_constraints = 0;
    int attempts = 0;
};

struct CompletionResult {
    std::optional<Embedding> embedding;
    std::string failure;  ///< set when no embedding was produced
};

/// Pins the remaining degrees of freedom with random unit-modulus relations
/// between independent edges, then scales a generic kernel member so the
/// first edge has unit length and checks every edge.
CompletionResult randomized_completion(const ConstraintSystem& leaf, const EmbedConfig& config,
                                       std::mt19937_64& rng);

/// Levenberg-Marquardt on the squared edge lengths over the leaf's kernel
/// coordinates, restarted from random points up to max_retries times. The
/// result is accepted only if it passes verify_embedding at eps_res.
CompletionResult numeric_completion(const ConstraintSystem& leaf, const EmbedConfig& config, std::mt19937_64& rng);

/// Every edge within tol of unit length and all points pairwise farther than tol.
bool verify_embedding(const Graph& g, std::span<const Complex> coords, double tol);

/// One Gauss-Newton step on the squared edge-length residuals (minimum-norm update).
std::vector<Complex> newton_refine(const Graph& g, std::span<const Complex> coords);

struct Embedded {
    std::vector<Complex> coords;
    std::string branch;
    std::uint64_t seed = 0;
    int random_constraints = 0;
    bool numeric = false;  ///< found by numeric_completion
};

struct Refuted {};

struct Unknown {
    std::string reason;
};

struct SolverOutcome {
    std::variant<Embedded, Refuted, Unknown> result;
    Trace trace;
    int nodes = 0;
    int leaves = 0;

    bool embedded() const { return std::holds_alternative<Embedded>(result); }
    bool refuted() const { return std::holds_alternative<Refuted>(result); }
    bool unknown() const { return std::holds_alternative<Unknown>(result); }
    std::string tag() const;
};

SolverOutcome solve(const Graph& g, const EmbedConfig& config = {});

/// Re-applies a refutation trace without searching; true iff every recorded
/// move checks out and every branch it opens is closed.
bool replay_refutation(const Graph& g, const Trace& trace, const EmbedConfig& config = {});

/// For a Refuted outcome at the given config, re-solves at 1e-12 tolerances.
/// Returns true when both runs agree.
bool paranoid_agrees(const Graph& g, const EmbedConfig& config);

}  // namespace udg
