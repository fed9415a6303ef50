#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "udg/constraint_system.hpp"
#include "udg/enumerate.hpp"
#include "udg/tuud.hpp"

namespace udg {

/// One row of the filtering table: densest edge count and how many graphs
/// survive the forbidden-subgraph, totally-unfaithful and embedding stages.
struct Table1Row {
    int n = 0;
    int u = 0;
    long long f_free = 0;
    long long tuud_free = 0;
    long long embedded = 0;
};

/// Published rows for n = 0..21.
const std::vector<Table1Row>& expected_table1();

struct RowReport {
    Table1Row observed;
    long long unknown = 0;  ///< survivors the solver could not decide
    double seconds = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::string> mismatches;  ///< empty when the row matches

    bool matches() const { return mismatches.empty(); }
};

struct RunReport {
    std::vector<RowReport> rows;
    bool partial = false;
    std::string error;  ///< set when the run stopped early

    bool all_match() const;
};

struct RunConfig {
    int max_n = 12;
    EnumerateConfig enumerate;
    EmbedConfig embed;
    std::optional<std::filesystem::path> checkpoint;
};

/// Receives one JSON object per graph decision and per finished row.
using RecordSink = std::function<void(const nlohmann::json&)>;

/// For each n <= max_n: ubar(n) and its level, the totally-unfaithful filter,
/// then the solver on every survivor. Rows are compared with
/// expected_table1(); a budget error yields a partial report.
RunReport reproduce_table1(const std::vector<Graph>& family, const TuudCatalog& catalog, const RunConfig& config,
                           const RecordSink& sink = {});

struct FlaggedGraph {
    std::string graph6;
    std::string reason;
};

struct DeriveResult {
    ForbiddenFamily family;
    std::vector<int> added_per_order;  ///< index = vertex count
    std::vector<FlaggedGraph> flagged;  ///< needs a human decision
    std::vector<std::string> adjudicated;  ///< flagged graphs taken from the adjudication list
};

struct DeriveConfig {
    int max_vertices = 7;
    EmbedConfig embed;
    int jobs = 1;
    /// Graphs (any labeling) to count as forbidden when the solver cannot
    /// decide them.
    std::vector<Graph> adjudicated_forbidden;
};

/// Grows the family order by order and edge count by edge count: every graph
/// free of the current family is solved; refuted graphs whose single-edge
/// deletions all embed are added. Undecided graphs are flagged and kept.
DeriveResult derive_forbidden(const DeriveConfig& config, const RecordSink& sink = {});

}  // namespace udg
