#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "udg/constraint_system.hpp"
#include "udg/graph.hpp"

namespace udg {

/// A unit-distance graph whose non-adjacent vertices p and q sit at unit
/// distance in every unit-distance drawing.
struct TuudEntry {
    Graph witness;
    int p = 0;
    int q = 0;
};

struct TuudCatalog {
    std::vector<TuudEntry> entries;
    std::string source;
};

class CatalogError : public std::runtime_error {
public:
    CatalogError(int line, const std::string& what);
    int line() const { return line_; }

private:
    int line_;
};

/// Lines "graph6 p q"; blank lines and '#' comments are skipped.
TuudCatalog load_catalog(const std::filesystem::path& path);
TuudCatalog parse_catalog(const std::string& text, const std::string& source = {});

struct ReducibleReport {
    std::size_t entry = 0;
    std::vector<int> embedding;  ///< witness vertex -> host vertex
};

/// First catalog entry whose witness embeds in g with the distinguished pair
/// landing on a non-edge.
std::optional<ReducibleReport> is_reducible(const Graph& g, const TuudCatalog& catalog);

enum class EntryVerdict { valid, invalid, inconclusive };

struct EntryValidation {
    EntryVerdict verdict = EntryVerdict::inconclusive;
    std::string detail;

    bool valid() const { return verdict == EntryVerdict::valid; }
};

/// (a) the witness embeds; (b) on every solver leaf the pair has become a
/// forced edge (a leaf whose drawing puts p and q elsewhere makes the entry
/// invalid, any other leaf makes it inconclusive); (c) the witness plus edge
/// {p, q} embeds.
EntryValidation validate_entry(const TuudEntry& entry, const EmbedConfig& config = {});

}  // namespace udg
