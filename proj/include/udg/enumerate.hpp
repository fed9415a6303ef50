#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "udg/graph.hpp"

namespace udg {

/// ceil(m (n - 2) / n): Schade's lower bound on the edge count of the densest
/// induced subgraph on n - 1 vertices. Throws std::domain_error for n < 1.
int schade_bound(int n, int m);

struct ForbiddenFamily {
    std::vector<Graph> members;
    std::string source;
};

/// One graph6 code per line; '#' starts a comment.
ForbiddenFamily load_forbidden(const std::filesystem::path& path);
void save_forbidden(const ForbiddenFamily& family, const std::filesystem::path& path);

/// Empty if members are pairwise non-isomorphic and none contains another;
/// otherwise one message per violation.
std::vector<std::string> family_violations(const ForbiddenFamily& family);

/// (F - v, S = N(v)) for a family member F and vertex v of positive degree.
struct RootedForbidden {
    Graph reduced;
    VertexSet root_neighborhood = 0;
};

std::vector<RootedForbidden> derive_rooted_family(const std::vector<Graph>& members);

/// Drops rooted patterns that are isomorphic to an earlier one as graphs with
/// a marked vertex subset.
std::vector<RootedForbidden> distinct_rooted(const std::vector<RootedForbidden>& rooted);

/// Minimal vertex sets T of a host such that a new vertex adjacent to all of
/// T closes a copy of some family member.
struct BadNeighborhoods {
    std::vector<VertexSet> minimal_sets;

    bool is_bad(VertexSet neighborhood) const;
};

/// Minimal T with |T| <= max_size, found by increasing |T|. With `required`
/// nonzero only supersets of `required` are considered, and T is reported
/// when it contains the root image of some pattern; those sets decide
/// badness correctly for every neighborhood that contains `required`.
BadNeighborhoods bad_neighborhoods(const Graph& host, const std::vector<RootedForbidden>& rooted, int max_size,
                                   VertexSet required = 0);

/// Every d-subset N of the host's vertices with N containing `required` and no
/// bad set, in lexicographic order of the sorted vertex list. The visitor gets
/// N and may return false to stop.
void for_each_extension(const Graph& host, int d, const BadNeighborhoods& bad, VertexSet required,
                        const std::function<bool(VertexSet)>& visit);

std::vector<Graph> extend(const Graph& host, int d, const BadNeighborhoods& bad, VertexSet required = 0);

/// Canonical graph6 codes of all F-free graphs with n vertices and m edges.
struct Level {
    int n = 0;
    int m = 0;
    std::vector<std::string> codes;  ///< sorted, unique

    std::size_t size() const { return codes.size(); }
    bool empty() const { return codes.empty(); }
    std::vector<Graph> graphs() const;
};

struct EnumerateConfig {
    bool prune = true;
    int jobs = 1;
    /// Upper bound on host graphs processed by one LevelStore (0 = unlimited).
    std::uint64_t max_hosts = 0;
};

class MissingLevelError : public std::runtime_error {
public:
    MissingLevelError(int n, int m);
    int n() const { return n_; }
    int m() const { return m_; }

private:
    int n_;
    int m_;
};

class BudgetExceededError : public std::runtime_error {
public:
    explicit BudgetExceededError(std::vector<std::pair<int, int>> completed);
    /// (n, m) of every level sealed before the budget ran out.
    const std::vector<std::pair<int, int>>& completed() const { return completed_; }

private:
    std::vector<std::pair<int, int>> completed_;
};

using LevelMap = std::map<std::pair<int, int>, Level>;

/// Called after each finished host chunk with the level being built, the m'
/// of the chunk, the index one past its last host, and the codes found so far.
using ProgressHook = std::function<void(int n, int m, int m_prime, std::size_t next_host,
                                        const std::vector<std::string>& codes)>;

struct ResumePoint {
    int m_prime = 0;
    std::size_t next_host = 0;
    std::vector<std::string> codes;
};

/// Level (n, m) from the levels (n - 1, m') with schade_bound(n, m) <= m' <= m,
/// taken in decreasing m'. Throws MissingLevelError if one is absent from
/// `lower`. Hosts are consumed in chunks; `resume` skips work already done.
Level build_level(int n, int m, const LevelMap& lower, const std::vector<Graph>& family,
                  const EnumerateConfig& config, const ProgressHook& progress = {},
                  const std::optional<ResumePoint>& resume = std::nullopt, std::uint64_t* hosts_seen = nullptr);

/// Lazily built, memoized levels and maximum densities for one family, with an
/// optional checkpoint directory holding U_{n}_{m}.g6 plus a JSON sidecar.
class LevelStore {
public:
    LevelStore(std::vector<Graph> family, EnumerateConfig config,
               std::optional<std::filesystem::path> checkpoint = std::nullopt);

    const Level& level(int n, int m);
    /// ubar(n) and the level at that density.
    std::pair<int, const Level*> max_density(int n);

    const std::vector<Graph>& family() const { return family_; }
    std::uint64_t hosts_seen() const { return hosts_seen_; }

private:
    const Level& seal(Level level);
    std::optional<Level> load_sealed(int n, int m) const;
    std::optional<ResumePoint> load_partial(int n, int m) const;
    void write_partial(int n, int m, int m_prime, std::size_t next_host,
                       const std::vector<std::string>& codes) const;

    std::vector<Graph> family_;
    EnumerateConfig config_;
    std::optional<std::filesystem::path> dir_;
    LevelMap levels_;
    std::map<int, int> ubar_;
    std::uint64_t hosts_seen_ = 0;
};

std::pair<int, Level> max_density(int n, const std::vector<Graph>& family, const EnumerateConfig& config);

/// Atomic text-file write: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace udg
