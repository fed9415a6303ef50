#include "udg/enumerate.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "udg/canonical.hpp"
#include "udg/graph6.hpp"
#include "udg/parallel.hpp"
#include "udg/subgraph.hpp"

namespace udg {

namespace {

constexpr std::size_t kChunk = 2048;

int pairs(int n) { return n * (n - 1) / 2; }

std::string level_stem(int n, int m) { return "U_" + std::to_string(n) + "_" + std::to_string(m); }

void sort_unique(std::vector<std::string>& codes)
{
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
}

}  // namespace

int schade_bound(int n, int m)
{
    if (n < 1) throw std::domain_error("schade_bound needs n >= 1");
    if (m < 0) throw std::domain_error("schade_bound needs m >= 0");
    const long long num = static_cast<long long>(m) * (n - 2);
    if (num <= 0) return 0;
    return static_cast<int>((num + n - 1) / n);
}

ForbiddenFamily load_forbidden(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open forbidden family " + path.string());
    ForbiddenFamily family{{}, path.string()};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto end = line.find_first_of(" \t\r", start);
        try {
            family.members.push_back(parse_graph6(line.substr(start, end - start)));
        } catch (const Graph6Error& e) {
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return family;
}

void save_forbidden(const ForbiddenFamily& family, const std::filesystem::path& path)
{
    std::ostringstream out;
    out << "# minimal non-unit-distance graphs, canonical graph6, one per line\n";
    for (const Graph& g : family.members) out << canonical_form(g).graph6 << '\n';
    write_file_atomic(path, out.str());
}

std::vector<std::string> family_violations(const ForbiddenFamily& family)
{
    std::vector<std::string> out;
    const auto& fs = family.members;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = 0; j < fs.size(); ++j) {
            if (i == j) continue;
            if (isomorphic(fs[i], fs[j])) {
                if (i < j)
                    out.push_back("members " + std::to_string(i) + " and " + std::to_string(j) + " are isomorphic");
            } else if (embeds(fs[i], fs[j])) {
                out.push_back("member " + std::to_string(i) + " (" + emit_graph6(fs[i]) + ") contains member " +
                              std::to_string(j) + " (" + emit_graph6(fs[j]) + ")");
            }
        }
    }
    return out;
}

std::vector<RootedForbidden> derive_rooted_family(const std::vector<Graph>& members)
{
    std::vector<RootedForbidden> out;
    for (const Graph& f : members) {
        for (int v = 0; v < f.order(); ++v) {
            if (f.degree(v) == 0) continue;
            // Vertices above v shift down by one in F - v.
            const VertexSet nb = f.neighbors(v);
            const VertexSet low = nb & prefix_mask(v);
            const VertexSet high = (nb & ~prefix_mask(v + 1)) >> 1;
            out.push_back({f.without_vertex(v), low | high});
        }
    }
    return out;
}

std::vector<RootedForbidden> distinct_rooted(const std::vector<RootedForbidden>& rooted)
{
    std::set<std::string> seen;
    std::vector<RootedForbidden> out;
    for (const RootedForbidden& r : rooted) {
        std::vector<int> colors(r.reduced.order());
        for (int v = 0; v < r.reduced.order(); ++v) colors[v] = (r.root_neighborhood >> v) & 1U;
        if (seen.insert(colored_canonical_key(r.reduced, colors)).second) out.push_back(r);
    }
    return out;
}

bool BadNeighborhoods::is_bad(VertexSet neighborhood) const
{
    for (VertexSet t : minimal_sets)
        if ((t & ~neighborhood) == 0) return true;
    return false;
}

namespace {

// Calls visit(T) for each k-subset T of `pool` (plus `base`) in lexicographic order.
template <typename Visit>
void for_each_subset(const std::vector<int>& pool, int k, VertexSet base, Visit&& visit)
{
    auto rec = [&](auto&& self, int depth, std::size_t from, VertexSet acc) -> void {
        if (depth == k) {
            visit(acc);
            return;
        }
        for (std::size_t i = from; i + (k - depth) <= pool.size(); ++i) self(self, depth + 1, i + 1, acc | bit(pool[i]));
    };
    rec(rec, 0, 0, base);
}

}  // namespace

BadNeighborhoods bad_neighborhoods(const Graph& host, const std::vector<RootedForbidden>& rooted, int max_size,
                                   VertexSet required)
{
    BadNeighborhoods out;
    const int n = host.order();
    max_size = std::min(max_size, n);
    const int base = count(required);
    std::vector<int> pool;
    for (int v = 0; v < n; ++v)
        if (!((required >> v) & 1U)) pool.push_back(v);

    for (int k = std::max(base, 1); k <= max_size; ++k) {
        std::vector<const RootedForbidden*> active;
        for (const RootedForbidden& r : rooted) {
            const int s = count(r.root_neighborhood);
            if (r.reduced.order() > n || s > k) continue;
            if (required == 0 && s != k) continue;
            active.push_back(&r);
        }
        if (active.empty()) continue;
        for_each_subset(pool, k - base, required, [&](VertexSet t) {
            if (out.is_bad(t)) return;
            for (const RootedForbidden* r : active) {
                const Anchor anchor = required == 0 ? Anchor::set_equal(r->root_neighborhood, t)
                                                    : Anchor::set_within(r->root_neighborhood, t);
                if (embeds(host, r->reduced, anchor)) {
                    out.minimal_sets.push_back(t);
                    return;
                }
            }
        });
    }
    return out;
}

void for_each_extension(const Graph& host, int d, const BadNeighborhoods& bad, VertexSet required,
                        const std::function<bool(VertexSet)>& visit)
{
    const int n = host.order();
    if (d < count(required) || d > n) return;
    bool stop = false;
    auto rec = [&](auto&& self, int v, int left, VertexSet acc) -> void {
        if (stop) return;
        if (left == 0) {
            if ((required & ~acc) == 0 && !visit(acc)) stop = true;
            return;
        }
        if (n - v < left) return;
        if (!bad.is_bad(acc | bit(v))) self(self, v + 1, left - 1, acc | bit(v));
        if (!((required >> v) & 1U)) self(self, v + 1, left, acc);
    };
    if (bad.is_bad(0)) return;
    rec(rec, 0, d, 0);
}

std::vector<Graph> extend(const Graph& host, int d, const BadNeighborhoods& bad, VertexSet required)
{
    std::vector<Graph> out;
    for_each_extension(host, d, bad, required, [&](VertexSet nb) {
        out.push_back(host.with_vertex(nb));
        return true;
    });
    return out;
}

std::vector<Graph> Level::graphs() const
{
    std::vector<Graph> out;
    out.reserve(codes.size());
    for (const std::string& c : codes) out.push_back(parse_graph6(c));
    return out;
}

MissingLevelError::MissingLevelError(int n, int m)
    : std::runtime_error("missing level (" + std::to_string(n) + ", " + std::to_string(m) + ")"), n_(n), m_(m)
{
}

BudgetExceededError::BudgetExceededError(std::vector<std::pair<int, int>> completed)
    : std::runtime_error("enumeration budget exhausted"), completed_(std::move(completed))
{
}

Level build_level(int n, int m, const LevelMap& lower, const std::vector<Graph>& family,
                  const EnumerateConfig& config, const ProgressHook& progress,
                  const std::optional<ResumePoint>& resume, std::uint64_t* hosts_seen)
{
    Level out{n, m, {}};
    if (n < 0 || m < 0) throw std::invalid_argument("negative level index");
    if (m > pairs(n)) return out;
    if (n == 0) {
        out.codes.push_back(emit_graph6(Graph(0)));
        return out;
    }

    const std::vector<RootedForbidden> rooted = distinct_rooted(derive_rooted_family(family));
    int max_s = 0;
    for (const RootedForbidden& r : rooted) max_s = std::max(max_s, count(r.root_neighborhood));

    int top = std::min(m, pairs(n - 1));
    std::size_t first_host = 0;
    if (resume) {
        out.codes = resume->codes;
        top = resume->m_prime;
        first_host = resume->next_host;
    }
    const int bottom = schade_bound(n, m);
    for (int mp = top; mp >= bottom; --mp) {
        const int d = m - mp;
        if (d > n - 1) continue;
        const auto it = lower.find({n - 1, mp});
        if (it == lower.end()) throw MissingLevelError(n - 1, mp);
        const std::vector<std::string>& hosts = it->second.codes;

        for (std::size_t start = mp == top ? first_host : 0; start < hosts.size(); start += kChunk) {
            const std::size_t stop = std::min(hosts.size(), start + kChunk);
            if (hosts_seen) {
                *hosts_seen += stop - start;
                if (config.max_hosts && *hosts_seen > config.max_hosts) throw BudgetExceededError({});
            }
            const int workers = std::max(config.jobs, 1);
            std::vector<std::vector<std::string>> found(workers);
            parallel_for(stop - start, workers, [&](std::size_t i, int w) {
                const Graph host = parse_graph6(hosts[start + i]);
                VertexSet required = 0;
                if (config.prune && host.order() > 0) {
                    const int delta = host.min_degree();
                    if (delta <= d - 2) return;
                    if (delta == d - 1) {
                        required = host.min_degree_vertices();
                        if (count(required) > d) return;
                    }
                }
                const BadNeighborhoods bad = bad_neighborhoods(host, rooted, std::min(max_s, d), required);
                for_each_extension(host, d, bad, required, [&](VertexSet nb) {
                    found[w].push_back(canonical_form(host.with_vertex(nb)).graph6);
                    return true;
                });
            });
            for (auto& part : found) out.codes.insert(out.codes.end(), part.begin(), part.end());
            sort_unique(out.codes);
            if (progress) progress(n, m, mp, stop, out.codes);
        }
    }
    sort_unique(out.codes);
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

namespace {

std::string family_fingerprint(const std::vector<Graph>& family)
{
    std::vector<std::string> codes;
    for (const Graph& g : family) codes.push_back(canonical_form(g).graph6);
    std::sort(codes.begin(), codes.end());
    std::string joined;
    for (const auto& c : codes) joined += c + "\n";
    // FNV-1a, stable across platforms unlike std::hash.
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : joined) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

LevelStore::LevelStore(std::vector<Graph> family, EnumerateConfig config, std::optional<std::filesystem::path> checkpoint)
    : family_(std::move(family)), config_(config), dir_(std::move(checkpoint))
{
    if (dir_) std::filesystem::create_directories(*dir_);
}

std::optional<Level> LevelStore::load_sealed(int n, int m) const
{
    if (!dir_) return std::nullopt;
    const auto meta_path = *dir_ / (level_stem(n, m) + ".json");
    const auto codes_path = *dir_ / (level_stem(n, m) + ".g6");
    if (!std::filesystem::exists(meta_path) || !std::filesystem::exists(codes_path)) return std::nullopt;
    const auto meta = nlohmann::json::parse(read_file(meta_path));
    if (meta.value("family", "") != family_fingerprint(family_))
        throw std::runtime_error("checkpoint " + meta_path.string() + " was built for a different forbidden family");
    if (!meta.value("complete", false)) return std::nullopt;
    Level level{n, m, {}};
    std::istringstream in(read_file(codes_path));
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) level.codes.push_back(line);
    if (level.codes.size() != meta.at("count").get<std::size_t>())
        throw std::runtime_error("checkpoint " + codes_path.string() + " does not match its count");
    return level;
}

std::optional<ResumePoint> LevelStore::load_partial(int n, int m) const
{
    if (!dir_) return std::nullopt;
    const auto path = *dir_ / (level_stem(n, m) + ".partial.json");
    if (!std::filesystem::exists(path)) return std::nullopt;
    const auto j = nlohmann::json::parse(read_file(path));
    if (j.value("family", "") != family_fingerprint(family_)) return std::nullopt;
    return ResumePoint{j.at("m_prime").get<int>(), j.at("next_host").get<std::size_t>(),
                       j.at("codes").get<std::vector<std::string>>()};
}

void LevelStore::write_partial(int n, int m, int m_prime, std::size_t next_host,
                               const std::vector<std::string>& codes) const
{
    if (!dir_) return;
    nlohmann::json j{{"n", n},
                     {"m", m},
                     {"m_prime", m_prime},
                     {"next_host", next_host},
                     {"family", family_fingerprint(family_)},
                     {"codes", codes}};
    write_file_atomic(*dir_ / (level_stem(n, m) + ".partial.json"), j.dump());
}

const Level& LevelStore::seal(Level level)
{
    const int n = level.n, m = level.m;
    if (dir_) {
        std::string body;
        for (const auto& c : level.codes) body += c + "\n";
        write_file_atomic(*dir_ / (level_stem(n, m) + ".g6"), body);
        nlohmann::json meta{{"n", n},
                            {"m", m},
                            {"count", level.codes.size()},
                            {"complete", true},
                            {"family", family_fingerprint(family_)}};
        write_file_atomic(*dir_ / (level_stem(n, m) + ".json"), meta.dump(2) + "\n");
        std::filesystem::remove(*dir_ / (level_stem(n, m) + ".partial.json"));
    }
    return levels_[{n, m}] = std::move(level);
}

const Level& LevelStore::level(int n, int m)
{
    if (auto it = levels_.find({n, m}); it != levels_.end()) return it->second;
    if (n < 0 || m < 0) throw std::invalid_argument("negative level index");
    if (m > pairs(n) || n == 0) {
        Level trivial{n, m, {}};
        if (n == 0 && m == 0) trivial.codes.push_back(emit_graph6(Graph(0)));
        return levels_[{n, m}] = std::move(trivial);
    }
    if (auto sealed = load_sealed(n, m)) return levels_[{n, m}] = std::move(*sealed);

    const int below = max_density(n - 1).first;
    for (int mp = std::min(m, pairs(n - 1)); mp >= schade_bound(n, m); --mp) {
        if (mp > below)
            levels_.try_emplace({n - 1, mp}, Level{n - 1, mp, {}});
        else
            level(n - 1, mp);
    }

    ProgressHook hook;
    if (dir_) hook = [this](int hn, int hm, int mp, std::size_t next, const std::vector<std::string>& codes) {
        write_partial(hn, hm, mp, next, codes);
    };
    Level built;
    try {
        built = build_level(n, m, levels_, family_, config_, hook, load_partial(n, m), &hosts_seen_);
    } catch (const BudgetExceededError&) {
        std::vector<std::pair<int, int>> done;
        for (const auto& [key, lvl] : levels_) done.push_back(key);
        throw BudgetExceededError(std::move(done));
    }
    return seal(std::move(built));
}

std::pair<int, const Level*> LevelStore::max_density(int n)
{
    if (n < 0) throw std::invalid_argument("negative vertex count");
    if (auto it = ubar_.find(n); it != ubar_.end()) return {it->second, &level(n, it->second)};
    if (n <= 1) {
        ubar_[n] = 0;
        return {0, &level(n, 0)};
    }
    const int below = max_density(n - 1).first;
    int upper = pairs(n);
    while (upper > 0 && schade_bound(n, upper) > below) --upper;
    for (int m = upper; m >= 0; --m) {
        const Level& lvl = level(n, m);
        if (!lvl.empty()) {
            ubar_[n] = m;
            return {m, &lvl};
        }
    }
    ubar_[n] = 0;
    return {0, &level(n, 0)};
}

std::pair<int, Level> max_density(int n, const std::vector<Graph>& family, const EnumerateConfig& config)
{
    LevelStore store(family, config);
    auto [u, level] = store.max_density(n);
    return {u, *level};
}

}  // namespace udg
