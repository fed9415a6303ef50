#include "udg/subgraph.hpp"

#include <algorithm>
#include <array>

namespace udg {

Anchor Anchor::set_equal(VertexSet pattern, VertexSet host)
{
    return Anchor{members(pattern), members(host), Mode::set_equal};
}

Anchor Anchor::set_within(VertexSet pattern, VertexSet host)
{
    return Anchor{members(pattern), members(host), Mode::set_within};
}

namespace {

class Matcher {
public:
    Matcher(const Graph& host, const Graph& pattern, const std::optional<Anchor>& anchor,
            const EmbeddingVisitor& visit)
        : host_(host), pattern_(pattern), visit_(visit)
    {
        feasible_ = setup(anchor);
    }

    std::uint64_t run()
    {
        if (!feasible_) return 0;
        phi_.assign(pattern_.order(), -1);
        extend(0, 0);
        return found_;
    }

private:
    bool setup(const std::optional<Anchor>& anchor)
    {
        const int pn = pattern_.order();
        if (pn > host_.order() || pattern_.size() > host_.size()) return false;

        std::array<int, kMaxVertices> host_deg{};
        for (int h = 0; h < host_.order(); ++h) host_deg[h] = host_.degree(h);
        for (int p = 0; p < pn; ++p) {
            VertexSet ok = 0;
            for (int h = 0; h < host_.order(); ++h)
                if (host_deg[h] >= pattern_.degree(p)) ok |= bit(h);
            allowed_[p] = ok;
        }

        VertexSet anchored = 0;
        if (anchor) {
            const auto& a = *anchor;
            const VertexSet pat_set = make_set(a.pattern_vertices);
            const VertexSet host_set = make_set(a.host_vertices);
            anchored = pat_set;
            switch (a.mode) {
            case Anchor::Mode::exact:
                if (a.pattern_vertices.size() != a.host_vertices.size()) return false;
                for (std::size_t i = 0; i < a.pattern_vertices.size(); ++i)
                    allowed_[a.pattern_vertices[i]] &= bit(a.host_vertices[i]);
                break;
            case Anchor::Mode::set_equal:
                if (std::popcount(pat_set) != std::popcount(host_set)) return false;
                for (int p = 0; p < pn; ++p)
                    allowed_[p] &= (pat_set >> p) & 1U ? host_set : ~host_set;
                break;
            case Anchor::Mode::set_within:
                if (std::popcount(pat_set) > std::popcount(host_set)) return false;
                for (int p : a.pattern_vertices) allowed_[p] &= host_set;
                break;
            }
        }
        for (int p = 0; p < pn; ++p)
            if (allowed_[p] == 0) return false;

        // Anchored vertices first, then greedily the vertex with the most
        // already-placed neighbors (ties: higher degree, then lower id).
        VertexSet placed = 0;
        order_.clear();
        for (int step = 0; step < pn; ++step) {
            int best = -1;
            std::array<int, 3> best_key{};
            for (int p = 0; p < pn; ++p) {
                if ((placed >> p) & 1U) continue;
                const std::array<int, 3> key{static_cast<int>((anchored >> p) & 1U),
                                             std::popcount(pattern_.neighbors(p) & placed),
                                             pattern_.degree(p)};
                if (best < 0 || key > best_key) {
                    best = p;
                    best_key = key;
                }
            }
            order_.push_back(best);
            placed |= bit(best);
            back_[step] = pattern_.neighbors(best) & (placed & ~bit(best));
        }
        return true;
    }

    bool extend(int k, VertexSet used)
    {
        if (k == pattern_.order()) {
            ++found_;
            return visit_(phi_);
        }
        const int p = order_[k];
        VertexSet cand = allowed_[p] & ~used;
        for (int q : members(back_[k])) cand &= host_.neighbors(phi_[q]);
        while (cand != 0) {
            const int h = std::countr_zero(cand);
            cand &= cand - 1;
            phi_[p] = h;
            if (!extend(k + 1, used | bit(h))) return false;
        }
        phi_[p] = -1;
        return true;
    }

    const Graph& host_;
    const Graph& pattern_;
    const EmbeddingVisitor& visit_;
    bool feasible_ = false;
    std::array<VertexSet, kMaxVertices> allowed_{};
    std::array<VertexSet, kMaxVertices> back_{};
    std::vector<int> order_;
    std::vector<int> phi_;
    std::uint64_t found_ = 0;
};

}  // namespace

std::uint64_t for_each_embedding(const Graph& host, const Graph& pattern,
                                 const std::optional<Anchor>& anchor, const EmbeddingVisitor& visit)
{
    return Matcher(host, pattern, anchor, visit).run();
}

std::vector<std::vector<int>> subgraph_embeddings(const Graph& host, const Graph& pattern,
                                                  const std::optional<Anchor>& anchor, std::size_t limit)
{
    std::vector<std::vector<int>> out;
    for_each_embedding(host, pattern, anchor, [&](std::span<const int> phi) {
        out.emplace_back(phi.begin(), phi.end());
        return limit == 0 || out.size() < limit;
    });
    return out;
}

std::optional<std::vector<int>> find_embedding(const Graph& host, const Graph& pattern,
                                               const std::optional<Anchor>& anchor)
{
    auto found = subgraph_embeddings(host, pattern, anchor, 1);
    if (found.empty()) return std::nullopt;
    return std::move(found.front());
}

bool embeds(const Graph& host, const Graph& pattern, const std::optional<Anchor>& anchor)
{
    bool hit = false;
    for_each_embedding(host, pattern, anchor, [&](std::span<const int>) {
        hit = true;
        return false;
    });
    return hit;
}

bool contains_subgraph(const Graph& host, std::span<const Graph> family)
{
    return std::any_of(family.begin(), family.end(), [&](const Graph& f) { return embeds(host, f); });
}

}  // namespace udg
