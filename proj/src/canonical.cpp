#include "udg/canonical.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "udg/graph6.hpp"

namespace udg {

namespace {

using Cells = std::vector<VertexSet>;

class Canonizer {
public:
    explicit Canonizer(const Graph& g) : g_(g), n_(g.order()) {}

    std::vector<int> run(std::span<const int> colors)
    {
        Cells cells;
        if (colors.empty()) {
            if (n_ > 0) cells.push_back(g_.all_vertices());
        } else {
            std::map<int, VertexSet> by_color;
            for (int v = 0; v < n_; ++v) by_color[colors[v]] |= bit(v);
            for (const auto& [color, set] : by_color) cells.push_back(set);
        }
        std::vector<int> prefix;
        search(std::move(cells), prefix);

        std::vector<int> perm(n_);
        for (int i = 0; i < n_; ++i) perm[best_lab_[i]] = i;
        return perm;
    }

private:
    void refine(Cells& cells) const
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t w = 0; w < cells.size(); ++w) {
                const VertexSet splitter = cells[w];
                for (std::size_t x = 0; x < cells.size(); ++x) {
                    if (std::popcount(cells[x]) == 1) continue;
                    std::array<int, kMaxVertices> hits{};
                    int lo = kMaxVertices;
                    int hi = -1;
                    const std::vector<int> verts = members(cells[x]);
                    for (int v : verts) {
                        hits[v] = std::popcount(g_.neighbors(v) & splitter);
                        lo = std::min(lo, hits[v]);
                        hi = std::max(hi, hits[v]);
                    }
                    if (lo == hi) continue;
                    Cells pieces;
                    for (int c = lo; c <= hi; ++c) {
                        VertexSet piece = 0;
                        for (int v : verts)
                            if (hits[v] == c) piece |= bit(v);
                        if (piece != 0) pieces.push_back(piece);
                    }
                    cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(x));
                    cells.insert(cells.begin() + static_cast<std::ptrdiff_t>(x), pieces.begin(),
                                 pieces.end());
                    x += pieces.size() - 1;
                    changed = true;
                }
            }
        }
    }

    // Union-find orbits of the group generated by the known automorphisms that
    // fix every vertex of `prefix`.
    std::vector<int> orbits(const std::vector<int>& prefix) const
    {
        std::vector<int> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const auto& aut : automorphisms_) {
            bool fixes = std::all_of(prefix.begin(), prefix.end(), [&](int v) { return aut[v] == v; });
            if (!fixes) continue;
            for (int v = 0; v < n_; ++v) parent[find(v)] = find(aut[v]);
        }
        for (int v = 0; v < n_; ++v) parent[v] = find(v);
        return parent;
    }

    void leaf(const Cells& cells)
    {
        std::vector<int> lab(n_);
        std::array<int, kMaxVertices> pos{};
        for (int i = 0; i < n_; ++i) {
            lab[i] = std::countr_zero(cells[i]);
            pos[lab[i]] = i;
        }
        std::vector<VertexSet> code(n_);
        for (int i = 0; i < n_; ++i) {
            VertexSet row = 0;
            for (int w : members(g_.neighbors(lab[i]))) row |= bit(pos[w]);
            code[i] = row;
        }
        if (!have_best_ || code > best_code_) {
            best_code_ = std::move(code);
            best_lab_ = std::move(lab);
            have_best_ = true;
            return;
        }
        if (code == best_code_ && automorphisms_.size() < kMaxAutomorphisms) {
            std::vector<int> aut(n_);
            for (int i = 0; i < n_; ++i) aut[best_lab_[i]] = lab[i];
            automorphisms_.push_back(std::move(aut));
        }
    }

    void search(Cells cells, std::vector<int>& prefix)
    {
        refine(cells);
        std::size_t target = cells.size();
        int target_size = kMaxVertices + 1;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const int s = std::popcount(cells[i]);
            if (s > 1 && s < target_size) {
                target = i;
                target_size = s;
            }
        }
        if (target == cells.size()) {
            leaf(cells);
            return;
        }

        VertexSet explored = 0;
        for (int v : members(cells[target])) {
            if (explored != 0 && !automorphisms_.empty()) {
                const std::vector<int> orbit = orbits(prefix);
                bool seen = false;
                for (int w : members(explored))
                    if (orbit[w] == orbit[v]) seen = true;
                if (seen) continue;
            }
            Cells child;
            child.reserve(cells.size() + 1);
            child.insert(child.end(), cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(target));
            child.push_back(bit(v));
            child.push_back(cells[target] & ~bit(v));
            child.insert(child.end(), cells.begin() + static_cast<std::ptrdiff_t>(target) + 1, cells.end());
            prefix.push_back(v);
            search(std::move(child), prefix);
            prefix.pop_back();
            explored |= bit(v);
        }
    }

    static constexpr std::size_t kMaxAutomorphisms = 512;

    const Graph& g_;
    int n_;
    bool have_best_ = false;
    std::vector<VertexSet> best_code_;
    std::vector<int> best_lab_;
    std::vector<std::vector<int>> automorphisms_;
};

}  // namespace

std::vector<int> canonical_labeling(const Graph& g, std::span<const int> colors)
{
    if (!colors.empty() && static_cast<int>(colors.size()) != g.order())
        throw std::invalid_argument("color vector length differs from graph order");
    return Canonizer(g).run(colors);
}

CanonicalCode canonical_form(const Graph& g)
{
    const std::vector<int> perm = canonical_labeling(g);
    return CanonicalCode{emit_graph6(g.permuted(perm))};
}

std::string colored_canonical_key(const Graph& g, std::span<const int> colors)
{
    const std::vector<int> perm = canonical_labeling(g, colors);
    std::string key = emit_graph6(g.permuted(perm));
    std::vector<int> relabeled(g.order());
    for (int v = 0; v < g.order(); ++v) relabeled[perm[v]] = colors[v];
    for (int c : relabeled) key += ":" + std::to_string(c);
    return key;
}

bool isomorphic(const Graph& a, const Graph& b)
{
    if (a.order() != b.order() || a.size() != b.size()) return false;
    return canonical_form(a) == canonical_form(b);
}

}  // namespace udg
