#include "udg/moves.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace udg {

namespace {

CVector rhombus_row(int n, int v1, int v2, int v3, int v4)
{
    CVector row = CVector::Zero(n);
    row(v1) += 1.0;
    row(v2) -= 1.0;
    row(v3) += 1.0;
    row(v4) -= 1.0;
    return row;
}

bool unit_modulus(Complex omega, const EmbedConfig& config)
{
    return std::abs(std::abs(omega) - 1.0) <= config.eps_mod;
}

}  // namespace

std::vector<CVector> rhombus_constraints(const Graph& g)
{
    const int n = g.order();
    std::vector<CVector> rows;
    for (int v1 = 0; v1 < n; ++v1) {
        const VertexSet later = ~prefix_mask(v1 + 1);
        const std::vector<int> nbrs = members(g.neighbors(v1) & later);
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
                const int v2 = nbrs[i];
                const int v4 = nbrs[j];
                for (int v3 : members(g.neighbors(v2) & g.neighbors(v4) & later))
                    rows.push_back(rhombus_row(n, v1, v2, v3, v4));
            }
        }
    }
    return rows;
}

std::vector<CVector> rhombi_through_edge(const Graph& g, int u, int v)
{
    std::vector<CVector> rows;
    for (int x : members(g.neighbors(v) & ~bit(u)))
        for (int y : members(g.neighbors(x) & g.neighbors(u) & ~bit(v)))
            rows.push_back(rhombus_row(g.order(), u, v, x, y));
    return rows;
}

ConstraintSystem initial_system(const Graph& g, const EmbedConfig& config)
{
    ConstraintSystem sys(g, config.eps_rank);
    for (const CVector& row : rhombus_constraints(g)) sys.add_row(row);
    return sys;
}

std::optional<Edge> find_vertex_collision(const ConstraintSystem& sys, const EmbedConfig& config)
{
    const int n = sys.order();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (sys.difference(u, v).norm() <= config.eps_res) return Edge{u, v};
    return std::nullopt;
}

std::optional<RatioRelation> find_nonunit_ratio(const ConstraintSystem& sys, const EmbedConfig& config)
{
    const std::vector<Edge> edges = sys.graph().edges();
    std::vector<CVector> diffs;
    diffs.reserve(edges.size());
    for (auto [u, v] : edges) diffs.push_back(sys.difference(u, v));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        for (std::size_t j = i + 1; j < edges.size(); ++j) {
            auto omega = proportionality(diffs[i], diffs[j], config.eps_rank);
            if (omega && !unit_modulus(*omega, config)) return RatioRelation{edges[i], edges[j], *omega};
        }
    }
    return std::nullopt;
}

std::optional<ForcedEdge> find_forced_edge(const ConstraintSystem& sys, const EmbedConfig& config)
{
    const Graph& g = sys.graph();
    const int n = g.order();
    const std::vector<Edge> edges = g.edges();
    std::vector<CVector> diffs;
    diffs.reserve(edges.size());
    for (auto [u, v] : edges) diffs.push_back(sys.difference(u, v));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (g.has_edge(u, v)) continue;
            const CVector pair = sys.difference(u, v);
            for (std::size_t i = 0; i < edges.size(); ++i) {
                auto omega = proportionality(diffs[i], pair, config.eps_rank);
                if (!omega || !unit_modulus(*omega, config)) continue;
                Graph grown = g;
                grown.add_edge(u, v);
                return ForcedEdge{edges[i], Edge{u, v}, *omega, rhombi_through_edge(grown, u, v)};
            }
        }
    }
    return std::nullopt;
}

void apply_forced_edge(ConstraintSystem& sys, const ForcedEdge& forced)
{
    sys.add_edge(forced.pair.first, forced.pair.second);
    for (const CVector& row : forced.new_rows) sys.add_row(row);
    sys.extend_branch('0');
}

HeronBranch heron_branch(Complex a, Complex b, Complex c, double eps)
{
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0)
        throw std::domain_error("heron_branch needs nonzero a and b");
    const double na = std::norm(a);  // |a|^2
    const double nb = std::norm(b);
    const double nc = std::norm(c);
    const double cosine_term = na + nb - nc;
    HeronBranch out{a, b, c, 4.0 * na * nb - cosine_term * cosine_term, {}};
    const Complex q = 2.0 * na * b;
    if (out.d2 > eps) {
        const double d = std::sqrt(out.d2);
        out.children.emplace_back(Complex(cosine_term, d) * a, q);
        out.children.emplace_back(Complex(cosine_term, -d) * a, q);
    } else if (out.d2 >= -eps) {
        out.children.emplace_back(cosine_term * a, q);
    }
    return out;
}

std::array<Complex, 3> normalize_triple(Complex a, Complex b, Complex c)
{
    std::array<Complex, 3> t{a, b, c};
    double largest = 0.0;
    for (Complex z : t) largest = std::max(largest, std::abs(z));
    if (largest == 0.0) return t;
    Complex lead = 0.0;
    for (Complex z : t)
        if (std::abs(z) > 0.0) {
            lead = z;
            break;
        }
    const Complex scale = std::conj(lead) / std::abs(lead) / largest;
    for (Complex& z : t) z *= scale;
    return t;
}

std::optional<DependentTriple> find_dependent_triple(const ConstraintSystem& sys, const EmbedConfig& config,
                                                     std::span<const std::array<Edge, 3>> skip)
{
    // Representatives of the proportionality classes of edge differences, in
    // edge order.
    std::vector<Edge> reps;
    std::vector<CVector> rep_diffs;
    for (auto [u, v] : sys.graph().edges()) {
        CVector d = sys.difference(u, v);
        if (d.norm() <= config.eps_res) continue;
        bool known = false;
        for (const CVector& r : rep_diffs)
            if (proportionality(d, r, config.eps_rank)) {
                known = true;
                break;
            }
        if (!known) {
            reps.push_back(Edge{u, v});
            rep_diffs.push_back(std::move(d));
        }
    }

    const std::size_t k = reps.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            CMatrix basis(rep_diffs[i].size(), 2);
            basis.col(0) = rep_diffs[i];
            basis.col(1) = rep_diffs[j];
            const auto qr = basis.colPivHouseholderQr();
            for (std::size_t l = j + 1; l < k; ++l) {
                const std::array<Edge, 3> edges{reps[i], reps[j], reps[l]};
                if (std::find(skip.begin(), skip.end(), edges) != skip.end()) continue;
                const CVector& target = rep_diffs[l];
                const CVector coef = qr.solve(target);
                const double scale = std::max({rep_diffs[i].norm(), rep_diffs[j].norm(), target.norm()});
                if ((basis * coef - target).norm() > config.eps_rank * scale) continue;
                // coef0 x + coef1 y - z = 0
                const auto t = normalize_triple(coef(0), coef(1), Complex(-1.0, 0.0));
                return DependentTriple{edges, t[0], t[1], t[2]};
            }
        }
    }
    return std::nullopt;
}

}  // namespace udg
