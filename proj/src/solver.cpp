#include "udg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace udg {

std::string to_string(Move m)
{
    switch (m) {
    case Move::rhombi: return "L0";
    case Move::collision: return "L1a";
    case Move::nonunit_ratio: return "L1b";
    case Move::forced_edge: return "L2";
    case Move::heron_split: return "L3";
    case Move::heron_refute: return "L3-refute";
    case Move::leaf: return "leaf";
    }
    return "?";
}

std::string SolverOutcome::tag() const
{
    if (embedded()) return "embedded";
    if (refuted()) return "refuted";
    return "unknown";
}

namespace {

std::vector<int> triple_vertices(const std::array<Edge, 3>& e)
{
    return {e[0].first, e[0].second, e[1].first, e[1].second, e[2].first, e[2].second};
}

}  // namespace

SaturateResult saturate(ConstraintSystem root, const EmbedConfig& config)
{
    SaturateResult out;
    std::vector<ConstraintSystem> stack;
    stack.push_back(std::move(root));
    out.nodes = 1;

    while (!stack.empty()) {
        ConstraintSystem sys = std::move(stack.back());
        stack.pop_back();
        std::vector<std::array<Edge, 3>> stalled;

        while (true) {
            if (out.nodes > config.max_nodes) {
                out.budget_exhausted = true;
                return out;
            }
            if (auto hit = find_vertex_collision(sys, config)) {
                out.trace.push_back({sys.branch(), Move::collision, {hit->first, hit->second}, {}});
                break;
            }
            if (auto ratio = find_nonunit_ratio(sys, config)) {
                out.trace.push_back({sys.branch(),
                                     Move::nonunit_ratio,
                                     {ratio->first.first, ratio->first.second, ratio->second.first,
                                      ratio->second.second},
                                     {ratio->omega}});
                break;
            }
            if (auto forced = find_forced_edge(sys, config)) {
                out.trace.push_back({sys.branch(),
                                     Move::forced_edge,
                                     {forced->edge.first, forced->edge.second, forced->pair.first,
                                      forced->pair.second},
                                     {forced->omega}});
                apply_forced_edge(sys, *forced);
                ++out.nodes;
                continue;
            }
            auto triple = find_dependent_triple(sys, config, stalled);
            if (!triple) {
                out.trace.push_back({sys.branch(), Move::leaf, {}, {Complex(sys.kernel_dim(), 0)}});
                out.leaves.push_back(std::move(sys));
                break;
            }
            const HeronBranch split = heron_branch(triple->a, triple->b, triple->c, config.eps_rank);
            if (split.refuted()) {
                out.trace.push_back({sys.branch(), Move::heron_refute, triple_vertices(triple->edges),
                                     {triple->a, triple->b, triple->c}});
                break;
            }
            std::vector<ConstraintSystem> children;
            for (std::size_t i = 0; i < split.children.size(); ++i) {
                ConstraintSystem child = sys;
                const auto [p, q] = split.children[i];
                if (!child.add_row(edge_pair_row(sys.order(), triple->edges[0], p, triple->edges[1], q))) break;
                child.extend_branch(static_cast<char>('0' + i));
                children.push_back(std::move(child));
            }
            if (children.size() != split.children.size()) {
                // Numerically redundant relation: no progress, try another triple.
                stalled.push_back(triple->edges);
                continue;
            }
            TraceStep step{sys.branch(), Move::heron_split, triple_vertices(triple->edges),
                           {triple->a, triple->b, triple->c}};
            for (const auto& [p, q] : split.children) {
                step.params.push_back(p);
                step.params.push_back(q);
            }
            out.trace.push_back(std::move(step));
            out.nodes += static_cast<int>(children.size());
            for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
            break;
        }
    }
    return out;
}

bool verify_embedding(const Graph& g, std::span<const Complex> coords, double tol)
{
    if (static_cast<int>(coords.size()) != g.order()) return false;
    for (auto [u, v] : g.edges())
        if (std::abs(std::abs(coords[u] - coords[v]) - 1.0) > tol) return false;
    for (int u = 0; u < g.order(); ++u)
        for (int v = u + 1; v < g.order(); ++v)
            if (std::abs(coords[u] - coords[v]) <= tol) return false;
    return true;
}

std::vector<Complex> newton_refine(const Graph& g, std::span<const Complex> coords)
{
    const auto edges = g.edges();
    const int n = g.order();
    std::vector<Complex> out(coords.begin(), coords.end());
    if (edges.empty()) return out;
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(edges.size()), 2 * n);
    Eigen::VectorXd res(static_cast<Eigen::Index>(edges.size()));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [u, v] = edges[i];
        const Complex d = coords[u] - coords[v];
        res(i) = std::norm(d) - 1.0;
        jac(i, 2 * u) = 2 * d.real();
        jac(i, 2 * u + 1) = 2 * d.imag();
        jac(i, 2 * v) = -2 * d.real();
        jac(i, 2 * v + 1) = -2 * d.imag();
    }
    const Eigen::VectorXd step = jac.completeOrthogonalDecomposition().solve(-res);
    for (int v = 0; v < n; ++v) out[v] += Complex(step(2 * v), step(2 * v + 1));
    return out;
}

namespace {

std::optional<std::pair<Edge, Edge>> independent_edge_pair(const ConstraintSystem& sys, const EmbedConfig& config)
{
    const auto edges = sys.graph().edges();
    std::optional<std::size_t> first;
    CVector base;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        CVector d = sys.difference(edges[i].first, edges[i].second);
        if (d.norm() <= config.eps_res) continue;
        if (!first) {
            first = i;
            base = std::move(d);
            continue;
        }
        if (!proportionality(d, base, config.eps_rank)) return std::make_pair(edges[*first], edges[i]);
    }
    return std::nullopt;
}

double min_separation(const std::vector<Complex>& coords)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t u = 0; u < coords.size(); ++u)
        for (std::size_t v = u + 1; v < coords.size(); ++v) best = std::min(best, std::abs(coords[u] - coords[v]));
    return best;
}

Complex random_unit(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    return std::polar(1.0, angle(rng));
}

}  // namespace

CompletionResult randomized_completion(const ConstraintSystem& leaf, const EmbedConfig& config,
                                       std::mt19937_64& rng)
{
    const Graph& g = leaf.graph();
    const int n = g.order();
    if (n == 0) return {Embedding{}, {}};

    const auto edges = g.edges();
    const int floor_dim = g.component_count() + (edges.empty() ? 0 : 1) - 1;
    std::normal_distribution<double> gauss;
    std::string failure = "verification failed";

    for (int attempt = 1; attempt <= config.max_retries; ++attempt) {
        ConstraintSystem sys = leaf;
        int added = 0;
        int rejected = 0;
        while (auto pair = independent_edge_pair(sys, config)) {
            const Complex b = random_unit(rng);
            if (!sys.add_row(edge_pair_row(n, pair->first, 1.0, pair->second, b))) {
                if (++rejected > config.max_retries) break;
                continue;
            }
            ++added;
        }
        if (sys.kernel_dim() > floor_dim + 1) return {std::nullopt, "stuck kernel"};

        CVector x(sys.kernel_dim());
        for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(gauss(rng), gauss(rng));
        CVector f = sys.kernel() * x;

        if (!edges.empty()) {
            const auto [u0, v0] = edges.front();
            const Complex dir = f(v0) - f(u0);
            if (std::abs(dir) <= config.eps_res) continue;
            const Complex origin = f(u0);
            for (int v = 0; v < n; ++v) f(v) = (f(v) - origin) / dir;
        } else {
            const Complex origin = f(0);
            for (int v = 0; v < n; ++v) f(v) -= origin;
        }
        std::vector<Complex> coords(f.data(), f.data() + n);
        if (verify_embedding(g, coords, config.eps_res)) return {Embedding{std::move(coords), added, attempt}, {}};
    }
    return {std::nullopt, failure};
}

CompletionResult numeric_completion(const ConstraintSystem& leaf, const EmbedConfig& config, std::mt19937_64& rng)
{
    const Graph& g = leaf.graph();
    const int n = g.order();
    const auto edges = g.edges();
    const int k = leaf.kernel_dim();
    if (n == 0) return {Embedding{}, {}};
    if (edges.empty() || k == 0) return {std::nullopt, "nothing to fit"};

    std::vector<CVector> diffs;
    for (auto [u, v] : edges) diffs.push_back(leaf.difference(u, v));
    const Eigen::Index rows = static_cast<Eigen::Index>(edges.size());
    std::normal_distribution<double> gauss;

    auto residuals = [&](const CVector& c, Eigen::VectorXd& r) {
        for (Eigen::Index e = 0; e < rows; ++e) r(e) = std::norm(diffs[e].cwiseProduct(c).sum()) - 1.0;
    };

    for (int attempt = 1; attempt <= config.max_retries; ++attempt) {
        CVector c(k);
        for (Eigen::Index j = 0; j < k; ++j) c(j) = Complex(gauss(rng), gauss(rng));
        double mean = 0;
        for (const CVector& d : diffs) mean += std::abs(d.cwiseProduct(c).sum());
        mean /= static_cast<double>(rows);
        if (mean <= config.eps_res) continue;
        c /= mean;

        Eigen::VectorXd r(rows);
        residuals(c, r);
        double cost = r.squaredNorm();
        double lambda = 1e-3;
        Eigen::MatrixXd jac(rows, 2 * k);
        for (int iter = 0; iter < 200 && r.lpNorm<Eigen::Infinity>() > 1e-14; ++iter) {
            for (Eigen::Index e = 0; e < rows; ++e) {
                const Complex z = diffs[e].cwiseProduct(c).sum();
                for (Eigen::Index j = 0; j < k; ++j) {
                    const Complex w = std::conj(z) * diffs[e](j);
                    jac(e, 2 * j) = 2 * w.real();
                    jac(e, 2 * j + 1) = -2 * w.imag();
                }
            }
            const Eigen::MatrixXd jtj = jac.transpose() * jac;
            const Eigen::VectorXd grad = jac.transpose() * r;
            bool improved = false;
            while (lambda < 1e12) {
                Eigen::MatrixXd damped = jtj;
                damped.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
                const Eigen::VectorXd step = damped.ldlt().solve(-grad);
                CVector trial = c;
                for (Eigen::Index j = 0; j < k; ++j) trial(j) += Complex(step(2 * j), step(2 * j + 1));
                Eigen::VectorXd tr(rows);
                residuals(trial, tr);
                if (tr.squaredNorm() < cost) {
                    c = trial;
                    r = tr;
                    cost = tr.squaredNorm();
                    lambda = std::max(lambda / 10, 1e-15);
                    improved = true;
                    break;
                }
                lambda *= 10;
            }
            if (!improved) break;
        }

        const CVector f = leaf.kernel() * c;
        std::vector<Complex> coords(f.data(), f.data() + n);
        const Complex origin = coords[0];
        for (Complex& z : coords) z -= origin;
        if (verify_embedding(g, coords, config.eps_res) && min_separation(coords) >= config.min_separation)
            return {Embedding{std::move(coords), 0, attempt}, {}};
    }
    return {std::nullopt, "numeric search failed"};
}

SolverOutcome solve(const Graph& g, const EmbedConfig& config)
{
    config.validate();
    SolverOutcome out;
    if (g.order() == 0) {
        out.result = Embedded{{}, "0", config.rng_seed, 0};
        return out;
    }
    ConstraintSystem root = initial_system(g, config);
    SaturateResult sat = saturate(root, config);
    out.trace.push_back({"0", Move::rhombi, {}, {Complex(static_cast<double>(root.rows().size()), 0)}});
    out.trace.insert(out.trace.end(), sat.trace.begin(), sat.trace.end());
    out.nodes = sat.nodes;
    out.leaves = static_cast<int>(sat.leaves.size());

    if (sat.refuted()) {
        out.result = Refuted{};
        return out;
    }
    std::mt19937_64 rng(config.rng_seed);
    std::string last_failure = "no leaf";
    for (const ConstraintSystem& leaf : sat.leaves) {
        CompletionResult done = randomized_completion(leaf, config, rng);
        if (done.embedding) {
            out.result = Embedded{std::move(done.embedding->coords), leaf.branch(), config.rng_seed,
                                  done.embedding->random_constraints};
            return out;
        }
        last_failure = done.failure;
    }
    if (config.numeric_fallback) {
        for (const ConstraintSystem& leaf : sat.leaves) {
            CompletionResult done = numeric_completion(leaf, config, rng);
            if (done.embedding) {
                out.result = Embedded{std::move(done.embedding->coords), leaf.branch(), config.rng_seed, 0, true};
                return out;
            }
        }
    }
    out.result = Unknown{sat.budget_exhausted ? "branch budget" : last_failure};
    return out;
}

bool replay_refutation(const Graph& g, const Trace& trace, const EmbedConfig& config)
{
    if (g.order() == 0) return false;
    std::map<std::string, ConstraintSystem> open;
    open.emplace("0", initial_system(g, config));
    auto edge_at = [](const std::vector<int>& v, std::size_t i) { return Edge{v[2 * i], v[2 * i + 1]}; };

    for (const TraceStep& step : trace) {
        if (step.move == Move::rhombi) continue;
        auto it = open.find(step.branch);
        if (it == open.end()) return false;
        ConstraintSystem sys = std::move(it->second);
        open.erase(it);
        const auto& vs = step.vertices;
        switch (step.move) {
        case Move::collision:
            if (vs.size() != 2 || sys.difference(vs[0], vs[1]).norm() > config.eps_res) return false;
            break;
        case Move::nonunit_ratio: {
            if (vs.size() != 4) return false;
            auto omega = proportionality(sys.difference(vs[0], vs[1]), sys.difference(vs[2], vs[3]),
                                         config.eps_rank);
            if (!omega || std::abs(std::abs(*omega) - 1.0) <= config.eps_mod) return false;
            break;
        }
        case Move::forced_edge: {
            if (vs.size() != 4 || !sys.graph().has_edge(vs[0], vs[1]) || sys.graph().has_edge(vs[2], vs[3]))
                return false;
            auto omega = proportionality(sys.difference(vs[0], vs[1]), sys.difference(vs[2], vs[3]),
                                         config.eps_rank);
            if (!omega || std::abs(std::abs(*omega) - 1.0) > config.eps_mod) return false;
            Graph grown = sys.graph();
            grown.add_edge(vs[2], vs[3]);
            apply_forced_edge(sys, ForcedEdge{edge_at(vs, 0), edge_at(vs, 1), *omega,
                                              rhombi_through_edge(grown, vs[2], vs[3])});
            open.emplace(sys.branch(), std::move(sys));
            break;
        }
        case Move::heron_split:
        case Move::heron_refute: {
            if (vs.size() != 6 || step.params.size() < 3) return false;
            const Complex a = step.params[0], b = step.params[1], c = step.params[2];
            const CVector rel = a * sys.difference(vs[0], vs[1]) + b * sys.difference(vs[2], vs[3]) +
                                c * sys.difference(vs[4], vs[5]);
            if (rel.norm() > config.eps_rank * 10.0) return false;
            const HeronBranch split = heron_branch(a, b, c, config.eps_rank);
            if (step.move == Move::heron_refute) {
                if (!split.refuted()) return false;
                break;
            }
            if (split.refuted()) return false;
            for (std::size_t i = 0; i < split.children.size(); ++i) {
                ConstraintSystem child = sys;
                const auto [p, q] = split.children[i];
                child.add_row(edge_pair_row(g.order(), edge_at(vs, 0), p, edge_at(vs, 1), q));
                child.extend_branch(static_cast<char>('0' + i));
                open.emplace(child.branch(), std::move(child));
            }
            break;
        }
        case Move::leaf:
            return false;
        case Move::rhombi:
            break;
        }
    }
    return open.empty();
}

bool paranoid_agrees(const Graph& g, const EmbedConfig& config)
{
    const SolverOutcome loose = solve(g, config);
    EmbedConfig strict = config;
    strict.eps_rank = strict.eps_mod = strict.eps_res = 1e-12;
    const SolverOutcome tight = solve(g, strict);
    return loose.refuted() == tight.refuted();
}

}  // namespace udg
