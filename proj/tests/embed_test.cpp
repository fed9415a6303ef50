#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "test_support.hpp"
#include "udg/graph6.hpp"
#include "udg/solver.hpp"

namespace udg {
namespace {

using testing::densest_codes;

constexpr double kTol = 1e-9;

// Rank of a complex matrix by Gaussian elimination with partial pivoting.
int gauss_rank(std::vector<std::vector<Complex>> m, double eps = 1e-9)
{
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    int rank = 0;
    for (std::size_t c = 0; c < cols && rank < static_cast<int>(m.size()); ++c) {
        std::size_t best = rank;
        for (std::size_t r = rank; r < m.size(); ++r)
            if (std::abs(m[r][c]) > std::abs(m[best][c])) best = r;
        if (std::abs(m[best][c]) <= eps) continue;
        std::swap(m[best], m[rank]);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == static_cast<std::size_t>(rank)) continue;
            const Complex f = m[r][c] / m[rank][c];
            for (std::size_t k = 0; k < cols; ++k) m[r][k] -= f * m[rank][k];
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<Complex>> as_rows(const std::vector<CVector>& rows)
{
    std::vector<std::vector<Complex>> out;
    for (const CVector& r : rows) out.emplace_back(r.data(), r.data() + r.size());
    return out;
}

// Hexagonal wheel: hub 0, rim 1..6, rim edge {6,1} left out.
Graph open_wheel()
{
    Graph g(7);
    for (int i = 1; i <= 6; ++i) g.add_edge(0, i);
    for (int i = 1; i < 6; ++i) g.add_edge(i, i + 1);
    return g;
}

double residual_on(const CVector& row, const std::vector<Complex>& coords)
{
    Complex s = 0;
    for (Eigen::Index i = 0; i < row.size(); ++i) s += row(i) * coords[i];
    return std::abs(s);
}

TEST(Rhombus, CompleteGraphK4)
{
    const auto rows = rhombus_constraints(complete_graph(4));
    ASSERT_EQ(rows.size(), 3U);
    for (const CVector& r : rows) {
        int plus = 0, minus = 0;
        for (Eigen::Index i = 0; i < 4; ++i) {
            if (r(i) == Complex(1, 0)) ++plus;
            if (r(i) == Complex(-1, 0)) ++minus;
        }
        EXPECT_EQ(plus, 2);
        EXPECT_EQ(minus, 2);
    }
    EXPECT_EQ(gauss_rank(as_rows(rows)), 3);
    const ConstraintSystem sys = initial_system(complete_graph(4), {});
    ASSERT_EQ(sys.kernel_dim(), 1);
    const CVector k = sys.kernel().col(0);
    for (Eigen::Index i = 1; i < 4; ++i) EXPECT_NEAR(std::abs(k(i) - k(0)), 0.0, kTol);
}

TEST(Rhombus, TriangleHasNoRows)
{
    EXPECT_TRUE(rhombus_constraints(complete_graph(3)).empty());
    EXPECT_EQ(initial_system(complete_graph(3), {}).kernel_dim(), 3);
}

TEST(Rhombus, FourCycleSingleRow)
{
    const auto rows = rhombus_constraints(cycle_graph(4));
    ASSERT_EQ(rows.size(), 1U);
    const Complex expected[] = {1.0, -1.0, 1.0, -1.0};
    for (int i = 0; i < 4; ++i) EXPECT_EQ(rows[0](i), expected[i]);
}

TEST(Rhombus, OneRowPerDistinctFourCycle)
{
    // Oracle: count 4-cycles as vertex sets with a cyclic order, by brute force.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Graph g = testing::random_graph(rng, 7, 0.5);
        int cycles = 0;
        const int n = g.order();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        if (a >= b || a >= c || a >= d || b >= d || b == c || c == d) continue;
                        if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d) && g.has_edge(d, a)) ++cycles;
                    }
        EXPECT_EQ(static_cast<int>(rhombus_constraints(g).size()), cycles);
    }
}

TEST(Kernel, Examples)
{
    EXPECT_EQ(kernel_basis(CMatrix(0, 3), 3, 1e-9).cols(), 3);

    CMatrix c4(1, 4);
    c4 << 1.0, -1.0, 1.0, -1.0;
    const CMatrix k = kernel_basis(c4, 4, 1e-9);
    ASSERT_EQ(k.cols(), 3);
    for (const CVector& v : {CVector(CVector::Ones(4)), CVector((CVector(4) << 1.0, 1.0, -1.0, -1.0).finished()),
                             CVector((CVector(4) << 1.0, -1.0, -1.0, 1.0).finished())}) {
        // v lies in the span: projection leaves nothing behind.
        const CVector rest = v - k * (k.adjoint() * v);
        EXPECT_NEAR(rest.norm(), 0.0, kTol);
    }
}

TEST(Kernel, IncrementalMatchesFreshBasis)
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + trial % 6;
        ConstraintSystem sys(Graph(n), 1e-9);
        std::vector<CVector> rows;
        for (int r = 0; r < n + 1; ++r) {
            CVector row(n);
            for (int j = 0; j < n; ++j) row(j) = Complex(gauss(rng), gauss(rng));
            if (r % 3 == 2 && !rows.empty()) row = rows[0] * Complex(0.5, 2.0) + rows.back();
            if (sys.add_row(row)) rows.push_back(row);
        }
        EXPECT_EQ(gauss_rank(as_rows(rows)) + sys.kernel_dim(), n);
        EXPECT_LE(sys.max_relative_residual(), kTol);
        const CMatrix gram = sys.kernel().adjoint() * sys.kernel();
        EXPECT_NEAR((gram - CMatrix::Identity(gram.rows(), gram.cols())).norm(), 0.0, 1e-12 * n);
    }
}

TEST(Collision, K4AndC4)
{
    EXPECT_TRUE(find_vertex_collision(initial_system(complete_graph(4), {}), {}).has_value());
    EXPECT_FALSE(find_vertex_collision(initial_system(cycle_graph(4), {}), {}).has_value());
}

TEST(Collision, K23DegreeTwoVerticesCoincide)
{
    // complete_bipartite(2, 3): side {0, 1} has degree 3, side {2, 3, 4} degree 2.
    // Oracle: f(x) = f(y) on the kernel iff appending the row e_x - e_y leaves
    // the rank of the rhombus rows unchanged.
    const Graph g = complete_bipartite(2, 3);
    const auto rows = as_rows(rhombus_constraints(g));
    const int base = gauss_rank(rows);
    auto forced_equal = [&](int x, int y) {
        auto ext = rows;
        std::vector<Complex> r(5, 0.0);
        r[x] = 1.0;
        r[y] = -1.0;
        ext.push_back(r);
        return gauss_rank(ext) == base;
    };
    EXPECT_FALSE(forced_equal(0, 1));
    EXPECT_TRUE(forced_equal(2, 3));
    EXPECT_TRUE(forced_equal(3, 4));

    const auto hit = find_vertex_collision(initial_system(g, {}), {});
    ASSERT_TRUE(hit.has_value());
    EXPECT_TRUE(forced_equal(hit->first, hit->second));
    EXPECT_GE(hit->first, 2);
}

TEST(NonunitRatio, ConstructedSystems)
{
    // Path 0-1-2-3 with three edges; pin f(0)-f(1) = 2 (f(2)-f(3)).
    Graph g = path_graph(4);
    ConstraintSystem sys(g, 1e-9);
    sys.add_row(edge_pair_row(4, {0, 1}, 1.0, {2, 3}, -2.0));
    const auto hit = find_nonunit_ratio(sys, {});
    ASSERT_TRUE(hit.has_value());
    EXPECT_NEAR(std::abs(hit->omega), 2.0, kTol);

    ConstraintSystem unit(g, 1e-9);
    unit.add_row(edge_pair_row(4, {0, 1}, 1.0, {2, 3}, -std::polar(1.0, 0.7)));
    EXPECT_FALSE(find_nonunit_ratio(unit, {}).has_value());
}

TEST(NonunitRatio, TriangleBranchesSurvive)
{
    const auto sat = saturate(initial_system(complete_graph(3), {}), {});
    ASSERT_EQ(sat.leaves.size(), 2U);
    for (const auto& leaf : sat.leaves) EXPECT_FALSE(find_nonunit_ratio(leaf, {}).has_value());
}

TEST(ForcedEdge, OpenWheelClosesItsRim)
{
    // Rhombi around the hub give f(1) - f(6) = f(2) - f(0), an edge difference.
    const Graph g = open_wheel();
    const ConstraintSystem sys = initial_system(g, {});
    const auto forced = find_forced_edge(sys, {});
    ASSERT_TRUE(forced.has_value());
    EXPECT_EQ(forced->pair, (Edge{1, 6}));
    EXPECT_NEAR(std::abs(forced->omega), 1.0, kTol);
    EXPECT_FALSE(forced->new_rows.empty());

    // Oracle: the regular hexagon drawing has |f(1) - f(6)| = 1.
    std::vector<Complex> hex(7, 0.0);
    for (int i = 1; i <= 6; ++i) hex[i] = std::polar(1.0, i * std::numbers::pi / 3);
    EXPECT_NEAR(std::abs(hex[1] - hex[6]), 1.0, kTol);
    for (const CVector& r : forced->new_rows) EXPECT_NEAR(residual_on(r, hex), 0.0, kTol);
}

TEST(ForcedEdge, FourCycleHasNone)
{
    EXPECT_FALSE(find_forced_edge(initial_system(cycle_graph(4), {}), {}).has_value());
}

TEST(ForcedEdge, AppliedEdgeExtendsBranch)
{
    ConstraintSystem sys = initial_system(open_wheel(), {});
    const int before = sys.kernel_dim();
    apply_forced_edge(sys, *find_forced_edge(sys, {}));
    EXPECT_TRUE(sys.graph().has_edge(1, 6));
    EXPECT_EQ(sys.branch(), "00");
    EXPECT_LE(sys.kernel_dim(), before);
}

TEST(Heron, TableOfCases)
{
    const HeronBranch two = heron_branch(1.0, 1.0, 1.0, 1e-9);
    EXPECT_NEAR(two.d2, 3.0, kTol);
    ASSERT_EQ(two.children.size(), 2U);
    // (|a|^2+|b|^2-|c|^2 +- i sqrt3) a = 1 +- i sqrt3, 2|a|^2 b = 2
    EXPECT_NEAR(std::abs(two.children[0].first - Complex(1, std::sqrt(3.0))), 0.0, kTol);
    EXPECT_NEAR(std::abs(two.children[1].first - Complex(1, -std::sqrt(3.0))), 0.0, kTol);
    EXPECT_NEAR(std::abs(two.children[0].second - 2.0), 0.0, kTol);

    const HeronBranch one = heron_branch(1.0, 1.0, 2.0, 1e-9);
    EXPECT_NEAR(one.d2, 0.0, kTol);
    EXPECT_EQ(one.children.size(), 1U);

    const HeronBranch none = heron_branch(1.0, 1.0, 3.0, 1e-9);
    EXPECT_NEAR(none.d2, 4.0 - 49.0, kTol);
    EXPECT_TRUE(none.refuted());

    EXPECT_THROW(heron_branch(0.0, 1.0, 1.0, 1e-9), std::domain_error);
}

TEST(Heron, OneChildAnnihilatesRandomUnitTriples)
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
    std::uniform_real_distribution<double> mag(0.2, 3.0);
    for (int trial = 0; trial < 10'000; ++trial) {
        // Pick unit x, y, z and moduli |a|, |b|, then choose c so a x + b y + c z = 0.
        const Complex x = std::polar(1.0, angle(rng));
        const Complex y = std::polar(1.0, angle(rng));
        const Complex a = std::polar(mag(rng), angle(rng));
        const Complex b = std::polar(mag(rng), angle(rng));
        const Complex z = std::polar(1.0, angle(rng));
        const Complex c = -(a * x + b * y) / z;
        if (std::abs(c) < 1e-3) continue;
        const HeronBranch h = heron_branch(a, b, c, 1e-9);
        ASSERT_FALSE(h.refuted());
        double best = 1e300;
        for (auto [p, q] : h.children) best = std::min(best, std::abs(p * x + q * y) / std::max(std::abs(p), std::abs(q)));
        EXPECT_LE(best, 1e-9) << trial;
    }
}

TEST(Heron, NormalizedTriple)
{
    const auto t = normalize_triple(Complex(0, 2), Complex(1, 0), Complex(-4, 0));
    EXPECT_NEAR(std::abs(t[2]), 1.0, kTol);
    EXPECT_NEAR(t[0].imag(), 0.0, kTol);
    EXPECT_GT(t[0].real(), 0.0);
}

TEST(DependentTriple, Triangle)
{
    const auto t = find_dependent_triple(initial_system(complete_graph(3), {}), {});
    ASSERT_TRUE(t.has_value());
    // Edges listed as (u, v) with u < v: (0,1), (0,2), (1,2); f01 - f02 + f12 = 0.
    EXPECT_NEAR(std::abs(std::abs(t->a) - 1.0), 0.0, kTol);
    EXPECT_NEAR(std::abs(std::abs(t->b) - 1.0), 0.0, kTol);
    EXPECT_NEAR(std::abs(std::abs(t->c) - 1.0), 0.0, kTol);
    const HeronBranch h = heron_branch(t->a, t->b, t->c, 1e-9);
    EXPECT_NEAR(h.d2, 3.0, kTol);
}

TEST(DependentTriple, FourCycleHasNone)
{
    EXPECT_FALSE(find_dependent_triple(initial_system(cycle_graph(4), {}), {}).has_value());
}

TEST(DependentTriple, TwoTrianglesPicksFirstInScanOrder)
{
    const Graph g = parse_graph6("C^");  // diamond: triangles {0,2,3} and {1,2,3}
    const ConstraintSystem sys = initial_system(g, {});
    const auto t = find_dependent_triple(sys, {});
    ASSERT_TRUE(t.has_value());
    // Oracle: lexicographically first triple of pairwise non-proportional
    // edges whose difference vectors have rank 2.
    const auto edges = g.edges();
    auto diff_row = [&](Edge e) {
        std::vector<Complex> r(static_cast<std::size_t>(sys.kernel_dim()));
        const CVector d = sys.difference(e.first, e.second);
        for (Eigen::Index i = 0; i < d.size(); ++i) r[i] = d(i);
        return r;
    };
    std::optional<std::array<Edge, 3>> expected;
    for (std::size_t i = 0; i < edges.size() && !expected; ++i)
        for (std::size_t j = i + 1; j < edges.size() && !expected; ++j)
            for (std::size_t l = j + 1; l < edges.size() && !expected; ++l) {
                const Edge e[3] = {edges[i], edges[j], edges[l]};
                bool pairwise = true;
                for (int x = 0; x < 3; ++x)
                    for (int y = x + 1; y < 3; ++y)
                        if (gauss_rank({diff_row(e[x]), diff_row(e[y])}) < 2) pairwise = false;
                if (pairwise && gauss_rank({diff_row(e[0]), diff_row(e[1]), diff_row(e[2])}) == 2)
                    expected = std::array<Edge, 3>{e[0], e[1], e[2]};
            }
    ASSERT_TRUE(expected.has_value());
    EXPECT_EQ(t->edges, *expected);
}

TEST(Saturate, K4Refuted)
{
    const auto sat = saturate(initial_system(complete_graph(4), {}), {});
    EXPECT_TRUE(sat.refuted());
    ASSERT_FALSE(sat.trace.empty());
    EXPECT_EQ(sat.trace.front().move, Move::collision);
}

TEST(Saturate, TriangleTwoLeaves)
{
    const auto sat = saturate(initial_system(complete_graph(3), {}), {});
    ASSERT_EQ(sat.leaves.size(), 2U);
    EXPECT_EQ(sat.leaves[0].branch(), "00");
    EXPECT_EQ(sat.leaves[1].branch(), "01");
    for (const auto& leaf : sat.leaves) EXPECT_EQ(leaf.kernel_dim(), 2);
}

TEST(Saturate, ForestUntouched)
{
    Graph tree(6);
    for (auto [u, v] : std::vector<Edge>{{0, 1}, {0, 2}, {2, 3}, {2, 4}, {4, 5}}) tree.add_edge(u, v);
    const auto sat = saturate(initial_system(tree, {}), {});
    ASSERT_EQ(sat.leaves.size(), 1U);
    EXPECT_EQ(sat.leaves[0].branch(), "0");
    EXPECT_EQ(sat.leaves[0].kernel_dim(), 6);
    EXPECT_TRUE(sat.leaves[0].rows().empty());
}

TEST(Saturate, BudgetIsReported)
{
    EmbedConfig cfg;
    cfg.max_nodes = 2;
    const SolverOutcome out = solve(parse_graph6("PASaACcG@?rB`xDcAhGTaAYK"), cfg);
    ASSERT_TRUE(out.unknown());
    EXPECT_EQ(std::get<Unknown>(out.result).reason, "branch budget");
}

TEST(Saturate, KernelContractAtEveryLeaf)
{
    for (const auto& [n, code] : densest_codes()) {
        const auto sat = saturate(initial_system(parse_graph6(code), {}), {});
        for (const auto& leaf : sat.leaves) EXPECT_LE(leaf.max_relative_residual(), kTol) << code;
    }
}

TEST(Completion, FourCycleNeedsOneRandomRow)
{
    const auto sat = saturate(initial_system(cycle_graph(4), {}), {});
    ASSERT_EQ(sat.leaves.size(), 1U);
    std::mt19937_64 rng(1);
    const auto done = randomized_completion(sat.leaves[0], {}, rng);
    ASSERT_TRUE(done.embedding.has_value()) << done.failure;
    EXPECT_EQ(done.embedding->random_constraints, 1);
    const auto& f = done.embedding->coords;
    EXPECT_TRUE(verify_embedding(cycle_graph(4), f, kTol));
    // Opposite vertices are reflections through the centre: (s, it, -s, -it) + shift.
    EXPECT_NEAR(std::abs(f[0] + f[2] - f[1] - f[3]), 0.0, kTol);
    const Complex centre = (f[0] + f[2]) / 2.0;
    const Complex r0 = f[0] - centre, r1 = f[1] - centre;
    EXPECT_NEAR(std::abs((r0 * std::conj(r1)).real()), 0.0, 1e-8);
}

TEST(Completion, TriangleLeafIsEquilateral)
{
    const auto sat = saturate(initial_system(complete_graph(3), {}), {});
    std::mt19937_64 rng(3);
    const auto done = randomized_completion(sat.leaves[0], {}, rng);
    ASSERT_TRUE(done.embedding.has_value());
    EXPECT_EQ(done.embedding->random_constraints, 0);
    EXPECT_TRUE(verify_embedding(complete_graph(3), done.embedding->coords, kTol));
}

TEST(Completion, SingleEdge)
{
    const SolverOutcome out = solve(complete_graph(2));
    ASSERT_TRUE(out.embedded());
    const auto& f = std::get<Embedded>(out.result).coords;
    EXPECT_NEAR(std::abs(f[0] - f[1]), 1.0, kTol);
}

TEST(Verify, Examples)
{
    const Complex w = std::polar(1.0, 2 * std::numbers::pi / 3);
    const double s = std::sqrt(3.0);
    const std::vector<Complex> eq{1.0 / s, w / s, w * w / s};
    EXPECT_TRUE(verify_embedding(complete_graph(3), eq, kTol));
    const std::vector<Complex> line{0.0, 1.0, 2.0};
    EXPECT_FALSE(verify_embedding(complete_graph(3), line, kTol));
    const std::vector<Complex> stacked{0.0, 0.0};
    EXPECT_FALSE(verify_embedding(Graph(2), stacked, kTol));
}

TEST(Solve, K4Refuted)
{
    EXPECT_TRUE(solve(complete_graph(4)).refuted());
}

TEST(Solve, MoserSpindleEmbedded)
{
    const Graph g = moser_spindle();
    const SolverOutcome out = solve(g);
    ASSERT_TRUE(out.embedded());
    const auto& f = std::get<Embedded>(out.result).coords;
    for (auto [u, v] : g.edges()) EXPECT_NEAR(std::abs(f[u] - f[v]), 1.0, kTol);

    // Oracle: classical spindle, two rhombi of side 1 from apex 0 rotated
    // until their far tips 2 and 5 are at unit distance. Compare the distance
    // profile, which any congruent copy shares.
    const double h = std::sqrt(3.0);
    const double theta = 2 * std::asin(1.0 / (2 * h));
    std::vector<Complex> ref(7);
    const Complex up = std::polar(1.0, std::numbers::pi / 6), down = std::polar(1.0, -std::numbers::pi / 6);
    ref[0] = 0.0;
    ref[1] = up;
    ref[3] = down;
    ref[2] = h;
    const Complex rot = std::polar(1.0, theta);
    ref[4] = up * rot;
    ref[6] = down * rot;
    ref[5] = h * rot;
    ASSERT_TRUE(verify_embedding(g, ref, kTol));
    // The spindle is rigid up to reflection, so pairwise distances must agree
    // as a multiset.
    std::vector<double> got, want;
    for (int u = 0; u < 7; ++u)
        for (int v = u + 1; v < 7; ++v) {
            got.push_back(std::abs(f[u] - f[v]));
            want.push_back(std::abs(ref[u] - ref[v]));
        }
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-8);
}

TEST(Solve, K23Refuted)
{
    const SolverOutcome out = solve(complete_bipartite(2, 3));
    ASSERT_TRUE(out.refuted());
    bool collided = false;
    for (const auto& step : out.trace) collided |= step.move == Move::collision;
    EXPECT_TRUE(collided);
}

TEST(Solve, EmptyAndEdgelessGraphs)
{
    EXPECT_TRUE(solve(Graph(0)).embedded());
    const SolverOutcome out = solve(Graph(4));
    ASSERT_TRUE(out.embedded());
    EXPECT_TRUE(verify_embedding(Graph(4), std::get<Embedded>(out.result).coords, kTol));
}

TEST(Solve, EveryDensestGraphEmbedsAndSurvivesNewtonStep)
{
    for (const auto& [n, code] : densest_codes()) {
        const Graph g = parse_graph6(code);
        const SolverOutcome out = solve(g);
        ASSERT_TRUE(out.embedded()) << code << " " << out.tag();
        const auto& f = std::get<Embedded>(out.result).coords;
        EXPECT_TRUE(verify_embedding(g, f, 1e-9)) << code;
        EXPECT_TRUE(verify_embedding(g, newton_refine(g, f), 1e-7)) << code;
    }
}

TEST(Solve, DiamondRhombusRowsVanishOnEmbedding)
{
    const Graph g = parse_graph6("C^");
    const SolverOutcome out = solve(g);
    ASSERT_TRUE(out.embedded());
    const auto& f = std::get<Embedded>(out.result).coords;
    for (const CVector& r : rhombus_constraints(g)) EXPECT_NEAR(residual_on(r, f), 0.0, kTol);
}

TEST(Solve, Deterministic)
{
    EmbedConfig cfg;
    cfg.rng_seed = 77;
    for (const char* code : {"Bw", "FoSvw", "P?CpiPHS@OYAiA@S_UWIY?jK"}) {
        const Graph g = parse_graph6(code);
        const SolverOutcome a = solve(g, cfg), b = solve(g, cfg);
        ASSERT_TRUE(a.embedded() && b.embedded());
        EXPECT_EQ(std::get<Embedded>(a.result).coords, std::get<Embedded>(b.result).coords);
        EXPECT_EQ(std::get<Embedded>(a.result).branch, std::get<Embedded>(b.result).branch);
        EXPECT_EQ(a.trace.size(), b.trace.size());
    }
}

TEST(Solve, RefutationTracesReplay)
{
    std::vector<Graph> refuted{complete_graph(4), complete_bipartite(2, 3), parse_graph6("DFw")};
    // Every edge addition to a densest 7-vertex graph that still has m = u(7)+1.
    const Graph dense = parse_graph6("FoSvw");
    for (int u = 0; u < 7; ++u)
        for (int v = u + 1; v < 7; ++v)
            if (!dense.has_edge(u, v)) {
                Graph h = dense;
                h.add_edge(u, v);
                refuted.push_back(h);
            }
    for (const Graph& g : refuted) {
        const SolverOutcome out = solve(g);
        ASSERT_TRUE(out.refuted()) << emit_graph6(g);
        EXPECT_TRUE(replay_refutation(g, out.trace)) << emit_graph6(g);
        EXPECT_TRUE(paranoid_agrees(g, {}));
        // A trace with its last step dropped no longer closes every branch.
        Trace cut(out.trace.begin(), out.trace.end() - 1);
        EXPECT_FALSE(replay_refutation(g, cut)) << emit_graph6(g);
    }
}

TEST(Solve, BranchStringsFormATree)
{
    const SolverOutcome out = solve(parse_graph6("PASaACcG@?rB`xDcAhGTaAYK"));
    std::set<std::string> seen{"0"};
    for (const auto& step : out.trace) {
        EXPECT_TRUE(seen.count(step.branch)) << step.branch;
        if (step.move == Move::forced_edge) seen.insert(step.branch + "0");
        if (step.move == Move::heron_split)
            for (std::size_t i = 0; i < (step.params.size() - 3) / 2; ++i)
                seen.insert(step.branch + static_cast<char>('0' + i));
    }
}

TEST(Solve, MonotoneOverEdgeDeletions)
{
    for (const auto& [n, code] : densest_codes()) {
        if (n > 12) continue;
        const Graph g = parse_graph6(code);
        ASSERT_TRUE(solve(g).embedded());
        for (auto [u, v] : g.edges()) {
            Graph h = g;
            h.remove_edge(u, v);
            EXPECT_FALSE(solve(h).refuted()) << code << " minus " << u << "-" << v;
        }
    }
}

TEST(Config, RejectsNonPositiveTolerances)
{
    EmbedConfig cfg;
    cfg.eps_res = 0;
    EXPECT_THROW(solve(complete_graph(3), cfg), std::invalid_argument);
}

}  // namespace
}  // namespace udg
