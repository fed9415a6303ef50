#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "udg/graph.hpp"

namespace udg {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Solver tolerances and budgets.
struct EmbedConfig {
    double eps_rank = 1e-9;  ///< relative rank cutoff
    double eps_mod = 1e-9;   ///< allowed deviation of |omega| from 1
    double eps_res = 1e-9;   ///< residual / collision / verification tolerance
    int max_retries = 100;   ///< randomized-completion attempts per leaf
    int max_nodes = 10'000;  ///< branch-tree cap
    std::uint64_t rng_seed = 0;
    /// After randomized completion fails on every leaf, search each leaf's
    /// kernel for a drawing by damped Gauss-Newton from random starts.
    bool numeric_fallback = true;
    /// Smallest vertex separation accepted from the numeric fallback.
    double min_separation = 1e-6;

    void validate() const;
};

/// Orthonormal basis (as columns) of the nullspace of `rows` (r x n). The rank
/// counts singular values above eps_rank times the largest one.
CMatrix kernel_basis(const CMatrix& rows, int n, double eps_rank);

/// If c1 = omega * c2 to within eps_rank (relative), returns omega.
std::optional<Complex> proportionality(const CVector& c1, const CVector& c2, double eps_rank);

/// One node of the solver's case tree: the working graph G_i, the linear
/// constraints A_s on vertex coordinates, the branch string s, and an
/// orthonormal basis of ker A_s kept in sync with the rows.
class ConstraintSystem {
public:
    ConstraintSystem(Graph g, double eps_rank);

    const Graph& graph() const { return graph_; }
    const std::vector<CVector>& rows() const { return rows_; }
    const CMatrix& kernel() const { return kernel_; }
    const std::string& branch() const { return branch_; }
    int kernel_dim() const { return static_cast<int>(kernel_.cols()); }
    int order() const { return graph_.order(); }

    /// Appends a row if it is independent of the current ones and shrinks the
    /// kernel by one dimension. Returns false (and changes nothing) otherwise.
    bool add_row(const CVector& row);
    void add_edge(int u, int v) { graph_.add_edge(u, v); }
    void set_branch(std::string s) { branch_ = std::move(s); }
    void extend_branch(char c) { branch_.push_back(c); }

    /// Coefficients of f(u) - f(v) in kernel coordinates.
    CVector difference(int u, int v) const;

    /// Largest |r . k| / (|r| |k|) over rows r and kernel columns k.
    double max_relative_residual() const;

private:
    Graph graph_;
    double eps_rank_;
    std::vector<CVector> rows_;
    CMatrix kernel_;
    std::string branch_ = "0";
};

/// Row for a*(f(v1)-f(v2)) + b*(f(v3)-f(v4)).
CVector edge_pair_row(int n, Edge e1, Complex a, Edge e2, Complex b);

}  // namespace udg
