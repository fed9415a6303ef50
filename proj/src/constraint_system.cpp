#include "udg/constraint_system.hpp"

#include <algorithm>
#include <stdexcept>

namespace udg {

void EmbedConfig::validate() const
{
    if (!(eps_rank > 0 && eps_mod > 0 && eps_res > 0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (max_retries < 1 || max_nodes < 1)
        throw std::invalid_argument("solver budgets must be positive");
}

CMatrix kernel_basis(const CMatrix& rows, int n, double eps_rank)
{
    if (rows.rows() == 0 || n == 0) return CMatrix::Identity(n, n);
    if (rows.cols() != n) throw std::invalid_argument("row width differs from vertex count");
    Eigen::JacobiSVD<CMatrix> svd(rows, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double cutoff = eps_rank * sigma(0);
    int rank = 0;
    while (rank < sigma.size() && sigma(rank) > cutoff) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

std::optional<Complex> proportionality(const CVector& c1, const CVector& c2, double eps_rank)
{
    const double n2 = c2.squaredNorm();
    if (n2 == 0.0) return std::nullopt;
    const Complex omega = c2.dot(c1) / n2;  // dot conjugates its left operand
    const double scale = std::max(c1.norm(), std::sqrt(n2));
    if ((c1 - omega * c2).norm() > eps_rank * scale) return std::nullopt;
    return omega;
}

ConstraintSystem::ConstraintSystem(Graph g, double eps_rank)
    : graph_(std::move(g)), eps_rank_(eps_rank), kernel_(CMatrix::Identity(graph_.order(), graph_.order()))
{
}

bool ConstraintSystem::add_row(const CVector& row)
{
    const double norm = row.norm();
    if (norm == 0.0 || kernel_.cols() == 0) return false;
    // u^T x is the row evaluated on kernel coordinates x.
    const CVector u = kernel_.transpose() * row;
    if (u.norm() <= eps_rank_ * norm) return false;

    const CMatrix w = u.conjugate();
    Eigen::HouseholderQR<CMatrix> qr(w);
    const CMatrix q = qr.householderQ();
    kernel_ = kernel_ * q.rightCols(q.cols() - 1);
    rows_.push_back(row);
    return true;
}

CVector ConstraintSystem::difference(int u, int v) const
{
    return (kernel_.row(u) - kernel_.row(v)).transpose();
}

double ConstraintSystem::max_relative_residual() const
{
    double worst = 0.0;
    for (const CVector& r : rows_) {
        for (Eigen::Index j = 0; j < kernel_.cols(); ++j) {
            const Complex value = r.transpose() * kernel_.col(j);
            worst = std::max(worst, std::abs(value) / (r.norm() * kernel_.col(j).norm()));
        }
    }
    return worst;
}

CVector edge_pair_row(int n, Edge e1, Complex a, Edge e2, Complex b)
{
    CVector row = CVector::Zero(n);
    row(e1.first) += a;
    row(e1.second) -= a;
    row(e2.first) += b;
    row(e2.second) -= b;
    return row;
}

}  // namespace udg
