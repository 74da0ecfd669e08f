#include "pasa/linalg.hpp"

#include <cmath>

#include "pasa/errors.hpp"

namespace pasa {
namespace {

// Minimal unblocked Cholesky used only to name the failing pivot after
// Eigen's LLT has already rejected the matrix.
int find_failing_pivot(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = a(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= a(j, k) * a(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) return static_cast<int>(j);
    const double l = std::sqrt(d);
    a(j, j) = l;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= a(i, k) * a(j, k);
      a(i, j) = s / l;
    }
  }
  return static_cast<int>(n - 1);
}

}  // namespace

void symmetrize(Eigen::MatrixXd& m) {
  m = ((m + m.transpose()) * 0.5).eval();
}

void SpdSolver::factor(Eigen::MatrixXd m, const std::string& context) {
  symmetrize(m);
  dim_ = m.rows();
  llt_.compute(m);
  if (llt_.info() != Eigen::Success) {
    const int pivot = find_failing_pivot(m);
    throw RankDeficiencyError(
        context + ": matrix is not positive definite (pivot " +
            std::to_string(pivot) + " failed); design may be rank deficient",
        pivot);
  }
}

Eigen::VectorXd SpdSolver::solve(const Eigen::VectorXd& rhs) const {
  return llt_.solve(rhs);
}

Eigen::MatrixXd SpdSolver::solve(const Eigen::MatrixXd& rhs) const {
  return llt_.solve(rhs);
}

Eigen::MatrixXd SpdSolver::inverse() const {
  return llt_.solve(Eigen::MatrixXd::Identity(dim_, dim_));
}

Eigen::VectorXd spd_solve(Eigen::MatrixXd m, const Eigen::VectorXd& rhs,
                          const std::string& context) {
  SpdSolver s;
  s.factor(std::move(m), context);
  return s.solve(rhs);
}

Eigen::MatrixXd spd_inverse(Eigen::MatrixXd m, const std::string& context) {
  SpdSolver s;
  s.factor(std::move(m), context);
  return s.inverse();
}

void KahanMatrix::add(const Eigen::MatrixXd& term) {
  for (Eigen::Index j = 0; j < sum_.cols(); ++j) {
    for (Eigen::Index i = 0; i < sum_.rows(); ++i) {
      const double y = term(i, j) - comp_(i, j);
      const double t = sum_(i, j) + y;
      comp_(i, j) = (t - sum_(i, j)) - y;
      sum_(i, j) = t;
    }
  }
}

}  // namespace pasa
