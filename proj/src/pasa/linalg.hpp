#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <string>

namespace pasa {

// In-place J <- (J + J^T)/2. Accumulated products pick up tiny asymmetry.
void symmetrize(Eigen::MatrixXd& m);

// Cholesky wrapper for symmetric positive definite systems. Factors once;
// failures are reported as RankDeficiencyError with the offending pivot.
class SpdSolver {
 public:
  SpdSolver() = default;

  // `context` prefixes error messages (e.g. "fit_mle information matrix").
  void factor(Eigen::MatrixXd m, const std::string& context);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;
  Eigen::MatrixXd inverse() const;

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::Index dim_ = 0;
};

Eigen::VectorXd spd_solve(Eigen::MatrixXd m, const Eigen::VectorXd& rhs,
                          const std::string& context);
Eigen::MatrixXd spd_inverse(Eigen::MatrixXd m, const std::string& context);

// Entrywise Kahan-compensated matrix accumulator; keeps block combination
// reproducible regardless of summation magnitudes.
class KahanMatrix {
 public:
  KahanMatrix(Eigen::Index rows, Eigen::Index cols)
      : sum_(Eigen::MatrixXd::Zero(rows, cols)),
        comp_(Eigen::MatrixXd::Zero(rows, cols)) {}

  void add(const Eigen::MatrixXd& term);
  const Eigen::MatrixXd& value() const { return sum_; }

 private:
  Eigen::MatrixXd sum_;
  Eigen::MatrixXd comp_;
};

}  // namespace pasa
