#include "pasa/gmm.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pasa/combiner.hpp"
#include "pasa/errors.hpp"
#include "pasa/glm.hpp"
#include "pasa/linalg.hpp"

namespace pasa {

namespace {

struct BlockWork {
  const BatchData* data;
  double scale;        // n_k / phi_k
  double inv_n;
  SpdSolver j_inv;     // factorization of the per-observation information
};

// Quadratic form value and the pieces shared with its gradient.
double objective(const GlmFamily& family, const std::vector<BlockWork>& work,
                 const Eigen::VectorXd& beta,
                 std::vector<Eigen::VectorXd>* weighted_scores) {
  double value = 0.0;
  for (std::size_t k = 0; k < work.size(); ++k) {
    const Eigen::VectorXd u_bar = work[k].inv_n * score(family, *work[k].data, beta);
    const Eigen::VectorXd ju = work[k].j_inv.solve(u_bar);
    value += work[k].scale * u_bar.dot(ju);
    if (weighted_scores) (*weighted_scores)[k] = ju;
  }
  return value;
}

}  // namespace

Eigen::VectorXd gmm_oracle(const GlmFamily& family,
                           const std::vector<BlockSummary>& blocks,
                           const std::vector<BatchData>& block_data,
                           const GmmConfig& config) {
  if (blocks.empty() || blocks.size() != block_data.size()) {
    throw ConfigError("gmm_oracle needs one raw data block per summary");
  }
  const Eigen::Index p = blocks.front().beta_k.size();

  std::vector<BlockWork> work(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (block_data[k].rows() != blocks[k].n_k || block_data[k].cols() != p) {
      throw ConfigError("raw data for block " + std::to_string(blocks[k].block_id) +
                        " does not match its summary");
    }
    work[k].data = &block_data[k];
    work[k].scale = static_cast<double>(blocks[k].n_k) / blocks[k].phi_k;
    work[k].inv_n = 1.0 / static_cast<double>(blocks[k].n_k);
    work[k].j_inv.factor(blocks[k].j_k,
                         "block " + std::to_string(blocks[k].block_id) +
                             " information (gmm weight)");
  }

  // The combined estimator is already within O(1/N) of the minimizer; use it
  // as the starting point.
  Eigen::VectorXd beta = combine(blocks).beta;
  std::vector<Eigen::VectorXd> ju(work.size());
  double value = objective(family, work, beta, &ju);
  double grad_norm = 0.0;

  for (int iter = 0; iter < config.max_iter; ++iter) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(p);
    Eigen::MatrixXd gn_hessian = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t k = 0; k < work.size(); ++k) {
      const Eigen::MatrixXd h_bar =
          work[k].inv_n * neg_hessian(family, *work[k].data, beta);
      grad.noalias() -= 2.0 * work[k].scale * (h_bar * ju[k]);
      gn_hessian.noalias() +=
          2.0 * work[k].scale * (h_bar * work[k].j_inv.solve(h_bar));
    }
    grad_norm = grad.lpNorm<Eigen::Infinity>();
    if (grad_norm <= config.tol) return beta;

    symmetrize(gn_hessian);
    SpdSolver step_solver;
    step_solver.factor(std::move(gn_hessian), "gmm Gauss-Newton system");
    const Eigen::VectorXd direction = -step_solver.solve(grad);

    // Decreases smaller than the objective's rounding floor read as noise;
    // the slack keeps the line search from rejecting genuine Newton steps in
    // the terminal iterations (the gradient test above still gates exit).
    const double slack = 1e-12 * (std::abs(value) + 1.0);
    double t = 1.0;
    bool accepted = false;
    for (int h = 0; h < config.max_halvings; ++h) {
      const Eigen::VectorXd candidate = beta + t * direction;
      std::vector<Eigen::VectorXd> ju_candidate(work.size());
      const double candidate_value =
          objective(family, work, candidate, &ju_candidate);
      if (candidate_value <= value + slack) {
        beta = candidate;
        value = candidate_value;
        ju = std::move(ju_candidate);
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      throw NonConvergenceError("gmm step halving failed to reduce the objective",
                                beta, grad_norm);
    }
  }
  throw NonConvergenceError(
      "gmm did not reach gradient tolerance in " + std::to_string(config.max_iter) +
          " iterations",
      beta, grad_norm);
}

}  // namespace pasa
