#include "pasa/glm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pasa/errors.hpp"
#include "pasa/linalg.hpp"

namespace pasa {

Eigen::VectorXd score(const GlmFamily& family, const BatchData& batch,
                      const Eigen::VectorXd& beta) {
  const Eigen::VectorXd mu = mean(family, batch.x * beta);
  return batch.x.transpose() * (batch.y - mu);
}

Eigen::MatrixXd neg_hessian(const GlmFamily& family, const BatchData& batch,
                            const Eigen::VectorXd& beta) {
  if (family.is_gaussian()) {
    Eigen::MatrixXd j = batch.x.transpose() * batch.x;
    symmetrize(j);
    return j;
  }
  const Eigen::VectorXd mu = mean(family, batch.x * beta);
  Eigen::VectorXd w(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    // Clamp saturated means here (and only here) so near-separated rows
    // cannot produce exact zero pivots; the score is never clamped.
    const double m = std::clamp(mu[i], 1e-12, 1.0 - 1e-12);
    w[i] = m * (1.0 - m);
  }
  Eigen::MatrixXd j = batch.x.transpose() * w.asDiagonal() * batch.x;
  symmetrize(j);
  return j;
}

double estimate_dispersion_pearson(const GlmFamily& family, const BatchData& batch,
                                   const Eigen::VectorXd& beta) {
  const Eigen::VectorXd mu = mean(family, batch.x * beta);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    const double v = variance_fn(family, mu[i]);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw NumericError("degenerate unit variance at row " + std::to_string(i));
    }
    const double r = batch.y[i] - mu[i];
    acc += r * r / v;
  }
  return acc / static_cast<double>(batch.rows());
}

namespace {

FitResult fit_gaussian(const BatchData& batch) {
  FitResult out;
  out.j = neg_hessian(GlmFamily::gaussian(), batch, Eigen::VectorXd());
  SpdSolver solver;
  solver.factor(out.j, "gaussian normal equations");
  out.beta = solver.solve(Eigen::VectorXd(batch.x.transpose() * batch.y));
  out.phi = estimate_dispersion_pearson(GlmFamily::gaussian(), batch, out.beta);
  out.n = batch.rows();
  out.iterations = 1;
  out.converged = true;
  return out;
}

FitResult fit_bernoulli(const BatchData& batch, const SolverConfig& config) {
  const GlmFamily family = GlmFamily::bernoulli();
  const Eigen::Index n = batch.rows();
  const double score_tol = config.tol * static_cast<double>(n);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(batch.cols());

  for (int iter = 0; iter <= config.max_iter; ++iter) {
    const Eigen::VectorXd u = score(family, batch, beta);
    if (u.lpNorm<Eigen::Infinity>() <= score_tol) {
      FitResult out;
      out.beta = beta;
      out.j = neg_hessian(family, batch, beta);
      out.phi = 1.0;
      out.n = n;
      out.iterations = iter;
      out.converged = true;
      return out;
    }
    if (iter == config.max_iter) break;
    SpdSolver solver;
    solver.factor(neg_hessian(family, batch, beta),
                  "logistic Newton step " + std::to_string(iter + 1));
    beta += solver.solve(u);
    if (beta.lpNorm<Eigen::Infinity>() > config.beta_cap) {
      throw NonConvergenceError(
          "logistic fit diverged (separation suspected): |beta| exceeded " +
              std::to_string(config.beta_cap),
          beta, u.lpNorm<Eigen::Infinity>());
    }
  }
  throw NonConvergenceError(
      "logistic fit did not converge in " + std::to_string(config.max_iter) + " iterations",
      beta, score(family, batch, beta).lpNorm<Eigen::Infinity>());
}

}  // namespace

FitResult fit_mle(const GlmFamily& family, const BatchData& batch,
                  const SolverConfig& config) {
  validate_batch(batch, family);
  if (family.is_gaussian()) return fit_gaussian(batch);
  return fit_bernoulli(batch, config);
}

}  // namespace pasa
