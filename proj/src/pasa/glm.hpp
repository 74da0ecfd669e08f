#pragma once

#include <Eigen/Core>

#include "pasa/batch.hpp"
#include "pasa/family.hpp"

namespace pasa {

struct SolverConfig {
  double tol = 1e-8;      // stop when ||score||_inf <= tol * n
  int max_iter = 50;
  double beta_cap = 30.0; // separation guard for logistic fits
};

// Offline maximum-likelihood fit of one data block.
struct FitResult {
  Eigen::VectorXd beta;
  Eigen::MatrixXd j;   // observed information X' V(beta) X (sum scale)
  double phi = 1.0;    // Pearson statistic / n (Gaussian), fixed 1 (Bernoulli)
  Eigen::Index n = 0;
  int iterations = 0;
  bool converged = false;
};

// Score U(beta) = X'(y - mu(X beta)).
Eigen::VectorXd score(const GlmFamily& family, const BatchData& batch,
                      const Eigen::VectorXd& beta);

// Negative Hessian J(beta) = X' diag(v(mu)) X. Bernoulli variances are clamped
// away from zero here (and only here) so saturated rows cannot zero out rows of J.
Eigen::MatrixXd neg_hessian(const GlmFamily& family, const BatchData& batch,
                            const Eigen::VectorXd& beta);

// Pearson dispersion estimate sum r_i^2 / v(mu_i) divided by the batch size s.
double estimate_dispersion_pearson(const GlmFamily& family, const BatchData& batch,
                                   const Eigen::VectorXd& beta);

FitResult fit_mle(const GlmFamily& family, const BatchData& batch,
                  const SolverConfig& config = {});

}  // namespace pasa
