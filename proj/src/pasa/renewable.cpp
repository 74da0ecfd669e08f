#include "pasa/renewable.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pasa/errors.hpp"
#include "pasa/linalg.hpp"

namespace pasa {

DispersionWeighting parse_dispersion_weighting(std::string_view name) {
  if (name == "paper") return DispersionWeighting::paper;
  if (name == "normalized") return DispersionWeighting::normalized;
  throw ConfigError("unknown dispersion_weighting: " + std::string(name));
}

StreamState init_block(const GlmFamily& family, const BatchData& first_batch,
                       const StreamConfig& config) {
  validate_batch(first_batch, family);
  if (first_batch.rows() < first_batch.cols()) {
    throw RankDeficiencyError(
        "first batch has fewer rows (" + std::to_string(first_batch.rows()) +
            ") than parameters (" + std::to_string(first_batch.cols()) + ")",
        static_cast<int>(first_batch.rows()));
  }
  const FitResult fit = fit_mle(family, first_batch, config.init);

  StreamState state;
  state.family = family;
  state.beta = fit.beta;
  state.j_acc = fit.j;
  state.n_seen = fit.n;
  state.batches_seen = 1;
  state.p = first_batch.cols();
  if (family.dispersion_fixed) {
    state.phi = *family.dispersion_fixed;
  } else {
    // Seed with the residual mean square (divisor s - p): the value the exact
    // linear recursion self-starts with, and the one that makes single-batch
    // blocks reproduce the classical OLS standard errors.
    const Eigen::VectorXd resid = first_batch.y - mean(family, first_batch.x * fit.beta);
    const auto df = first_batch.rows() - first_batch.cols();
    state.phi = df > 0 ? resid.squaredNorm() / static_cast<double>(df) : 0.0;
  }
  return state;
}

namespace {

void check_initialized(const StreamState& state, const BatchData& batch) {
  if (state.batches_seen < 1) {
    throw ConfigError("stream not initialized: call init_block first");
  }
  validate_batch(batch, state.family, state.p);
}

double renew_dispersion(const StreamState& state, const BatchData& batch,
                        const Eigen::VectorXd& beta_new,
                        DispersionWeighting weighting) {
  const double s = static_cast<double>(batch.rows());
  const double n_prev = static_cast<double>(state.n_seen);
  const double n_new = n_prev + s;
  const double p = static_cast<double>(state.p);
  const double phi_batch = estimate_dispersion_pearson(state.family, batch, beta_new);
  const double w_old = (n_prev - p) / (n_new - p);
  const double w_new = weighting == DispersionWeighting::paper
                           ? (s - p) / (n_new - p)
                           : s / (n_new - p);
  return w_old * state.phi + w_new * phi_batch;
}

}  // namespace

StreamState renew_update(const StreamState& state, const BatchData& batch,
                         const StreamConfig& config) {
  check_initialized(state, batch);
  const std::int64_t n_new = state.n_seen + batch.rows();
  const double tol = config.tol * static_cast<double>(n_new);
  const std::string where =
      "renewal at batch " + std::to_string(state.batches_seen + 1);

  // Fixed preconditioner: prior information plus the batch Hessian at the
  // previous estimate, factorized once and reused for every inner step.
  SpdSolver precond;
  {
    Eigen::MatrixXd m = state.j_acc + neg_hessian(state.family, batch, state.beta);
    precond.factor(std::move(m), where + " preconditioner");
  }

  Eigen::VectorXd beta = state.beta;
  for (int r = 0; r <= config.max_iter; ++r) {
    const Eigen::VectorXd adjusted =
        state.j_acc * (state.beta - beta) + score(state.family, batch, beta);
    const double resid = adjusted.lpNorm<Eigen::Infinity>();
    if (resid <= tol) break;
    if (r == config.max_iter) {
      throw NonConvergenceError(
          where + " did not converge in " + std::to_string(config.max_iter) +
              " iterations",
          beta, resid);
    }
    beta += precond.solve(adjusted);
  }

  StreamState out;
  out.family = state.family;
  out.beta = beta;
  out.j_acc = state.j_acc + neg_hessian(state.family, batch, beta);
  out.n_seen = n_new;
  out.batches_seen = state.batches_seen + 1;
  out.p = state.p;
  out.phi = state.family.dispersion_fixed
                ? *state.family.dispersion_fixed
                : renew_dispersion(state, batch, beta, config.weighting);
  return out;
}

StreamState renew_update_linear(const StreamState& state, const BatchData& batch) {
  if (!state.family.is_gaussian()) {
    throw ConfigError("renew_update_linear requires the gaussian_identity family");
  }
  check_initialized(state, batch);
  const std::string where =
      "linear renewal at batch " + std::to_string(state.batches_seen + 1);

  Eigen::MatrixXd xtx = batch.x.transpose() * batch.x;
  symmetrize(xtx);
  const Eigen::VectorXd xty = batch.x.transpose() * batch.y;
  const double yty = batch.y.squaredNorm();

  const double quad_old = state.beta.dot(state.j_acc * state.beta);

  StreamState out;
  out.family = state.family;
  out.j_acc = state.j_acc + xtx;
  SpdSolver solver;
  solver.factor(out.j_acc, where);
  out.beta = solver.solve(Eigen::VectorXd(state.j_acc * state.beta + xty));
  out.n_seen = state.n_seen + batch.rows();
  out.batches_seen = state.batches_seen + 1;
  out.p = state.p;

  const double quad_new = out.beta.dot(out.j_acc * out.beta);
  const double df_prev = static_cast<double>(state.n_seen) - static_cast<double>(state.p);
  const double df_new = static_cast<double>(out.n_seen) - static_cast<double>(state.p);
  const double numer = df_prev * state.phi + quad_old + yty - quad_new;
  out.phi = std::max(numer / df_new, 0.0);
  return out;
}

StreamState renew_update_auto(const StreamState& state, const BatchData& batch,
                              const StreamConfig& config) {
  if (state.family.is_gaussian()) return renew_update_linear(state, batch);
  return renew_update(state, batch, config);
}

BlockSummary finalize_block(const StreamState& state, std::int64_t block_id) {
  if (state.batches_seen < 1) {
    throw ConfigError("cannot finalize an uninitialized stream");
  }
  BlockSummary summary;
  summary.block_id = block_id;
  summary.n_k = state.n_seen;
  summary.beta_k = state.beta;
  summary.j_k = state.j_acc / static_cast<double>(state.n_seen);
  summary.phi_k = state.phi;
  return summary;
}

}  // namespace pasa
