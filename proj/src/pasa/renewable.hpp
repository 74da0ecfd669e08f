#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "pasa/batch.hpp"
#include "pasa/family.hpp"
#include "pasa/glm.hpp"
#include "pasa/summary.hpp"

namespace pasa {

enum class DispersionWeighting { paper, normalized };

DispersionWeighting parse_dispersion_weighting(std::string_view name);

struct StreamConfig {
  SolverConfig init;            // first-batch MLE settings
  double tol = 1e-8;            // adjusted-score tolerance, scaled by n_seen
  int max_iter = 25;            // inner iterations per batch
  DispersionWeighting weighting = DispersionWeighting::paper;
};

// Renewable per-block state: the only retained memory of consumed batches.
struct StreamState {
  GlmFamily family = GlmFamily::gaussian();
  Eigen::VectorXd beta;
  Eigen::MatrixXd j_acc;        // sum of per-batch negative Hessians
  double phi = 1.0;
  std::int64_t n_seen = 0;
  int batches_seen = 0;
  Eigen::Index p = 0;
};

// First batch: full MLE. Gaussian dispersion is seeded with the residual mean
// square (divisor s - p) so the exact linear recursion holds from batch one.
StreamState init_block(const GlmFamily& family, const BatchData& first_batch,
                       const StreamConfig& config = {});

// Incremental update solving the adjusted score equation with the fixed
// preconditioner factorized once per batch; information accumulated at the
// new estimate; dispersion renewed by the weighted-average recursion.
StreamState renew_update(const StreamState& state, const BatchData& batch,
                         const StreamConfig& config = {});

// Gaussian-identity closed form plus the exact residual-mean-square recursion.
StreamState renew_update_linear(const StreamState& state, const BatchData& batch);

// Dispatch: closed form for Gaussian, iterative update otherwise.
StreamState renew_update_auto(const StreamState& state, const BatchData& batch,
                              const StreamConfig& config = {});

BlockSummary finalize_block(const StreamState& state, std::int64_t block_id = 0);

}  // namespace pasa
