#pragma once

#include <Eigen/Core>
#include <vector>

#include "pasa/batch.hpp"
#include "pasa/family.hpp"
#include "pasa/summary.hpp"

namespace pasa {

struct GmmConfig {
  double tol = 1e-8;    // absolute gradient infinity-norm at the minimizer
  int max_iter = 100;
  int max_halvings = 40;
};

// Reference estimator minimizing the inverse-information-weighted quadratic
// form of block-mean scores over the retained raw blocks. Test-scale only:
// it re-reads every block's data at each iteration, exactly what the
// streaming estimator exists to avoid.
Eigen::VectorXd gmm_oracle(const GlmFamily& family,
                           const std::vector<BlockSummary>& blocks,
                           const std::vector<BatchData>& block_data,
                           const GmmConfig& config = {});

}  // namespace pasa
