#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace pasa {

// Per-block checkpoint: everything the combiner needs, raw data discarded.
// j_k is on per-observation scale (accumulated information divided by n_k).
struct BlockSummary {
  std::int64_t block_id = 0;
  std::int64_t n_k = 0;
  Eigen::VectorXd beta_k;
  Eigen::MatrixXd j_k;
  double phi_k = 1.0;
};

}  // namespace pasa
