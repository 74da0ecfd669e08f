#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "pasa/summary.hpp"

namespace pasa {

// Wall-clock / CPU accounting for one estimation run. c_time_s sums the CPU
// time spent in every phase across workers; r_time_s is the critical path:
// the slowest block's wall time plus the combination step.
struct RunTiming {
  double c_time_s = 0.0;
  double r_time_s = 0.0;
  double combine_s = 0.0;
  double total_wall_s = 0.0;
};

struct PasaEstimate {
  Eigen::VectorXd beta;
  Eigen::MatrixXd cov;
  std::int64_t total_n = 0;
  int k_blocks = 0;
  std::vector<BlockSummary> per_block;
  RunTiming timing;
};

struct WaldInterval {
  double lower = 0.0;
  double upper = 0.0;
  double se = 0.0;
};

// Inverse-dispersion information-weighted fusion of block summaries. Blocks
// are accumulated in block_id order with compensated summation, so the result
// is independent of the order the summaries arrive in.
PasaEstimate combine(std::vector<BlockSummary> blocks);

std::vector<WaldInterval> wald_intervals(const PasaEstimate& estimate, double level);

}  // namespace pasa
