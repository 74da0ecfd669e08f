#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "pasa/runner.hpp"
#include "pasa/simulate.hpp"

namespace pasa {

struct ReplicateConfig {
  SimSpec sim;
  RunConfig run;
  int reps = 1;
  std::uint64_t base_seed = 1;
  int rep_threads = 0;   // 0 = run replications in sequence (workers go to blocks)
  bool keep_reps = false;
};

struct RepRecord {
  Eigen::VectorXd beta;
  Eigen::VectorXd se;
  double c_time_s = 0.0;
  double r_time_s = 0.0;
};

// Monte-Carlo summary for one (strategy, K, Q) cell.
struct ReplicationReport {
  std::string family;
  std::string strategy;
  int k_blocks = 0;
  int q_batches = 0;
  std::int64_t n = 0;
  int p = 0;
  int reps = 0;
  int failures = 0;
  double a_bias = 0.0;  // mean |beta_hat_j - beta0_j| over reps and coordinates
  double ase = 0.0;     // mean estimated standard error
  double ese = 0.0;     // per-coordinate sd across reps, averaged
  double cp = 0.0;      // pooled coordinate-interval coverage at run.level
  double c_time_s = 0.0;  // median across reps
  double r_time_s = 0.0;  // median across reps
  std::vector<RepRecord> per_rep;  // populated when keep_reps is set
};

ReplicationReport run_replications(const ReplicateConfig& config);

// One strategy/layout combination timed by run_bench.
struct BenchCell {
  std::string strategy;
  int k_blocks = 1;
  int q_batches = 1;
};

struct BenchConfig {
  SimSpec sim;
  RunConfig run_base;  // shared solver/thread settings; strategy/K/Q per cell
  std::vector<BenchCell> cells;
  int runs = 10;
};

struct BenchResult {
  std::string family;
  std::string strategy;
  int k_blocks = 0;
  int q_batches = 0;
  std::int64_t n = 0;
  int runs = 0;
  double c_time_s = 0.0;  // median across runs
  double r_time_s = 0.0;  // median across runs
};

// Times every cell over the same sequence of simulated data sets (run r of
// each cell shares one seed, so cells are compared on identical data).
std::vector<BenchResult> run_bench(const BenchConfig& config);

}  // namespace pasa
