#pragma once

#include <cstdint>
#include <string_view>

#include "pasa/combiner.hpp"
#include "pasa/family.hpp"
#include "pasa/partition.hpp"
#include "pasa/renewable.hpp"
#include "pasa/source.hpp"

namespace pasa {

enum class Strategy { offline, mapreduce, pasa };

Strategy parse_strategy(std::string_view name);
std::string strategy_name(Strategy strategy);

struct RunConfig {
  Strategy strategy = Strategy::pasa;
  int k_blocks = 1;
  int q_batches = 1;
  StreamConfig stream;
  int threads = 0;        // 0 = hardware concurrency
  std::uint64_t seed = 0; // partition shuffle seed
  double level = 0.95;
  // Replace each block's dispersion with the pooled estimate before fusing.
  // With a common weight the fused Gaussian estimator reduces exactly to the
  // full-data least-squares solution.
  bool equal_dispersion_weights = false;
  // Contiguous chunks instead of the seeded shuffle (ordered on-disk data).
  bool sequential_partition = false;
};

// Parallel block workers, each streaming its batches, then ordered fusion.
PasaEstimate run_pasa(const GlmFamily& family, const DataSource& source,
                      const PartitionPlan& plan, const RunConfig& config);

// PASA degenerated to one batch per block.
PasaEstimate run_mapreduce(const GlmFamily& family, const DataSource& source,
                           const PartitionPlan& plan, const RunConfig& config);

// Single full-data fit wrapped in the same reporting shape (K = 1). The
// Gaussian dispersion is df-corrected here so reported standard errors match
// the classical least-squares convention.
PasaEstimate run_offline(const GlmFamily& family, const DataSource& source,
                         const RunConfig& config);

// Builds the plan from config and dispatches on config.strategy.
PasaEstimate run_strategy(const GlmFamily& family, const DataSource& source,
                          const RunConfig& config);

}  // namespace pasa
