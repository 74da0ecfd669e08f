#pragma once

#include <cstdint>
#include <vector>

namespace pasa {

// Row range of one batch inside the plan's assignment order.
struct BatchRange {
  std::int64_t offset = 0;
  std::int64_t size = 0;
};

// Deterministic split of N rows into K blocks of Q batches each. Rows are
// dealt through a seeded shuffle (random partition) or kept in file order
// (sequential, for ordered on-disk data).
struct PartitionPlan {
  std::int64_t n = 0;
  int k_blocks = 0;
  std::vector<std::vector<std::int64_t>> batch_sizes;  // [block][batch]
  std::vector<std::int64_t> assignment;  // empty means identity order
  std::uint64_t seed = 0;

  std::vector<BatchRange> block_batches(int block) const;
  // Row ids served to block `k`, batch `b`, in assignment order.
  std::vector<std::int64_t> batch_rows(int block, int batch) const;
  std::int64_t block_size(int block) const;
};

PartitionPlan partition(std::int64_t n, int k, int q, std::int64_t p,
                        std::uint64_t seed);
PartitionPlan partition_sequential(std::int64_t n, int k, int q, std::int64_t p);

// Same block boundaries, each block collapsed to a single batch.
PartitionPlan collapse_to_single_batches(const PartitionPlan& plan);

}  // namespace pasa
