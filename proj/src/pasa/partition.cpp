#include "pasa/partition.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "pasa/errors.hpp"
#include "pasa/rng.hpp"

namespace pasa {

std::vector<BatchRange> PartitionPlan::block_batches(int block) const {
  std::int64_t offset = 0;
  for (int k = 0; k < block; ++k) {
    for (std::int64_t s : batch_sizes[static_cast<std::size_t>(k)]) offset += s;
  }
  std::vector<BatchRange> out;
  out.reserve(batch_sizes[static_cast<std::size_t>(block)].size());
  for (std::int64_t s : batch_sizes[static_cast<std::size_t>(block)]) {
    out.push_back({offset, s});
    offset += s;
  }
  return out;
}

std::vector<std::int64_t> PartitionPlan::batch_rows(int block, int batch) const {
  const BatchRange range = block_batches(block)[static_cast<std::size_t>(batch)];
  std::vector<std::int64_t> rows(static_cast<std::size_t>(range.size));
  for (std::int64_t i = 0; i < range.size; ++i) {
    const std::int64_t pos = range.offset + i;
    rows[static_cast<std::size_t>(i)] =
        assignment.empty() ? pos : assignment[static_cast<std::size_t>(pos)];
  }
  return rows;
}

std::int64_t PartitionPlan::block_size(int block) const {
  const auto& sizes = batch_sizes[static_cast<std::size_t>(block)];
  return std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
}

namespace {

// floor(total/parts) each, remainder spread one row over the leading parts.
std::vector<std::int64_t> even_split(std::int64_t total, std::int64_t parts) {
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(parts), total / parts);
  for (std::int64_t i = 0; i < total % parts; ++i) {
    ++sizes[static_cast<std::size_t>(i)];
  }
  return sizes;
}

PartitionPlan make_plan(std::int64_t n, int k, int q, std::int64_t p) {
  if (k < 1 || q < 1) {
    throw ConfigError("partition requires K >= 1 and Q >= 1");
  }
  if (n < static_cast<std::int64_t>(k) * q) {
    throw ConfigError("infeasible partition: N = " + std::to_string(n) +
                      " < K*Q = " + std::to_string(static_cast<std::int64_t>(k) * q));
  }
  if (n / (static_cast<std::int64_t>(k) * q) < p) {
    throw ConfigError("infeasible partition: floor(N/(K*Q)) = " +
                      std::to_string(n / (static_cast<std::int64_t>(k) * q)) +
                      " < p = " + std::to_string(p) +
                      "; the first batch of every block needs at least p rows");
  }
  PartitionPlan plan;
  plan.n = n;
  plan.k_blocks = k;
  plan.batch_sizes.reserve(static_cast<std::size_t>(k));
  for (std::int64_t block_n : even_split(n, k)) {
    plan.batch_sizes.push_back(even_split(block_n, q));
  }
  return plan;
}

}  // namespace

PartitionPlan partition(std::int64_t n, int k, int q, std::int64_t p,
                        std::uint64_t seed) {
  PartitionPlan plan = make_plan(n, k, q, p);
  plan.seed = seed;
  plan.assignment.resize(static_cast<std::size_t>(n));
  std::iota(plan.assignment.begin(), plan.assignment.end(), std::int64_t{0});
  CounterRng rng(mix64(seed ^ 0x706172746974696fULL));
  for (std::int64_t i = n - 1; i > 0; --i) {
    const std::int64_t j = static_cast<std::int64_t>(
        rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(plan.assignment[static_cast<std::size_t>(i)],
              plan.assignment[static_cast<std::size_t>(j)]);
  }
  return plan;
}

PartitionPlan partition_sequential(std::int64_t n, int k, int q, std::int64_t p) {
  return make_plan(n, k, q, p);
}

PartitionPlan collapse_to_single_batches(const PartitionPlan& plan) {
  PartitionPlan out = plan;
  for (auto& sizes : out.batch_sizes) {
    const std::int64_t total = std::accumulate(sizes.begin(), sizes.end(), std::int64_t{0});
    sizes.assign(1, total);
  }
  return out;
}

}  // namespace pasa
