#include "pasa/runner.hpp"

#include <algorithm>
#include <string>
#include <thread>
#include <vector>

#include "pasa/errors.hpp"
#include "pasa/glm.hpp"
#include "pasa/linalg.hpp"
#include "pasa/parallel.hpp"

namespace pasa {

Strategy parse_strategy(std::string_view name) {
  if (name == "offline") return Strategy::offline;
  if (name == "mapreduce") return Strategy::mapreduce;
  if (name == "pasa") return Strategy::pasa;
  throw ConfigError("unknown strategy: " + std::string(name));
}

std::string strategy_name(Strategy strategy) {
  switch (strategy) {
    case Strategy::offline: return "offline";
    case Strategy::mapreduce: return "mapreduce";
    case Strategy::pasa: return "pasa";
  }
  throw ConfigError("invalid strategy");
}

namespace {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void pool_dispersions(std::vector<BlockSummary>& summaries) {
  double weighted = 0.0;
  double total = 0.0;
  for (const BlockSummary& s : summaries) {
    weighted += static_cast<double>(s.n_k) * s.phi_k;
    total += static_cast<double>(s.n_k);
  }
  const double pooled = weighted / total;
  for (BlockSummary& s : summaries) s.phi_k = pooled;
}

}  // namespace

PasaEstimate run_pasa(const GlmFamily& family, const DataSource& source,
                      const PartitionPlan& plan, const RunConfig& config) {
  if (plan.n != source.rows()) {
    throw ConfigError("partition plan covers " + std::to_string(plan.n) +
                      " rows but the source has " + std::to_string(source.rows()));
  }
  const double run_wall0 = wall_seconds();
  const int k_blocks = plan.k_blocks;
  std::vector<BlockSummary> summaries(static_cast<std::size_t>(k_blocks));
  std::vector<double> block_wall(static_cast<std::size_t>(k_blocks), 0.0);
  std::vector<double> block_cpu(static_cast<std::size_t>(k_blocks), 0.0);

  parallel_for(k_blocks, resolve_threads(config.threads), [&](int k) {
    const double wall0 = wall_seconds();
    const double cpu0 = thread_cpu_seconds();
    try {
      const auto batches = plan.block_batches(k);
      StreamState state =
          init_block(family, source.gather(plan.batch_rows(k, 0)), config.stream);
      for (std::size_t b = 1; b < batches.size(); ++b) {
        state = renew_update_auto(
            state, source.gather(plan.batch_rows(k, static_cast<int>(b))),
            config.stream);
      }
      summaries[static_cast<std::size_t>(k)] =
          finalize_block(state, static_cast<std::int64_t>(k));
    } catch (const Error& e) {
      throw Error(e.kind(), "block " + std::to_string(k) + ": " + e.what());
    }
    block_wall[static_cast<std::size_t>(k)] = wall_seconds() - wall0;
    block_cpu[static_cast<std::size_t>(k)] = thread_cpu_seconds() - cpu0;
  });

  const double combine_wall0 = wall_seconds();
  const double combine_cpu0 = thread_cpu_seconds();
  if (config.equal_dispersion_weights) pool_dispersions(summaries);
  PasaEstimate est = combine(std::move(summaries));
  const double combine_wall = wall_seconds() - combine_wall0;
  const double combine_cpu = thread_cpu_seconds() - combine_cpu0;

  RunTiming timing;
  for (int k = 0; k < k_blocks; ++k) {
    timing.c_time_s += block_cpu[static_cast<std::size_t>(k)];
  }
  timing.c_time_s += combine_cpu;
  timing.r_time_s =
      *std::max_element(block_wall.begin(), block_wall.end()) + combine_wall;
  timing.combine_s = combine_wall;
  timing.total_wall_s = wall_seconds() - run_wall0;
  est.timing = timing;
  return est;
}

PasaEstimate run_mapreduce(const GlmFamily& family, const DataSource& source,
                           const PartitionPlan& plan, const RunConfig& config) {
  return run_pasa(family, source, collapse_to_single_batches(plan), config);
}

PasaEstimate run_offline(const GlmFamily& family, const DataSource& source,
                         const RunConfig& config) {
  const double wall0 = wall_seconds();
  const double cpu0 = thread_cpu_seconds();

  const BatchData all = source.gather_all();
  const FitResult fit = fit_mle(family, all, config.stream.init);

  double phi;
  if (family.dispersion_fixed) {
    phi = *family.dispersion_fixed;
  } else {
    // fit.phi carries the literal Pearson/n statistic; report the classical
    // df-corrected value so K = 1 matches the streamed single-block summary.
    const auto df = fit.n - fit.beta.size();
    phi = df > 0 ? fit.phi * static_cast<double>(fit.n) / static_cast<double>(df) : 0.0;
  }

  SpdSolver solver;
  solver.factor(fit.j, "offline information matrix");

  PasaEstimate est;
  est.beta = fit.beta;
  est.cov = phi * solver.inverse();
  symmetrize(est.cov);
  est.total_n = fit.n;
  est.k_blocks = 1;
  BlockSummary summary;
  summary.block_id = 0;
  summary.n_k = fit.n;
  summary.beta_k = fit.beta;
  summary.j_k = fit.j / static_cast<double>(fit.n);
  summary.phi_k = phi;
  est.per_block.push_back(std::move(summary));

  est.timing.c_time_s = thread_cpu_seconds() - cpu0;
  est.timing.r_time_s = wall_seconds() - wall0;
  est.timing.combine_s = 0.0;
  est.timing.total_wall_s = est.timing.r_time_s;
  return est;
}

PasaEstimate run_strategy(const GlmFamily& family, const DataSource& source,
                          const RunConfig& config) {
  if (config.strategy == Strategy::offline) {
    return run_offline(family, source, config);
  }
  const int q = config.strategy == Strategy::mapreduce ? 1 : config.q_batches;
  const PartitionPlan plan =
      config.sequential_partition
          ? partition_sequential(source.rows(), config.k_blocks, q, source.cols())
          : partition(source.rows(), config.k_blocks, q, source.cols(), config.seed);
  return run_pasa(family, source, plan, config);
}

}  // namespace pasa
