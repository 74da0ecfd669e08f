#include "pasa/replicate.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "pasa/combiner.hpp"
#include "pasa/errors.hpp"
#include "pasa/mathfn.hpp"
#include "pasa/parallel.hpp"

namespace pasa {

ReplicationReport run_replications(const ReplicateConfig& config) {
  if (config.reps < 1) throw ConfigError("reps must be >= 1");
  validate_spec(config.sim);
  const Eigen::Index p = config.sim.beta0.size();

  struct Slot {
    bool ok = false;
    bool failed = false;
    std::string error;
    RepRecord record;
    std::vector<bool> covered;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(config.reps));

  // Never nest replication workers and block workers.
  RunConfig run_template = config.run;
  if (config.rep_threads > 1) run_template.threads = 1;

  parallel_for(config.reps, std::max(config.rep_threads, 1), [&](int r) {
    Slot& slot = slots[static_cast<std::size_t>(r)];
    try {
      SimSpec sim = config.sim;
      sim.seed = config.base_seed + static_cast<std::uint64_t>(r);
      RunConfig run = run_template;
      run.seed = config.base_seed + static_cast<std::uint64_t>(r);

      const SimSource source(sim);
      const PasaEstimate est = run_strategy(sim.family, source, run);
      const auto intervals = wald_intervals(est, run.level);

      slot.record.beta = est.beta;
      slot.record.se.resize(p);
      slot.covered.resize(static_cast<std::size_t>(p));
      for (Eigen::Index j = 0; j < p; ++j) {
        slot.record.se[j] = intervals[static_cast<std::size_t>(j)].se;
        slot.covered[static_cast<std::size_t>(j)] =
            intervals[static_cast<std::size_t>(j)].lower <= sim.beta0[j] &&
            sim.beta0[j] <= intervals[static_cast<std::size_t>(j)].upper;
      }
      slot.record.c_time_s = est.timing.c_time_s;
      slot.record.r_time_s = est.timing.r_time_s;
      slot.ok = true;
    } catch (const Error& e) {
      slot.failed = true;
      slot.error = e.what();
    }
  });

  ReplicationReport report;
  report.family = config.sim.family.name();
  report.strategy = strategy_name(config.run.strategy);
  report.k_blocks = config.run.strategy == Strategy::offline ? 1 : config.run.k_blocks;
  report.q_batches = config.run.strategy == Strategy::pasa ? config.run.q_batches : 1;
  report.n = config.sim.n;
  report.p = static_cast<int>(p);
  report.reps = config.reps;

  std::string first_error;
  for (const Slot& slot : slots) {
    if (slot.failed) {
      ++report.failures;
      if (first_error.empty()) first_error = slot.error;
    }
  }
  if (report.failures > config.reps / 100) {
    throw NumericError("replication failure rate exceeded 1% (" +
                       std::to_string(report.failures) + "/" +
                       std::to_string(config.reps) + "); first failure: " +
                       first_error);
  }

  const int used = config.reps - report.failures;
  Eigen::VectorXd mean_beta = Eigen::VectorXd::Zero(p);
  double bias_acc = 0.0;
  double se_acc = 0.0;
  std::int64_t covered = 0;
  std::vector<double> c_times;
  std::vector<double> r_times;
  c_times.reserve(static_cast<std::size_t>(used));
  r_times.reserve(static_cast<std::size_t>(used));

  for (const Slot& slot : slots) {
    if (!slot.ok) continue;
    for (Eigen::Index j = 0; j < p; ++j) {
      bias_acc += std::abs(slot.record.beta[j] - config.sim.beta0[j]);
      se_acc += slot.record.se[j];
      if (slot.covered[static_cast<std::size_t>(j)]) ++covered;
    }
    mean_beta += slot.record.beta;
    c_times.push_back(slot.record.c_time_s);
    r_times.push_back(slot.record.r_time_s);
  }
  const double cells = static_cast<double>(used) * static_cast<double>(p);
  report.a_bias = bias_acc / cells;
  report.ase = se_acc / cells;
  report.cp = static_cast<double>(covered) / cells;

  if (used >= 2) {
    mean_beta /= static_cast<double>(used);
    Eigen::VectorXd ss = Eigen::VectorXd::Zero(p);
    for (const Slot& slot : slots) {
      if (!slot.ok) continue;
      const Eigen::VectorXd d = slot.record.beta - mean_beta;
      ss += d.cwiseProduct(d);
    }
    double ese_acc = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      ese_acc += std::sqrt(ss[j] / static_cast<double>(used - 1));
    }
    report.ese = ese_acc / static_cast<double>(p);
  }

  report.c_time_s = median(c_times);
  report.r_time_s = median(r_times);

  if (config.keep_reps) {
    for (const Slot& slot : slots) {
      if (slot.ok) report.per_rep.push_back(slot.record);
    }
  }
  return report;
}

std::vector<BenchResult> run_bench(const BenchConfig& config) {
  if (config.runs < 1) throw ConfigError("runs must be >= 1");
  if (config.cells.empty()) throw ConfigError("bench needs at least one cell");
  validate_spec(config.sim);

  std::vector<BenchResult> results;
  results.reserve(config.cells.size());
  for (const BenchCell& cell : config.cells) {
    RunConfig run = config.run_base;
    run.strategy = parse_strategy(cell.strategy);
    run.k_blocks = cell.k_blocks;
    run.q_batches = cell.q_batches;

    BenchResult result;
    result.family = config.sim.family.name();
    result.strategy = strategy_name(run.strategy);
    result.k_blocks = run.strategy == Strategy::offline ? 1 : run.k_blocks;
    result.q_batches = run.strategy == Strategy::pasa ? run.q_batches : 1;
    result.n = config.sim.n;
    result.runs = config.runs;

    std::vector<double> c_times;
    std::vector<double> r_times;
    c_times.reserve(static_cast<std::size_t>(config.runs));
    r_times.reserve(static_cast<std::size_t>(config.runs));
    for (int r = 0; r < config.runs; ++r) {
      SimSpec sim = config.sim;
      sim.seed = config.sim.seed + static_cast<std::uint64_t>(r);
      run.seed = sim.seed;
      const SimSource source(sim);
      const PasaEstimate est = run_strategy(sim.family, source, run);
      c_times.push_back(est.timing.c_time_s);
      r_times.push_back(est.timing.r_time_s);
    }
    result.c_time_s = median(c_times);
    result.r_time_s = median(r_times);
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace pasa
