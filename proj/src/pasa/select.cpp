#include "pasa/select.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "pasa/errors.hpp"
#include "pasa/metrics.hpp"
#include "pasa/parallel.hpp"
#include "pasa/rng.hpp"

namespace pasa {

namespace {

// Column-subset view over a table row range; gathers stay O(batch).
class SubsetSource final : public DataSource {
 public:
  SubsetSource(const DesignTable& table, std::int64_t row_begin, std::int64_t row_end,
               std::vector<Eigen::Index> cols)
      : table_(table), row_begin_(row_begin), row_end_(row_end), cols_(std::move(cols)) {}

  std::int64_t rows() const override { return row_end_ - row_begin_; }
  Eigen::Index cols() const override {
    return static_cast<Eigen::Index>(cols_.size());
  }

  BatchData gather(std::span<const std::int64_t> row_ids) const override {
    BatchData batch;
    batch.x.resize(static_cast<Eigen::Index>(row_ids.size()), cols());
    batch.y.resize(static_cast<Eigen::Index>(row_ids.size()));
    for (std::size_t i = 0; i < row_ids.size(); ++i) {
      const std::int64_t id = row_begin_ + row_ids[i];
      if (row_ids[i] < 0 || id >= row_end_) {
        throw ConfigError("row id out of range in subset source");
      }
      for (std::size_t c = 0; c < cols_.size(); ++c) {
        batch.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
            table_.x(id, cols_[c]);
      }
      batch.y[static_cast<Eigen::Index>(i)] = table_.y[id];
    }
    return batch;
  }

 private:
  const DesignTable& table_;
  std::int64_t row_begin_;
  std::int64_t row_end_;
  std::vector<Eigen::Index> cols_;
};

struct FitScore {
  double auc = 0.0;
  std::vector<double> scores;
};

FitScore fit_and_score(const DesignTable& table, const std::vector<std::string>& terms,
                       std::int64_t train_n, const PartitionPlan& train_plan,
                       const RunConfig& run, const std::vector<int>& test_labels) {
  std::vector<Eigen::Index> cols;
  cols.reserve(terms.size());
  for (const std::string& term : terms) cols.push_back(table.column(term));

  const SubsetSource train(table, 0, train_n, cols);
  const PasaEstimate est = run_pasa(GlmFamily::bernoulli(), train, train_plan, run);

  FitScore out;
  const std::int64_t test_n = table.x.rows() - train_n;
  out.scores.resize(static_cast<std::size_t>(test_n));
  for (std::int64_t i = 0; i < test_n; ++i) {
    double eta = 0.0;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      eta += table.x(train_n + i, cols[c]) * est.beta[static_cast<Eigen::Index>(c)];
    }
    out.scores[static_cast<std::size_t>(i)] = sigmoid(eta);
  }
  out.auc = auc(out.scores, test_labels);
  return out;
}

}  // namespace

SelectionTrace forward_select(const DesignTable& table, const SelectConfig& config) {
  const double wall0 = wall_seconds();
  if (config.candidates.empty()) throw ConfigError("no candidate terms");
  if (config.train_blocks < 1 || config.train_blocks >= config.k_blocks) {
    throw ConfigError("train_blocks must lie in [1, K)");
  }
  for (const std::string& term : config.base) table.column(term);
  for (const std::string& term : config.candidates) table.column(term);

  // Widest model the search can reach must stay identifiable per batch.
  const std::int64_t p_max =
      static_cast<std::int64_t>(config.base.size() + config.candidates.size());
  const PartitionPlan full_plan =
      partition_sequential(table.x.rows(), config.k_blocks, config.q_batches, p_max);

  std::int64_t train_n = 0;
  for (int k = 0; k < config.train_blocks; ++k) train_n += full_plan.block_size(k);
  const PartitionPlan train_plan = partition_sequential(
      train_n, config.train_blocks, config.q_batches, p_max);

  const std::int64_t test_n = table.x.rows() - train_n;
  if (test_n < 2) throw ConfigError("test split is empty");
  std::vector<int> test_labels(static_cast<std::size_t>(test_n));
  for (std::int64_t i = 0; i < test_n; ++i) {
    test_labels[static_cast<std::size_t>(i)] =
        table.y[train_n + i] > 0.5 ? 1 : 0;
  }

  SelectionTrace trace;
  std::vector<std::string> current = config.base;
  FitScore current_fit =
      fit_and_score(table, current, train_n, train_plan, config.run, test_labels);
  trace.models_evaluated = 1;
  trace.base_auc = current_fit.auc;

  std::vector<std::string> pool = config.candidates;
  std::sort(pool.begin(), pool.end());

  for (;;) {
    std::string best_term;
    FitScore best_fit;
    best_fit.auc = current_fit.auc;
    std::set<std::string> failed;

    for (const std::string& candidate : pool) {
      std::vector<std::string> with = current;
      with.push_back(candidate);
      try {
        FitScore fit = fit_and_score(table, with, train_n, train_plan, config.run,
                                     test_labels);
        ++trace.models_evaluated;
        if (fit.auc > best_fit.auc) {
          best_term = candidate;
          best_fit = std::move(fit);
        }
      } catch (const Error& e) {
        if (e.kind() != Error::Kind::numeric) throw;
        ++trace.models_evaluated;
        failed.insert(candidate);
      }
    }

    for (const std::string& term : failed) {
      trace.removed.push_back(term);
      pool.erase(std::remove(pool.begin(), pool.end(), term), pool.end());
    }
    if (best_term.empty()) break;

    current.push_back(best_term);
    pool.erase(std::remove(pool.begin(), pool.end(), best_term), pool.end());
    current_fit = std::move(best_fit);
    trace.steps.push_back({best_term, current_fit.auc});
    if (pool.empty()) break;
  }

  trace.final_terms = current;
  trace.final_auc = current_fit.auc;
  const Confusion confusion =
      confusion_counts(current_fit.scores, test_labels, config.cutoff);
  trace.final_fn = confusion.fn;
  trace.final_fp = confusion.fp;
  trace.total_time_s = wall_seconds() - wall0;
  return trace;
}

SelectProblem make_select_problem(const SyntheticSelectSpec& spec) {
  if (spec.n < 1000) throw ConfigError("synthetic selection problem needs n >= 1000");

  const std::vector<std::string> base = {"gender_2", "gender_3", "age_2",
                                         "device_2", "device_3", "clicks"};
  SelectProblem problem;
  problem.base = {"(intercept)"};
  problem.base.insert(problem.base.end(), base.begin(), base.end());
  for (std::size_t a = 0; a < base.size(); ++a) {
    for (std::size_t b = a + 1; b < base.size(); ++b) {
      problem.candidates.push_back(base[a] + "*" + base[b]);
    }
  }
  problem.planted = "age_2*clicks";

  DesignTable& table = problem.table;
  table.names = problem.base;
  table.names.insert(table.names.end(), problem.candidates.begin(),
                     problem.candidates.end());
  table.x.resize(spec.n, static_cast<Eigen::Index>(table.names.size()));
  table.y.resize(spec.n);

  // True model: base effects plus one interaction (the planted term).
  const double b0 = -1.0;
  const double b_g2 = 0.35, b_g3 = -0.3, b_a2 = 0.4;
  const double b_d2 = -0.25, b_d3 = 0.3, b_clicks = 0.5;

  for (std::int64_t i = 0; i < spec.n; ++i) {
    CounterRng rng(mix_seed(spec.seed ^ 0x73656c656374ULL, static_cast<std::uint64_t>(i)));
    const double ug = rng.next_unit();
    const int gender = ug < 0.4 ? 1 : (ug < 0.75 ? 2 : 3);
    const int age = rng.next_unit() < 0.5 ? 1 : 2;
    const double ud = rng.next_unit();
    const int device = ud < 0.45 ? 1 : (ud < 0.8 ? 2 : 3);
    const double clicks = rng.next_normal();

    const double g2 = gender == 2 ? 1.0 : 0.0;
    const double g3 = gender == 3 ? 1.0 : 0.0;
    const double a2 = age == 2 ? 1.0 : 0.0;
    const double d2 = device == 2 ? 1.0 : 0.0;
    const double d3 = device == 3 ? 1.0 : 0.0;

    const double eta = b0 + b_g2 * g2 + b_g3 * g3 + b_a2 * a2 + b_d2 * d2 +
                       b_d3 * d3 + b_clicks * clicks + spec.gamma * a2 * clicks;
    const double base_vals[] = {1.0, g2, g3, a2, d2, d3, clicks};
    for (std::size_t c = 0; c < 7; ++c) {
      table.x(i, static_cast<Eigen::Index>(c)) = base_vals[c];
    }
    Eigen::Index col = 7;
    for (std::size_t a = 1; a < 7; ++a) {
      for (std::size_t b = a + 1; b < 7; ++b) {
        table.x(i, col++) = base_vals[a] * base_vals[b];
      }
    }
    table.y[i] = rng.next_unit() < sigmoid(eta) ? 1.0 : 0.0;
  }
  return problem;
}

}  // namespace pasa
