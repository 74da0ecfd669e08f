#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pasa/csv.hpp"
#include "pasa/runner.hpp"

namespace pasa {

struct SelectConfig {
  std::vector<std::string> base;        // always-included expanded columns
  std::vector<std::string> candidates;  // terms competing for entry
  int k_blocks = 20;
  int q_batches = 10;
  int train_blocks = 15;
  double cutoff = 0.1;                  // reported confusion cutoff
  RunConfig run;                        // logistic fits on the training blocks
};

struct SelectionStep {
  std::string term;
  double auc = 0.0;  // test AUC after the term joins the model
};

struct SelectionTrace {
  double base_auc = 0.0;
  std::vector<SelectionStep> steps;
  std::vector<std::string> final_terms;
  double final_auc = 0.0;
  int models_evaluated = 0;
  std::vector<std::string> removed;  // dropped after identification failures
  std::int64_t final_fn = 0;         // confusion counts of the final model
  std::int64_t final_fp = 0;
  double total_time_s = 0.0;
};

// Greedy forward AUC search: at each step fit base+selected+candidate on the
// leading train_blocks blocks, score the held-out tail, keep the argmax
// (lexicographic tie-break), stop at the first non-improving sweep.
// Candidates whose fit fails identification are removed from the pool.
SelectionTrace forward_select(const DesignTable& table, const SelectConfig& config);

// Synthetic benchmark: categorical/numeric base covariates, one interaction
// carried by the true model, all pairwise interactions as candidates.
struct SyntheticSelectSpec {
  std::int64_t n = 200000;
  std::uint64_t seed = 1;
  double gamma = 0.5;  // planted interaction coefficient
};

struct SelectProblem {
  DesignTable table;
  std::vector<std::string> base;
  std::vector<std::string> candidates;
  std::string planted;
};

SelectProblem make_select_problem(const SyntheticSelectSpec& spec);

}  // namespace pasa
