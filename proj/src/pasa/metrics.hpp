#pragma once

#include <cstdint>
#include <vector>

namespace pasa {

// Mann-Whitney AUC with midrank tie handling: P(score+ > score-) + P(=)/2.
double auc(const std::vector<double>& scores, const std::vector<int>& labels);

struct Confusion {
  std::int64_t fn = 0;
  std::int64_t fp = 0;
  std::int64_t f() const { return fn + fp; }
};

// Counts for the thresholded classifier 1(score > cutoff).
Confusion confusion_counts(const std::vector<double>& scores,
                           const std::vector<int>& labels, double cutoff);

// Rows misclassified by model A but classified correctly by model B.
std::int64_t corrected_predictions(const std::vector<double>& scores_a,
                                   const std::vector<double>& scores_b,
                                   const std::vector<int>& labels, double cutoff);

}  // namespace pasa
