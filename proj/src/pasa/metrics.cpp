#include "pasa/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pasa/errors.hpp"

namespace pasa {

double auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size() || scores.empty()) {
    throw ConfigError("auc needs matching, nonempty scores and labels");
  }
  const std::size_t n = scores.size();
  std::int64_t n_pos = 0;
  for (int label : labels) {
    if (label != 0 && label != 1) {
      throw ConfigError("auc labels must be 0 or 1");
    }
    n_pos += label;
  }
  const std::int64_t n_neg = static_cast<std::int64_t>(n) - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw ConfigError("auc undefined: labels are single-class");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] < scores[b];
  });

  // Midranks over tie groups; sum the positives' ranks.
  double rank_sum_pos = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) {
      if (labels[order[t]] == 1) rank_sum_pos += midrank;
    }
    i = j + 1;
  }
  const double np = static_cast<double>(n_pos);
  return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

Confusion confusion_counts(const std::vector<double>& scores,
                           const std::vector<int>& labels, double cutoff) {
  if (scores.size() != labels.size()) {
    throw ConfigError("confusion_counts needs matching scores and labels");
  }
  if (!(cutoff > 0.0 && cutoff < 1.0)) {
    throw ConfigError("cutoff must lie in (0, 1)");
  }
  Confusion out;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] > cutoff;
    if (labels[i] == 1 && !predicted) ++out.fn;
    if (labels[i] == 0 && predicted) ++out.fp;
  }
  return out;
}

std::int64_t corrected_predictions(const std::vector<double>& scores_a,
                                   const std::vector<double>& scores_b,
                                   const std::vector<int>& labels, double cutoff) {
  if (scores_a.size() != labels.size() || scores_b.size() != labels.size()) {
    throw ConfigError("corrected_predictions needs aligned score vectors");
  }
  std::int64_t corrected = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int pred_a = scores_a[i] > cutoff ? 1 : 0;
    const int pred_b = scores_b[i] > cutoff ? 1 : 0;
    if (pred_a != labels[i] && pred_b == labels[i]) ++corrected;
  }
  return corrected;
}

}  // namespace pasa
