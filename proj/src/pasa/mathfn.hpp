#pragma once

#include <vector>

namespace pasa {

// Inverse standard normal CDF, accurate to ~1e-15 over (0, 1).
double normal_quantile(double prob);

// Median of a copy of `values` (average of the middle pair for even sizes).
double median(std::vector<double> values);

}  // namespace pasa
