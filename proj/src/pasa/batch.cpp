#include "pasa/batch.hpp"

#include <string>

#include "pasa/errors.hpp"

namespace pasa {

void validate_batch(const BatchData& batch, const GlmFamily& family,
                    Eigen::Index expect_p) {
  if (batch.x.rows() != batch.y.size()) {
    throw ConfigError("batch shape mismatch: x has " + std::to_string(batch.x.rows()) +
                      " rows, y has " + std::to_string(batch.y.size()));
  }
  if (batch.x.rows() == 0) {
    throw ConfigError("empty batch");
  }
  if (batch.x.cols() == 0) {
    throw ConfigError("batch has zero predictors");
  }
  if (expect_p >= 0 && batch.x.cols() != expect_p) {
    throw ConfigError("batch has " + std::to_string(batch.x.cols()) +
                      " predictors, expected " + std::to_string(expect_p));
  }
  if (!batch.x.allFinite() || !batch.y.allFinite()) {
    throw ConfigError("batch contains non-finite values");
  }
  if (family.is_bernoulli()) {
    for (Eigen::Index i = 0; i < batch.y.size(); ++i) {
      const double y = batch.y[i];
      if (y != 0.0 && y != 1.0) {
        throw ConfigError("bernoulli response must be 0 or 1, got " + std::to_string(y) +
                          " at row " + std::to_string(i));
      }
    }
  }
}

}  // namespace pasa
