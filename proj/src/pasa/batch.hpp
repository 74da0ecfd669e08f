#pragma once

#include <Eigen/Core>

#include "pasa/family.hpp"

namespace pasa {

// One batch of rows: dense design matrix plus response vector.
struct BatchData {
  Eigen::MatrixXd x;  // s x p
  Eigen::VectorXd y;  // s

  Eigen::Index rows() const { return x.rows(); }
  Eigen::Index cols() const { return x.cols(); }
};

// Shape/finiteness/response-domain checks shared by every entry point that
// accepts raw data. Throws ConfigError on violation.
void validate_batch(const BatchData& batch, const GlmFamily& family,
                    Eigen::Index expect_p = -1);

}  // namespace pasa
