#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <utility>

#include "pasa/batch.hpp"

namespace pasa {

// Read-only row provider for the executor. Implementations must support
// concurrent gather calls (block workers run in parallel).
class DataSource {
 public:
  virtual ~DataSource() = default;
  virtual std::int64_t rows() const = 0;
  virtual Eigen::Index cols() const = 0;
  virtual BatchData gather(std::span<const std::int64_t> row_ids) const = 0;

  BatchData gather_all() const;
};

// Fully materialized dataset (CSV ingests, selection workflows, tests).
class MemorySource final : public DataSource {
 public:
  MemorySource(Eigen::MatrixXd x, Eigen::VectorXd y);

  std::int64_t rows() const override { return x_.rows(); }
  Eigen::Index cols() const override { return x_.cols(); }
  BatchData gather(std::span<const std::int64_t> row_ids) const override;

  const Eigen::MatrixXd& x() const { return x_; }
  const Eigen::VectorXd& y() const { return y_; }

 private:
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
};

}  // namespace pasa
