#include "pasa/source.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "pasa/errors.hpp"

namespace pasa {

BatchData DataSource::gather_all() const {
  std::vector<std::int64_t> ids(static_cast<std::size_t>(rows()));
  std::iota(ids.begin(), ids.end(), std::int64_t{0});
  return gather(ids);
}

MemorySource::MemorySource(Eigen::MatrixXd x, Eigen::VectorXd y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.rows() != y_.size()) {
    throw ConfigError("design matrix and outcome lengths differ");
  }
}

BatchData MemorySource::gather(std::span<const std::int64_t> row_ids) const {
  BatchData batch;
  batch.x.resize(static_cast<Eigen::Index>(row_ids.size()), x_.cols());
  batch.y.resize(static_cast<Eigen::Index>(row_ids.size()));
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    const std::int64_t id = row_ids[i];
    if (id < 0 || id >= x_.rows()) {
      throw ConfigError("row id " + std::to_string(id) + " out of range");
    }
    batch.x.row(static_cast<Eigen::Index>(i)) = x_.row(id);
    batch.y[static_cast<Eigen::Index>(i)] = y_[id];
  }
  return batch;
}

}  // namespace pasa
