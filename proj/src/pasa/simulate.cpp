#include "pasa/simulate.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <string>
#include <vector>

#include "pasa/errors.hpp"
#include "pasa/rng.hpp"

namespace pasa {

void validate_spec(const SimSpec& spec) {
  if (spec.n < 1) throw ConfigError("simulation needs n >= 1");
  const Eigen::Index p = spec.beta0.size();
  if (p < 1) throw ConfigError("simulation needs a nonempty beta0");
  const Eigen::Index m = spec.intercept ? p - 1 : p;
  if (spec.intercept && m < 1) {
    throw ConfigError("intercept-only designs are not supported");
  }
  if (!(spec.rho < 1.0)) throw ConfigError("rho must be < 1");
  if (m > 1 && !(spec.rho > -1.0 / static_cast<double>(m - 1))) {
    throw ConfigError("rho = " + std::to_string(spec.rho) +
                      " makes the covariate covariance indefinite (need rho > -1/" +
                      std::to_string(m - 1) + ")");
  }
  if (spec.family.is_gaussian() && spec.phi0 < 0.0) {
    throw ConfigError("gaussian noise variance phi0 must be >= 0");
  }
}

SimSource::SimSource(SimSpec spec) : spec_(std::move(spec)) {
  validate_spec(spec_);
  const Eigen::Index m = spec_.intercept ? spec_.beta0.size() - 1 : spec_.beta0.size();
  if (spec_.rho >= 0.0) {
    cs_z_ = std::sqrt(1.0 - spec_.rho);
    cs_w_ = std::sqrt(spec_.rho);
  } else {
    Eigen::MatrixXd v = Eigen::MatrixXd::Constant(m, m, spec_.rho);
    v.diagonal().setOnes();
    Eigen::LLT<Eigen::MatrixXd> llt(v);
    if (llt.info() != Eigen::Success) {
      throw ConfigError("covariate covariance is not positive definite");
    }
    chol_ = llt.matrixL();
  }
}

void SimSource::fill_row(std::int64_t row_id, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> x,
                         double& y) const {
  CounterRng rng(mix_seed(spec_.seed, static_cast<std::uint64_t>(row_id)));
  const Eigen::Index p = spec_.beta0.size();
  const Eigen::Index first = spec_.intercept ? 1 : 0;
  const Eigen::Index m = p - first;
  if (spec_.intercept) x[0] = 1.0;

  if (spec_.rho >= 0.0) {
    // Compound symmetry by the rank-one route: shared factor plus noise.
    const double w = rng.next_normal();
    for (Eigen::Index j = 0; j < m; ++j) {
      x[first + j] = cs_z_ * rng.next_normal() + cs_w_ * w;
    }
  } else {
    Eigen::VectorXd z(m);
    for (Eigen::Index j = 0; j < m; ++j) z[j] = rng.next_normal();
    x.segment(first, m) = (chol_ * z).transpose();
  }

  const double eta = x.dot(spec_.beta0);
  if (spec_.family.is_gaussian()) {
    y = eta + std::sqrt(spec_.phi0) * rng.next_normal();
  } else {
    y = rng.next_unit() < sigmoid(eta) ? 1.0 : 0.0;
  }
}

BatchData SimSource::gather(std::span<const std::int64_t> row_ids) const {
  BatchData batch;
  batch.x.resize(static_cast<Eigen::Index>(row_ids.size()), spec_.beta0.size());
  batch.y.resize(static_cast<Eigen::Index>(row_ids.size()));
  for (std::size_t i = 0; i < row_ids.size(); ++i) {
    const std::int64_t id = row_ids[i];
    if (id < 0 || id >= spec_.n) {
      throw ConfigError("simulated row id " + std::to_string(id) + " out of range");
    }
    fill_row(id, batch.x.row(static_cast<Eigen::Index>(i)),
             batch.y[static_cast<Eigen::Index>(i)]);
  }
  return batch;
}

SimBatchStream::SimBatchStream(SimSpec spec, std::int64_t batch_size)
    : source_(std::move(spec)), batch_size_(batch_size) {
  if (batch_size_ < 1) throw ConfigError("batch size must be >= 1");
}

bool SimBatchStream::next(BatchData& batch) {
  if (cursor_ >= source_.rows()) return false;
  const std::int64_t take = std::min(batch_size_, source_.rows() - cursor_);
  std::vector<std::int64_t> ids(static_cast<std::size_t>(take));
  for (std::int64_t i = 0; i < take; ++i) ids[static_cast<std::size_t>(i)] = cursor_ + i;
  batch = source_.gather(ids);
  cursor_ += take;
  return true;
}

}  // namespace pasa
