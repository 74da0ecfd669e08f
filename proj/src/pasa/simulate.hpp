#pragma once

#include <Eigen/Core>
#include <cstdint>

#include "pasa/family.hpp"
#include "pasa/source.hpp"

namespace pasa {

// Synthetic design: optional intercept column of ones, remaining covariates
// jointly normal with compound-symmetry correlation rho; Gaussian outcomes
// with noise variance phi0, Bernoulli outcomes through the logistic mean.
struct SimSpec {
  GlmFamily family = GlmFamily::gaussian();
  std::int64_t n = 0;
  Eigen::VectorXd beta0;
  double rho = 0.5;
  bool intercept = true;
  double phi0 = 1.0;  // gaussian noise variance
  std::uint64_t seed = 0;
};

void validate_spec(const SimSpec& spec);

// O(1) random row access: each row derives its own generator from (seed, i),
// so any subset can be produced in any order, bit-identically.
class SimSource final : public DataSource {
 public:
  explicit SimSource(SimSpec spec);

  std::int64_t rows() const override { return spec_.n; }
  Eigen::Index cols() const override { return spec_.beta0.size(); }
  BatchData gather(std::span<const std::int64_t> row_ids) const override;

  const SimSpec& spec() const { return spec_; }

 private:
  void fill_row(std::int64_t row_id, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> x,
                double& y) const;

  SimSpec spec_;
  double cs_z_ = 0.0;         // sqrt(1 - rho)
  double cs_w_ = 0.0;         // sqrt(rho)
  Eigen::MatrixXd chol_;      // covariate covariance factor when rho < 0
};

// Sequential batch view over a SimSource (the `simulate` CLI path and
// single-stream fits). Restartable via reset().
class SimBatchStream {
 public:
  SimBatchStream(SimSpec spec, std::int64_t batch_size);

  // Fills `batch` with the next slice; false once exhausted.
  bool next(BatchData& batch);
  void reset() { cursor_ = 0; }

 private:
  SimSource source_;
  std::int64_t batch_size_;
  std::int64_t cursor_ = 0;
};

}  // namespace pasa
