#include "pasa/combiner.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "pasa/errors.hpp"
#include "pasa/linalg.hpp"
#include "pasa/mathfn.hpp"

namespace pasa {

PasaEstimate combine(std::vector<BlockSummary> blocks) {
  if (blocks.empty()) {
    throw ConfigError("combine requires at least one block summary");
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const BlockSummary& a, const BlockSummary& b) {
              return a.block_id < b.block_id;
            });

  for (std::size_t i = 1; i < blocks.size(); ++i) {
    if (blocks[i].block_id == blocks[i - 1].block_id) {
      throw ConfigError("duplicate block id " +
                        std::to_string(blocks[i].block_id));
    }
  }

  const Eigen::Index p = blocks.front().beta_k.size();
  for (const BlockSummary& blk : blocks) {
    if (blk.beta_k.size() != p || blk.j_k.rows() != p || blk.j_k.cols() != p) {
      throw ConfigError("block " + std::to_string(blk.block_id) +
                        " has mismatched parameter dimension");
    }
    if (!(blk.phi_k > 0.0) || !std::isfinite(blk.phi_k)) {
      throw NumericError("block " + std::to_string(blk.block_id) +
                         " has non-positive dispersion " + std::to_string(blk.phi_k));
    }
    if (blk.n_k <= 0) {
      throw ConfigError("block " + std::to_string(blk.block_id) +
                        " has non-positive size");
    }
  }

  KahanMatrix w_acc(p, p);
  KahanMatrix b_acc(p, 1);
  std::int64_t total_n = 0;
  for (const BlockSummary& blk : blocks) {
    const double scale = static_cast<double>(blk.n_k) / blk.phi_k;
    const Eigen::MatrixXd w_k = scale * blk.j_k;
    w_acc.add(w_k);
    b_acc.add(w_k * blk.beta_k);
    total_n += blk.n_k;
  }

  Eigen::MatrixXd w = w_acc.value();
  symmetrize(w);
  SpdSolver solver;
  try {
    solver.factor(w, "combined information matrix");
  } catch (const NumericError&) {
    std::ostringstream msg;
    msg << "combined information matrix is singular; block condition numbers:";
    for (const BlockSummary& blk : blocks) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(blk.j_k);
      const double lo = eig.eigenvalues().minCoeff();
      const double hi = eig.eigenvalues().maxCoeff();
      msg << " block " << blk.block_id << ": "
          << (lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity());
    }
    throw SingularMatrixError(msg.str());
  }

  PasaEstimate out;
  out.beta = solver.solve(Eigen::VectorXd(b_acc.value().col(0)));
  out.cov = solver.inverse();
  symmetrize(out.cov);
  out.total_n = total_n;
  out.k_blocks = static_cast<int>(blocks.size());
  out.per_block = std::move(blocks);
  return out;
}

std::vector<WaldInterval> wald_intervals(const PasaEstimate& estimate, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw ConfigError("interval level must lie in (0, 1)");
  }
  const double z = normal_quantile(0.5 * (1.0 + level));
  std::vector<WaldInterval> out(static_cast<std::size_t>(estimate.beta.size()));
  for (Eigen::Index j = 0; j < estimate.beta.size(); ++j) {
    const double var = estimate.cov(j, j);
    if (var < 0.0) {
      throw NumericError("negative variance at coordinate " + std::to_string(j));
    }
    const double se = std::sqrt(var);
    out[static_cast<std::size_t>(j)] = {estimate.beta[j] - z * se,
                                        estimate.beta[j] + z * se, se};
  }
  return out;
}

}  // namespace pasa
