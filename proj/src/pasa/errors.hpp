#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>
#include <utility>

namespace pasa {

// Error taxonomy mirrored by the C API status codes and the CLI exit codes:
// config/io -> exit 2, numeric -> exit 3.
class Error : public std::runtime_error {
 public:
  enum class Kind { config, io, numeric };

  Error(Kind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::string msg) : Error(Kind::config, std::move(msg)) {}
};

class IoError : public Error {
 public:
  explicit IoError(std::string msg) : Error(Kind::io, std::move(msg)) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(std::string msg) : Error(Kind::numeric, std::move(msg)) {}
};

// Factorization hit a non-positive pivot; `pivot` is the offending column index.
class RankDeficiencyError : public NumericError {
 public:
  RankDeficiencyError(std::string msg, int pivot)
      : NumericError(std::move(msg)), pivot_(pivot) {}
  int pivot() const { return pivot_; }

 private:
  int pivot_;
};

class SingularMatrixError : public NumericError {
 public:
  explicit SingularMatrixError(std::string msg) : NumericError(std::move(msg)) {}
};

// Iterative solver exhausted its budget; carries the last iterate and the
// residual norm it stalled at.
class NonConvergenceError : public NumericError {
 public:
  NonConvergenceError(std::string msg, Eigen::VectorXd last_iterate, double residual)
      : NumericError(std::move(msg)),
        last_iterate_(std::move(last_iterate)),
        residual_(residual) {}
  const Eigen::VectorXd& last_iterate() const { return last_iterate_; }
  double residual() const { return residual_; }

 private:
  Eigen::VectorXd last_iterate_;
  double residual_;
};

}  // namespace pasa
