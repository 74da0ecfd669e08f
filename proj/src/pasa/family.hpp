#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <string_view>

namespace pasa {

enum class FamilyKind { gaussian_identity, bernoulli_logit };

// Exponential-dispersion family: link, variance function, deviance and the
// dispersion convention (free for Gaussian, fixed at 1 for Bernoulli).
struct GlmFamily {
  FamilyKind kind;
  std::optional<double> dispersion_fixed;

  static GlmFamily gaussian() { return {FamilyKind::gaussian_identity, std::nullopt}; }
  static GlmFamily bernoulli() { return {FamilyKind::bernoulli_logit, 1.0}; }
  static GlmFamily parse(std::string_view name);

  bool is_gaussian() const { return kind == FamilyKind::gaussian_identity; }
  bool is_bernoulli() const { return kind == FamilyKind::bernoulli_logit; }
  std::string name() const;
};

// Overflow-safe logistic function (sign-split form).
double sigmoid(double eta);

// Inverse link mu = g(eta).
double mean(const GlmFamily& family, double eta);
Eigen::VectorXd mean(const GlmFamily& family, const Eigen::VectorXd& eta);

// Unit variance v(mu). Throws on a Bernoulli mean outside (0, 1).
double variance_fn(const GlmFamily& family, double mu);

// Unit deviance d(y; mu) with the 0*log(0/.) = 0 convention.
double deviance(const GlmFamily& family, double y, double mu);

}  // namespace pasa
