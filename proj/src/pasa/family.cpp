#include "pasa/family.hpp"

#include <cmath>

#include "pasa/errors.hpp"

namespace pasa {

GlmFamily GlmFamily::parse(std::string_view name) {
  if (name == "gaussian_identity" || name == "gaussian") return gaussian();
  if (name == "bernoulli_logit" || name == "bernoulli" || name == "logistic") return bernoulli();
  throw ConfigError("unknown family: " + std::string(name));
}

std::string GlmFamily::name() const {
  switch (kind) {
    case FamilyKind::gaussian_identity: return "gaussian_identity";
    case FamilyKind::bernoulli_logit: return "bernoulli_logit";
  }
  throw ConfigError("invalid family kind");
}

double sigmoid(double eta) {
  if (eta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-eta));
  }
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

double mean(const GlmFamily& family, double eta) {
  switch (family.kind) {
    case FamilyKind::gaussian_identity: return eta;
    case FamilyKind::bernoulli_logit: return sigmoid(eta);
  }
  throw ConfigError("invalid family kind");
}

Eigen::VectorXd mean(const GlmFamily& family, const Eigen::VectorXd& eta) {
  if (family.is_gaussian()) return eta;
  Eigen::VectorXd mu(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) mu[i] = sigmoid(eta[i]);
  return mu;
}

double variance_fn(const GlmFamily& family, double mu) {
  switch (family.kind) {
    case FamilyKind::gaussian_identity: return 1.0;
    case FamilyKind::bernoulli_logit:
      if (!(mu > 0.0 && mu < 1.0)) {
        throw NumericError("bernoulli variance requires mean in (0, 1)");
      }
      return mu * (1.0 - mu);
  }
  throw ConfigError("invalid family kind");
}

namespace {

// y * log(y / mu) with the exact-zero convention.
double xlogxd(double y, double mu) {
  if (y == 0.0) return 0.0;
  return y * std::log(y / mu);
}

}  // namespace

double deviance(const GlmFamily& family, double y, double mu) {
  switch (family.kind) {
    case FamilyKind::gaussian_identity: {
      const double r = y - mu;
      return r * r;
    }
    case FamilyKind::bernoulli_logit:
      return 2.0 * (xlogxd(y, mu) + xlogxd(1.0 - y, 1.0 - mu));
  }
  throw ConfigError("invalid family kind");
}

}  // namespace pasa
