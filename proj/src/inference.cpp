#include "panfis/inference.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>

namespace panfis {

namespace {

// Quadratic form (x-c)' S (x-c), symmetrized and clamped so tiny negative
// round-off never leaks into exp().
double mahalanobis_sq(const Rule& rule, const Eigen::VectorXd& x) {
  const Eigen::VectorXd d = x - rule.center;
  const double q = 0.5 * (d.dot(rule.inv_cov * d) + d.dot(rule.inv_cov.transpose() * d));
  return q < 0.0 ? 0.0 : q;
}

}  // namespace

double firing_strength(const Rule& rule, const Eigen::VectorXd& x) {
  if (x.size() != rule.center.size())
    throw std::invalid_argument("input dimension does not match rule center");
  return std::exp(-mahalanobis_sq(rule, x));
}

Eigen::VectorXd normalize_firings(const Eigen::VectorXd& raw) {
  if (raw.size() == 0)
    throw std::invalid_argument("normalize_firings needs at least one firing");
  if ((raw.array() < 0.0).any())
    throw std::invalid_argument("firing strengths must be non-negative");
  const double total = raw.sum();
  if (total <= 0.0)
    throw std::invalid_argument("all firing strengths are zero");
  return raw / total;
}

Firings compute_firings(const Model& model, const Eigen::VectorXd& x) {
  const Eigen::Index n = static_cast<Eigen::Index>(model.rules.size());
  Firings out;
  out.raw.resize(n);
  out.normalized.resize(n);
  if (n == 0) return out;

  Eigen::VectorXd log_fire(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Rule& rule = model.rules[static_cast<std::size_t>(i)];
    if (x.size() != rule.center.size())
      throw std::invalid_argument("input dimension does not match rule center");
    log_fire[i] = -mahalanobis_sq(rule, x);
    out.raw[i] = std::exp(log_fire[i]);
  }
  // Normalize in log space so far-away inputs (all raw firings underflowing
  // to 0) still yield a proper partition of unity.
  const double peak = log_fire.maxCoeff();
  const Eigen::VectorXd shifted = (log_fire.array() - peak).exp();
  out.normalized = shifted / shifted.sum();
  return out;
}

Prediction predict(const Model& model, const Eigen::VectorXd& x) {
  if (x.size() != model.config.input_dim)
    throw std::invalid_argument("input dimension does not match model config");
  if (model.rules.empty())
    throw std::invalid_argument("predict requires at least one rule");
  Prediction p;
  p.firings = compute_firings(model, x);
  p.y = 0.0;
  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    const Rule& rule = model.rules[i];
    const double local = rule.weights[0] + rule.weights.tail(x.size()).dot(x);
    p.y += p.firings.normalized[static_cast<Eigen::Index>(i)] * local;
  }
  return p;
}

double rule_log_volume(const Rule& rule) {
  Eigen::LLT<Eigen::MatrixXd> llt(rule.inv_cov);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("rule.inv_cov is not positive definite");
  // det(Sigma) = 1/det(inv_cov); log det(inv_cov) from the Cholesky factor.
  const double log_det_inv =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return -log_det_inv;
}

double rule_volume(const Rule& rule) { return std::exp(rule_log_volume(rule)); }

std::vector<FuzzySet> extract_fuzzy_sets(const Rule& rule, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("extraction radius r must be > 0");
  std::vector<FuzzySet> sets;
  sets.reserve(static_cast<std::size_t>(rule.dim()));
  for (Eigen::Index j = 0; j < rule.center.size(); ++j) {
    const double diag = rule.inv_cov(j, j);
    if (!(diag > 0.0))
      throw std::invalid_argument("rule.inv_cov diagonal must be positive");
    sets.push_back({rule.center[j], r / std::sqrt(diag)});
  }
  return sets;
}

}  // namespace panfis
