#include "panfis/consequent.hpp"

#include <cmath>
#include <stdexcept>

namespace panfis {

std::vector<ErlsStep> erls_update(Model& model, const Eigen::VectorXd& x,
                                  double target, const Firings& firings) {
  const std::size_t n = model.rules.size();
  if (n == 0) throw std::invalid_argument("erls_update requires at least one rule");
  if (firings.count() != static_cast<Eigen::Index>(n))
    throw std::invalid_argument("firings do not match the rule base");
  if (x.size() != model.config.input_dim)
    throw std::invalid_argument("input dimension does not match model config");

  const Eigen::Index ue = x.size() + 1;
  Eigen::VectorXd xe(ue);
  xe[0] = 1.0;
  xe.tail(x.size()) = x;

  double y_before = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    y_before += firings.normalized[static_cast<Eigen::Index>(i)] *
                xe.dot(model.rules[i].weights);
  const double error_before = std::abs(target - y_before);

  std::vector<ErlsStep> steps(n);
  std::vector<Eigen::VectorXd> new_weights(n);
  std::vector<Eigen::MatrixXd> new_cov(n);
  std::vector<bool> active(n, false);
  bool finite = true;

  double y_after = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Rule& rule = model.rules[i];
    const double phi = firings.normalized[static_cast<Eigen::Index>(i)];
    steps[i].rule_index = static_cast<int>(i);

    if (phi < kActivationFloor) {
      y_after += phi * xe.dot(rule.weights);
      continue;
    }
    active[i] = true;

    const Eigen::VectorXd qx = rule.rls_cov * xe;
    const Eigen::VectorXd gain = qx / (1.0 / phi + xe.dot(qx));
    new_weights[i] = rule.weights + gain * (target - xe.dot(rule.weights));
    Eigen::MatrixXd cov = rule.rls_cov - gain * qx.transpose();
    new_cov[i] = 0.5 * (cov + cov.transpose());
    if (!new_weights[i].allFinite() || !new_cov[i].allFinite()) finite = false;

    y_after += phi * xe.dot(new_weights[i]);
  }
  const double error_after = std::abs(target - y_after);

  // Global gate: commit all tentative updates only when they do not worsen
  // the instantaneous error (and stayed finite).
  const bool commit = finite && error_after <= error_before;
  for (std::size_t i = 0; i < n; ++i) {
    steps[i].error_before = error_before;
    steps[i].error_after = error_after;
    if (active[i] && commit) {
      steps[i].gate = 1;
      model.rules[i].weights = std::move(new_weights[i]);
      model.rules[i].rls_cov = std::move(new_cov[i]);
    }
  }
  return steps;
}

}  // namespace panfis
