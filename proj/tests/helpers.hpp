#pragma once

#include <Eigen/Dense>
#include <random>

#include "panfis/model.hpp"

namespace panfis::testing {

// Random SPD matrix A^T A + lambda I; eigenvalues bounded away from zero.
inline Eigen::MatrixXd make_spd(int dim, std::mt19937& rng, double lambda = 0.5) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = normal(rng);
  return a.transpose() * a + lambda * Eigen::MatrixXd::Identity(dim, dim);
}

inline Eigen::VectorXd random_vector(int dim, std::mt19937& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = normal(rng);
  return v;
}

// Rule with a diagonal premise built from per-dimension widths.
inline Rule make_diag_rule(const Eigen::VectorXd& center, const Eigen::VectorXd& sigma,
                           const Eigen::VectorXd& weights, double omega = 1e5) {
  Rule rule;
  rule.center = center;
  rule.inv_cov = sigma.array().square().inverse().matrix().asDiagonal();
  rule.support = 1;
  rule.weights = weights;
  rule.rls_cov = omega * Eigen::MatrixXd::Identity(center.size() + 1, center.size() + 1);
  return rule;
}

inline Rule random_rule(int dim, std::mt19937& rng, double omega = 1e5) {
  Rule rule;
  rule.center = random_vector(dim, rng);
  rule.inv_cov = make_spd(dim, rng);
  rule.support = 1 + static_cast<int>(rng() % 50);
  rule.weights = random_vector(dim + 1, rng);
  rule.rls_cov = omega * Eigen::MatrixXd::Identity(dim + 1, dim + 1);
  return rule;
}

inline Model random_model(int dim, int rule_count, std::mt19937& rng) {
  Model model;
  model.config.input_dim = dim;
  for (int i = 0; i < rule_count; ++i) model.rules.push_back(random_rule(dim, rng));
  return model;
}

// The printed two-input example rule: center (0.290, 0.292), inverse
// covariance [[7.4, 0.19], [0.19, 7.4]], consequent y = 0.03 + 0.17 x1 + 0.04 x2.
inline Rule example_rule() {
  Rule rule;
  rule.center = Eigen::Vector2d(0.290, 0.292);
  rule.inv_cov = Eigen::Matrix2d{{7.4, 0.19}, {0.19, 7.4}};
  rule.support = 1;
  rule.weights = Eigen::Vector3d(0.03, 0.17, 0.04);
  rule.rls_cov = 1e5 * Eigen::Matrix3d::Identity();
  return rule;
}

inline Model example_model() {
  Model model;
  model.config.input_dim = 2;
  model.rules.push_back(example_rule());
  return model;
}

}  // namespace panfis::testing
