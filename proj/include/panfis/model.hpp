#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "panfis/config.hpp"

namespace panfis {

/// One-dimensional Gaussian set extracted from a rule for display.
struct FuzzySet {
  double center = 0.0;
  double width = 1.0;  // > 0
};

/// One TSK rule: multivariate Gaussian premise (center + inverse covariance),
/// support count, and a first-order linear consequent with its local RLS state.
struct Rule {
  Eigen::VectorXd center;   // length u
  Eigen::MatrixXd inv_cov;  // u x u, symmetric positive definite
  std::int64_t support = 0;
  Eigen::VectorXd weights;  // length u+1, intercept first
  Eigen::MatrixXd rls_cov;  // (u+1) x (u+1), symmetric positive definite

  int dim() const { return static_cast<int>(center.size()); }
};

/// The evolving learner state: configuration, ordered rule base, sample
/// counter, and the running per-dimension input range (empty until the first
/// sample; it feeds the width floor of newly spawned rules).
struct Model {
  Config config;
  std::vector<Rule> rules;
  std::int64_t samples_seen = 0;
  Eigen::VectorXd range_min;
  Eigen::VectorXd range_max;

  Model() = default;
  explicit Model(Config cfg) : config(cfg) {}

  int dim() const { return config.input_dim; }
  bool has_range() const { return range_min.size() > 0; }
  void observe_range(const Eigen::VectorXd& x);
};

constexpr double kSymmetryTol = 1e-10;

bool is_symmetric(const Eigen::MatrixXd& m, double tol = kSymmetryTol);
// Symmetric eigenvalue check: all eigenvalues strictly positive.
bool is_positive_definite(const Eigen::MatrixXd& m);

// Throw std::invalid_argument with a diagnostic on any invariant violation.
void validate_rule(const Rule& rule, int expected_dim);
void validate_model(const Model& model);

// Exact field-by-field equality (used by round-trip tests).
bool operator==(const Rule& a, const Rule& b);
bool operator==(const Model& a, const Model& b);

}  // namespace panfis
