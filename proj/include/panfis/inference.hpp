#pragma once

#include <Eigen/Dense>
#include <vector>

#include "panfis/model.hpp"

namespace panfis {

/// Rule activations at one input: raw firing strengths R_i in (0, 1] and
/// their normalized counterparts phi_i (partition of unity).
struct Firings {
  Eigen::VectorXd raw;
  Eigen::VectorXd normalized;

  int count() const { return static_cast<int>(raw.size()); }
};

struct Prediction {
  double y = 0.0;
  Firings firings;  // returned so the caller evaluates each premise once
};

/// exp(-(x-C) Sigma^-1 (x-C)^T). Equals 1 exactly at the center.
double firing_strength(const Rule& rule, const Eigen::VectorXd& x);

/// phi_i = R_i / sum_j R_j. Throws on empty or all-zero input.
Eigen::VectorXd normalize_firings(const Eigen::VectorXd& raw);

/// Raw and normalized firings of every rule. Normalization is done in log
/// space so the partition of unity survives even when every raw strength
/// underflows.
Firings compute_firings(const Model& model, const Eigen::VectorXd& x);

/// y = sum_i phi_i * (x_e . W_i) with extended input x_e = [1, x].
Prediction predict(const Model& model, const Eigen::VectorXd& x);

/// det(Sigma) computed as 1/det(Sigma^-1) via Cholesky of the stored inverse;
/// the covariance itself is never materialized.
double rule_volume(const Rule& rule);
double rule_log_volume(const Rule& rule);

/// Axis cut of the ellipsoid {v : v Sigma^-1 v^T = r^2}: per dimension j the
/// set is (C_j, r / sqrt((Sigma^-1)_jj)).
std::vector<FuzzySet> extract_fuzzy_sets(const Rule& rule, double r);

}  // namespace panfis
