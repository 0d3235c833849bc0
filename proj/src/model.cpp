#include "panfis/model.hpp"

#include <Eigen/Eigenvalues>
#include <sstream>
#include <stdexcept>
#include <string>

namespace panfis {

namespace {

void fail(const std::string& what) { throw std::invalid_argument(what); }

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

void Config::validate() const {
  if (!(g1 >= 0.0)) fail("config.g1 must be >= 0");
  if (!(g2 >= 0.0)) fail("config.g2 must be >= 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail("config.epsilon must be in (0,1)");
  if (!(merge_threshold > 0.0 && merge_threshold < 1.0))
    fail("config.merge_threshold must be in (0,1)");
  if (!(omega > 0.0)) fail("config.omega must be > 0");
  if (!(mahalanobis_r > 0.0)) fail("config.mahalanobis_r must be > 0");
  if (input_dim < 1) fail("config.input_dim must be >= 1");
}

bool operator==(const Config& a, const Config& b) {
  return a.g1 == b.g1 && a.g2 == b.g2 && a.epsilon == b.epsilon &&
         a.merge_threshold == b.merge_threshold && a.omega == b.omega &&
         a.mahalanobis_r == b.mahalanobis_r && a.input_dim == b.input_dim;
}

void Model::observe_range(const Eigen::VectorXd& x) {
  if (!has_range()) {
    range_min = x;
    range_max = x;
    return;
  }
  range_min = range_min.cwiseMin(x);
  range_max = range_max.cwiseMax(x);
}

bool is_symmetric(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

bool is_positive_definite(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) return false;
  return solver.eigenvalues().minCoeff() > 0.0;
}

void validate_rule(const Rule& rule, int expected_dim) {
  const int u = rule.dim();
  if (u != expected_dim) {
    std::ostringstream msg;
    msg << "rule dimension mismatch: center has " << u << " entries, expected "
        << expected_dim;
    fail(msg.str());
  }
  if (!all_finite(rule.center)) fail("rule.center has non-finite entries");
  if (rule.inv_cov.rows() != u || rule.inv_cov.cols() != u)
    fail("rule.inv_cov shape does not match the input dimension");
  if (!all_finite(rule.inv_cov)) fail("rule.inv_cov has non-finite entries");
  if (!is_symmetric(rule.inv_cov)) fail("rule.inv_cov is not symmetric");
  if (!is_positive_definite(rule.inv_cov))
    fail("rule.inv_cov is not positive definite");
  if (rule.support < 1) fail("rule.support must be >= 1");
  if (rule.weights.size() != u + 1)
    fail("rule.weights must have u+1 entries (intercept first)");
  if (!all_finite(rule.weights)) fail("rule.weights has non-finite entries");
  if (rule.rls_cov.rows() != u + 1 || rule.rls_cov.cols() != u + 1)
    fail("rule.rls_cov must be (u+1) x (u+1)");
  if (!all_finite(rule.rls_cov)) fail("rule.rls_cov has non-finite entries");
  if (!is_symmetric(rule.rls_cov)) fail("rule.rls_cov is not symmetric");
  if (!is_positive_definite(rule.rls_cov))
    fail("rule.rls_cov is not positive definite");
}

void validate_model(const Model& model) {
  model.config.validate();
  if (model.samples_seen < 0) fail("samples_seen must be >= 0");
  const int u = model.config.input_dim;
  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    try {
      validate_rule(model.rules[i], u);
    } catch (const std::invalid_argument& e) {
      std::ostringstream msg;
      msg << "rule " << i << ": " << e.what();
      fail(msg.str());
    }
  }
  if (model.range_min.size() != model.range_max.size())
    fail("input_range min/max lengths differ");
  if (model.has_range()) {
    if (model.range_min.size() != u) fail("input_range length must equal input_dim");
    if (((model.range_max - model.range_min).array() < 0.0).any())
      fail("input_range max must be >= min");
  }
}

bool operator==(const Rule& a, const Rule& b) {
  return a.center.size() == b.center.size() && a.center == b.center &&
         a.inv_cov.rows() == b.inv_cov.rows() && a.inv_cov == b.inv_cov &&
         a.support == b.support && a.weights.size() == b.weights.size() &&
         a.weights == b.weights && a.rls_cov.rows() == b.rls_cov.rows() &&
         a.rls_cov == b.rls_cov;
}

bool operator==(const Model& a, const Model& b) {
  return a.config == b.config && a.samples_seen == b.samples_seen &&
         a.rules == b.rules && a.range_min.size() == b.range_min.size() &&
         a.range_min == b.range_min && a.range_max == b.range_max;
}

}  // namespace panfis
