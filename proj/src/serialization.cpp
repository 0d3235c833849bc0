#include "panfis/serialization.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace panfis {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json vector_to_json(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

ordered_json matrix_to_json(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::VectorXd vector_from_json(const ordered_json& arr, const char* what) {
  if (!arr.is_array()) throw std::runtime_error(std::string(what) + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  Eigen::Index i = 0;
  for (const auto& item : arr) {
    if (!item.is_number()) throw std::runtime_error(std::string(what) + " must hold numbers");
    v[i++] = item.get<double>();
  }
  return v;
}

Eigen::MatrixXd matrix_from_json(const ordered_json& rows, const char* what) {
  if (!rows.is_array()) throw std::runtime_error(std::string(what) + " must be an array of arrays");
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd m(n, n == 0 ? 0 : static_cast<Eigen::Index>(rows.front().size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m.cols())
      throw std::runtime_error(std::string(what) + " rows must be equal-length arrays");
    Eigen::Index j = 0;
    for (const auto& item : row) {
      if (!item.is_number()) throw std::runtime_error(std::string(what) + " must hold numbers");
      m(i, j++) = item.get<double>();
    }
    ++i;
  }
  return m;
}

template <typename T>
T require(const ordered_json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end())
    throw std::runtime_error(std::string("model document is missing key \"") + key + "\"");
  try {
    return it->get<T>();
  } catch (const ordered_json::exception&) {
    throw std::runtime_error(std::string("model document key \"") + key + "\" has the wrong type");
  }
}

const ordered_json& require_node(const ordered_json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end())
    throw std::runtime_error(std::string("model document is missing key \"") + key + "\"");
  return *it;
}

}  // namespace

std::string save_model(const Model& model) {
  validate_model(model);
  ordered_json doc;
  doc["format_version"] = kModelFormatVersion;
  ordered_json cfg;
  cfg["g1"] = model.config.g1;
  cfg["g2"] = model.config.g2;
  cfg["epsilon"] = model.config.epsilon;
  cfg["merge_threshold"] = model.config.merge_threshold;
  cfg["omega"] = model.config.omega;
  cfg["mahalanobis_r"] = model.config.mahalanobis_r;
  cfg["input_dim"] = model.config.input_dim;
  doc["config"] = std::move(cfg);
  doc["samples_seen"] = model.samples_seen;
  ordered_json rules = ordered_json::array();
  for (const Rule& rule : model.rules) {
    ordered_json r;
    r["center"] = vector_to_json(rule.center);
    r["inv_cov"] = matrix_to_json(rule.inv_cov);
    r["support"] = rule.support;
    r["weights"] = vector_to_json(rule.weights);
    r["rls_cov"] = matrix_to_json(rule.rls_cov);
    rules.push_back(std::move(r));
  }
  doc["rules"] = std::move(rules);
  if (model.has_range()) {
    ordered_json range;
    range["min"] = vector_to_json(model.range_min);
    range["max"] = vector_to_json(model.range_max);
    doc["input_range"] = std::move(range);
  }
  return doc.dump(2) + "\n";
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open \"" + path.string() + "\" for writing");
  out << save_model(model);
  if (!out) throw std::runtime_error("failed while writing \"" + path.string() + "\"");
}

Model load_model(const std::string& document) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(document);
  } catch (const ordered_json::parse_error& e) {
    throw std::runtime_error(std::string("model document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("model document must be a JSON object");

  const auto version = require<int64_t>(doc, "format_version");
  if (version != kModelFormatVersion) {
    std::ostringstream msg;
    msg << "unsupported model format_version " << version << " (expected "
        << kModelFormatVersion << ")";
    throw std::runtime_error(msg.str());
  }

  Model model;
  const ordered_json& cfg = require_node(doc, "config");
  if (!cfg.is_object()) throw std::runtime_error("model \"config\" must be an object");
  model.config.g1 = require<double>(cfg, "g1");
  model.config.g2 = require<double>(cfg, "g2");
  model.config.epsilon = require<double>(cfg, "epsilon");
  model.config.merge_threshold = require<double>(cfg, "merge_threshold");
  model.config.omega = require<double>(cfg, "omega");
  model.config.mahalanobis_r = require<double>(cfg, "mahalanobis_r");
  model.config.input_dim = require<int>(cfg, "input_dim");

  model.samples_seen = require<int64_t>(doc, "samples_seen");

  const ordered_json& rules = require_node(doc, "rules");
  if (!rules.is_array()) throw std::runtime_error("model \"rules\" must be an array");
  for (const auto& r : rules) {
    Rule rule;
    rule.center = vector_from_json(require_node(r, "center"), "rule.center");
    rule.inv_cov = matrix_from_json(require_node(r, "inv_cov"), "rule.inv_cov");
    rule.support = require<int64_t>(r, "support");
    rule.weights = vector_from_json(require_node(r, "weights"), "rule.weights");
    rule.rls_cov = matrix_from_json(require_node(r, "rls_cov"), "rule.rls_cov");
    model.rules.push_back(std::move(rule));
  }

  if (auto it = doc.find("input_range"); it != doc.end()) {
    model.range_min = vector_from_json(require_node(*it, "min"), "input_range.min");
    model.range_max = vector_from_json(require_node(*it, "max"), "input_range.max");
  }

  validate_model(model);
  return model;
}

Model load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file \"" + path.string() + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

}  // namespace panfis
