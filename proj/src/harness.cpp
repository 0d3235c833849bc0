#include "panfis/harness.hpp"

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "panfis/inference.hpp"
#include "panfis/structure.hpp"

namespace panfis {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open \"" + path.string() + "\" for writing");
  out << text;
  if (!out) throw std::runtime_error("failed while writing \"" + path.string() + "\"");
}

std::string variable_name(const std::vector<std::string>& names, std::size_t j) {
  if (!names.empty()) return names[j];
  return "x" + std::to_string(j + 1);
}

std::string polynomial(const Eigen::VectorXd& weights,
                       const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "y = " << format_double(weights[0]);
  for (Eigen::Index j = 1; j < weights.size(); ++j) {
    const double w = weights[j];
    out << (w < 0.0 ? " - " : " + ") << format_double(std::abs(w)) << "*"
        << variable_name(names, static_cast<std::size_t>(j - 1));
  }
  return out.str();
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

void emit_artifacts(RunResult& result, const RunPaths& paths) {
  result.report.trace_path = paths.trace_out.string();
  if (!paths.trace_out.empty()) write_trace(result.steps, paths.trace_out);
  if (!paths.report_out.empty()) write_report(result.report, paths.report_out);
  if (!paths.model_out.empty()) save_model(result.model, paths.model_out.string());
}

}  // namespace

std::string fuzzy_set_cell(const std::vector<int>& counts) {
  std::ostringstream out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i > 0) out << "-";
    out << counts[i];
  }
  return out.str();
}

std::string report_to_json(const RunReport& report) {
  ordered_json doc;
  doc["mode"] = report.mode;
  doc["target"] = report.target;
  doc["data"] = report.data_path;
  if (report.mode == "direct") doc["split"] = report.split;
  doc["train_samples"] = report.train_samples;
  doc["test_samples"] = report.test_samples;
  doc["rmse"] = report.rmse;
  doc["rule_count"] = report.rule_count;
  doc["fuzzy_sets"] = fuzzy_set_cell(report.fuzzy_set_counts);
  doc["wall_time_seconds"] = report.wall_time_seconds;
  ordered_json cfg;
  cfg["g1"] = report.config.g1;
  cfg["g2"] = report.config.g2;
  cfg["epsilon"] = report.config.epsilon;
  cfg["merge_threshold"] = report.config.merge_threshold;
  cfg["omega"] = report.config.omega;
  cfg["mahalanobis_r"] = report.config.mahalanobis_r;
  cfg["input_dim"] = report.config.input_dim;
  doc["config"] = std::move(cfg);
  doc["trace"] = report.trace_path;
  return doc.dump(2) + "\n";
}

void write_report(const RunReport& report, const std::filesystem::path& path) {
  write_text(report_to_json(report), path);
}

std::string trace_to_csv(const std::vector<TrainStep>& steps) {
  std::ostringstream out;
  out << "n,y,target,abs_error,event,rule_count\n";
  for (const TrainStep& s : steps) {
    out << s.sample_index << "," << format_double(s.prediction) << ","
        << format_double(s.target) << "," << format_double(s.abs_error) << ","
        << to_string(s.event) << "," << s.rule_count_after << "\n";
  }
  return out.str();
}

void write_trace(const std::vector<TrainStep>& steps, const std::filesystem::path& path) {
  write_text(trace_to_csv(steps), path);
}

RunResult run_direct(const std::filesystem::path& dataset,
                     const std::string& target_feature, const Config& config,
                     int split, const RunPaths& paths) {
  const std::vector<Eigen::VectorXd> table = read_feature_table(dataset);
  const int t = static_cast<int>(table.size());
  if (t < 2) throw std::invalid_argument("direct mode needs at least 2 rows");
  if (split < 1) throw std::invalid_argument("empty train split");
  if (split >= t) throw std::invalid_argument("empty test split");

  // Scale with statistics of the training range only; test rows may leave
  // [0,1] and that degradation signal is kept.
  const std::vector<Eigen::VectorXd> fit_rows(table.begin(), table.begin() + split);
  const Normalizer norm = fit_normalizer(fit_rows);
  std::vector<Eigen::VectorXd> scaled;
  scaled.reserve(table.size());
  for (const Eigen::VectorXd& row : table) scaled.push_back(apply_normalizer(norm, row));

  const DirectDataset ds = build_direct_dataset(scaled, target_feature, split);

  RunResult result;
  result.model.config = config;
  result.model.config.input_dim = static_cast<int>(ds.train.front().x.size());
  result.model.config.validate();

  const double t0 = now_seconds();
  result.steps = fit_stream(result.model, ds.train);
  const double t1 = now_seconds();

  RunReport& report = result.report;
  report.mode = "direct";
  report.target = target_feature;
  report.data_path = dataset.string();
  report.split = split;
  report.train_samples = static_cast<int>(ds.train.size());
  report.test_samples = static_cast<int>(ds.test.size());
  report.rmse = evaluate(result.model, ds.test);
  report.rule_count = static_cast<int>(result.model.rules.size());
  report.fuzzy_set_counts = merged_rule_view(result.model).counts_per_dim();
  report.wall_time_seconds = t1 - t0;
  report.config = result.model.config;

  emit_artifacts(result, paths);
  return result;
}

RunResult run_timeseries(const std::filesystem::path& dataset,
                         const std::string& target_feature, const Config& config,
                         const RunPaths& paths) {
  const std::vector<Eigen::VectorXd> table = read_feature_table(dataset);
  const int target = feature_index(target_feature);

  std::vector<double> series;
  series.reserve(table.size());
  for (const Eigen::VectorXd& row : table) series.push_back(row[target]);
  if (series.size() < 3)
    throw std::invalid_argument("time-series mode needs at least 3 points");

  double lo = series.front(), hi = series.front();
  for (double v : series) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double range = hi - lo;
  for (double& v : series) v = range > 0.0 ? (v - lo) / range : 0.5;

  const std::vector<Sample> samples = build_timeseries_dataset(series);

  RunResult result;
  result.model.config = config;
  result.model.config.input_dim = 2;
  result.model.config.validate();

  const double t0 = now_seconds();
  result.steps = fit_stream(result.model, samples);
  const double t1 = now_seconds();

  RunReport& report = result.report;
  report.mode = "timeseries";
  report.target = target_feature;
  report.data_path = dataset.string();
  report.train_samples = static_cast<int>(samples.size());
  report.test_samples = 0;
  report.rmse = one_step_rmse(result.steps);
  report.rule_count = static_cast<int>(result.model.rules.size());
  report.fuzzy_set_counts = merged_rule_view(result.model).counts_per_dim();
  report.wall_time_seconds = t1 - t0;
  report.config = result.model.config;

  emit_artifacts(result, paths);
  return result;
}

std::string render_rules(const Model& model, double r,
                         const std::vector<std::string>& input_names) {
  if (model.rules.empty()) return "no rules\n";
  if (!input_names.empty() &&
      input_names.size() != static_cast<std::size_t>(model.config.input_dim))
    throw std::invalid_argument("input_names do not match the input dimension");

  const MergedRuleView view = merged_rule_view(model, r);
  std::ostringstream out;

  out << "fuzzy sets (r = " << format_double(r) << ", merge threshold = "
      << format_double(model.config.merge_threshold) << "):\n";
  for (std::size_t d = 0; d < view.sets.size(); ++d) {
    out << "  " << variable_name(input_names, d) << ":";
    for (std::size_t k = 0; k < view.sets[d].size(); ++k) {
      const FuzzySet& s = view.sets[d][k];
      out << " S" << (k + 1) << "=(c=" << format_double(s.center)
          << ", sigma=" << format_double(s.width) << ")";
    }
    out << "\n";
  }

  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    const Rule& rule = model.rules[i];
    out << "rule " << (i + 1) << " (support " << rule.support << "):\n";
    out << "  center = [";
    for (Eigen::Index j = 0; j < rule.center.size(); ++j)
      out << (j > 0 ? ", " : "") << format_double(rule.center[j]);
    out << "]\n  inv_cov =\n";
    for (Eigen::Index a = 0; a < rule.inv_cov.rows(); ++a) {
      out << "    [";
      for (Eigen::Index b = 0; b < rule.inv_cov.cols(); ++b)
        out << (b > 0 ? ", " : "") << format_double(rule.inv_cov(a, b));
      out << "]\n";
    }
    out << "  IF ";
    for (std::size_t d = 0; d < view.sets.size(); ++d) {
      const int set_index = view.set_of_rule[i][d];
      const FuzzySet& s = view.sets[d][static_cast<std::size_t>(set_index)];
      if (d > 0) out << " AND ";
      out << variable_name(input_names, d) << " is close to ("
          << format_double(s.center) << ", " << format_double(s.width) << ") [S"
          << (set_index + 1) << "]";
    }
    out << "\n  THEN " << polynomial(rule.weights, input_names) << "\n";
  }
  return out.str();
}

int extract_to_csv(const std::filesystem::path& raw_csv,
                   const std::filesystem::path& out_csv,
                   const ExtractOptions& opts) {
  const CsvTable table = read_csv(raw_csv);
  const int value_col = table.require_column("value");
  const int window_col = table.column("window");

  std::vector<std::pair<std::string, std::vector<double>>> windows;
  if (window_col >= 0) {
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
      const std::string& id = table.rows[row][static_cast<std::size_t>(window_col)];
      if (windows.empty() || windows.back().first != id) windows.push_back({id, {}});
      windows.back().second.push_back(table.number(row, value_col));
    }
  } else if (opts.window_size > 0) {
    const std::size_t size = static_cast<std::size_t>(opts.window_size);
    for (std::size_t row = 0; row + size <= table.rows.size(); row += size) {
      windows.push_back({std::to_string(windows.size()), {}});
      for (std::size_t k = 0; k < size; ++k)
        windows.back().second.push_back(table.number(row + k, value_col));
    }
  } else {
    windows.push_back({"0", {}});
    for (std::size_t row = 0; row < table.rows.size(); ++row)
      windows.back().second.push_back(table.number(row, value_col));
  }
  if (windows.empty()) throw std::invalid_argument("no complete windows in input");

  std::vector<FeatureVector> features;
  features.reserve(windows.size());
  for (auto& [id, values] : windows)
    features.push_back(extract_features(values, opts.bins, id));

  write_text(feature_table_to_csv(features), out_csv);
  return static_cast<int>(features.size());
}

std::vector<Eigen::VectorXd> read_feature_table(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  std::array<int, 9> cols{};
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
    cols[i] = table.require_column(kFeatureNames[i]);

  std::vector<Eigen::VectorXd> rows;
  rows.reserve(table.rows.size());
  for (std::size_t row = 0; row < table.rows.size(); ++row) {
    Eigen::VectorXd v(9);
    for (std::size_t i = 0; i < cols.size(); ++i)
      v[static_cast<Eigen::Index>(i)] = table.number(row, cols[i]);
    rows.push_back(std::move(v));
  }
  return rows;
}

std::string feature_table_to_csv(const std::vector<FeatureVector>& rows) {
  std::ostringstream out;
  out << "window";
  for (const char* name : kFeatureNames) out << "," << name;
  out << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const FeatureVector& f = rows[i];
    out << (f.window_id.empty() ? std::to_string(i) : f.window_id);
    const Eigen::VectorXd v = f.values();
    for (Eigen::Index j = 0; j < v.size(); ++j) out << "," << format_double(v[j]);
    out << "\n";
  }
  return out.str();
}

Config load_config_file(const std::filesystem::path& path, Config base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file \"" + path.string() + "\"");
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string text;
    for (char c : line)
      if (c != ' ' && c != '\t' && c != '\r') text.push_back(c);
    if (text.empty()) continue;

    const auto eq = text.find('=');
    std::ostringstream where;
    where << path.string() << " line " << line_number;
    if (eq == std::string::npos)
      throw std::invalid_argument(where.str() + ": expected key=value");
    const std::string key = text.substr(0, eq);
    double value = 0.0;
    try {
      value = std::stod(text.substr(eq + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument(where.str() + ": \"" + text.substr(eq + 1) +
                                  "\" is not a number");
    }

    if (key == "g1") base.g1 = value;
    else if (key == "g2") base.g2 = value;
    else if (key == "epsilon") base.epsilon = value;
    else if (key == "merge_threshold") base.merge_threshold = value;
    else if (key == "omega") base.omega = value;
    else if (key == "r") base.mahalanobis_r = value;
    else throw std::invalid_argument(where.str() + ": unknown key \"" + key + "\"");
  }
  return base;
}

}  // namespace panfis
