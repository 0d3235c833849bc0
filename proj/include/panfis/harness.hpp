#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "panfis/csv.hpp"
#include "panfis/features.hpp"
#include "panfis/learner.hpp"
#include "panfis/model.hpp"
#include "panfis/serialization.hpp"

namespace panfis {

/// Optional artifact destinations for one experiment run.
struct RunPaths {
  std::filesystem::path report_out;  // empty: not written
  std::filesystem::path trace_out;
  std::filesystem::path model_out;
};

/// Table-style experiment summary: RMSE, rule count, per-dimension fuzzy-set
/// counts after merging, and training wall time (fit_stream only).
struct RunReport {
  std::string mode;  // "direct" | "timeseries"
  std::string target;
  std::string data_path;
  int split = 0;  // direct mode only
  int train_samples = 0;
  int test_samples = 0;
  double rmse = 0.0;
  int rule_count = 0;
  std::vector<int> fuzzy_set_counts;
  double wall_time_seconds = 0.0;
  Config config;
  std::string trace_path;
};

/// "k-k" notation: one merged-set count per input dimension.
std::string fuzzy_set_cell(const std::vector<int>& counts);

std::string report_to_json(const RunReport& report);
void write_report(const RunReport& report, const std::filesystem::path& path);

std::string trace_to_csv(const std::vector<TrainStep>& steps);
void write_trace(const std::vector<TrainStep>& steps, const std::filesystem::path& path);

/// Result of a run: the report plus the raw per-step trace and final model.
struct RunResult {
  RunReport report;
  std::vector<TrainStep> steps;
  Model model;
};

/// Trains on the first `split` rows of the feature table (normalization is
/// fitted on that range only), freezes the model, and reports test RMSE.
RunResult run_direct(const std::filesystem::path& dataset,
                     const std::string& target_feature, const Config& config,
                     int split, const RunPaths& paths = {});

/// Lag-2 one-step-ahead prediction over the full series of the target
/// feature; RMSE is taken from the predictions recorded before each update.
RunResult run_timeseries(const std::filesystem::path& dataset,
                         const std::string& target_feature, const Config& config,
                         const RunPaths& paths = {});

/// Human-readable listing: per rule the multivariate premise and consequent
/// polynomial, then the extracted-and-merged per-dimension fuzzy sets.
std::string render_rules(const Model& model, double r,
                         const std::vector<std::string>& input_names = {});

struct ExtractOptions {
  int window_size = 0;  // > 0: chunk the value column into fixed-size windows
  int bins = 16;
};

/// Raw vibration CSV -> feature table CSV; one row per window. Windows come
/// from a `window` id column when present, otherwise from --window-size
/// chunking (or the whole file as one window). Returns the window count.
int extract_to_csv(const std::filesystem::path& raw_csv,
                   const std::filesystem::path& out_csv,
                   const ExtractOptions& opts = {});

/// Feature-table IO: the nine named columns (matched by header) plus an index
/// column named `window`.
std::vector<Eigen::VectorXd> read_feature_table(const std::filesystem::path& path);
std::string feature_table_to_csv(const std::vector<FeatureVector>& rows);

/// Flat key=value config file (g1, g2, epsilon, merge_threshold, omega, r).
/// Unknown keys are an error; '#' starts a comment.
Config load_config_file(const std::filesystem::path& path, Config base = {});

}  // namespace panfis
