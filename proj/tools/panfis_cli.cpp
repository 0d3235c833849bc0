// Command-line front end: feature extraction, the two experiment modes, and
// a readable dump of a saved rule base.
#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include "panfis/harness.hpp"
#include "panfis/inference.hpp"
#include "panfis/serialization.hpp"

namespace {

struct ConfigFlags {
  std::string config_file;
  double g1 = 0.0, g2 = 0.0, epsilon = 0.0, merge_threshold = 0.0, omega = 0.0,
         r = 0.0;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& flags) {
  cmd->add_option("--config", flags.config_file, "key=value config file");
  cmd->add_option("--g1", flags.g1, "rule growth threshold");
  cmd->add_option("--g2", flags.g2, "rule pruning threshold");
  cmd->add_option("--epsilon", flags.epsilon, "completeness level for new-rule widths");
  cmd->add_option("--merge-threshold", flags.merge_threshold,
                  "fuzzy-set similarity needed to merge");
  cmd->add_option("--omega", flags.omega, "initial RLS covariance scale");
  cmd->add_option("--r", flags.r, "Mahalanobis radius for fuzzy-set extraction");
}

panfis::Config resolve_config(const CLI::App* cmd, const ConfigFlags& flags) {
  panfis::Config config;
  if (!flags.config_file.empty())
    config = panfis::load_config_file(flags.config_file, config);
  if (cmd->count("--g1")) config.g1 = flags.g1;
  if (cmd->count("--g2")) config.g2 = flags.g2;
  if (cmd->count("--epsilon")) config.epsilon = flags.epsilon;
  if (cmd->count("--merge-threshold")) config.merge_threshold = flags.merge_threshold;
  if (cmd->count("--omega")) config.omega = flags.omega;
  if (cmd->count("--r")) config.mahalanobis_r = flags.r;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"streaming evolving-fuzzy predictor for vibration features"};
  app.require_subcommand(1);

  // extract
  std::string raw_path, feature_out;
  panfis::ExtractOptions extract_opts;
  auto* extract = app.add_subcommand("extract", "raw vibration CSV -> feature table");
  extract->add_option("input", raw_path, "raw CSV with a value column")->required();
  extract->add_option("output", feature_out, "feature CSV to write")->required();
  extract->add_option("--window-size", extract_opts.window_size,
                      "chunk rows into fixed-size windows (when no window column)");
  extract->add_option("--bins", extract_opts.bins, "histogram bins for entropy");

  // run-direct / run-timeseries
  std::string data_path, target;
  int split = 108;
  ConfigFlags flags;
  panfis::RunPaths paths;
  auto add_run_options = [&](CLI::App* cmd, bool with_split) {
    cmd->add_option("dataset", data_path, "feature table CSV")->required();
    cmd->add_option("--target", target, "predicted feature name")->required();
    if (with_split)
      cmd->add_option("--split", split, "train row count (rest is test)");
    add_config_flags(cmd, flags);
    cmd->add_option("--model-out", paths.model_out, "write the trained model JSON");
    cmd->add_option("--trace-out", paths.trace_out, "write the per-step trace CSV");
    cmd->add_option("--report-out", paths.report_out, "write the report JSON");
  };
  auto* direct = app.add_subcommand(
      "run-direct", "predict one feature from the other eight, train/test split");
  add_run_options(direct, true);
  auto* timeseries = app.add_subcommand(
      "run-timeseries", "one-step-ahead prediction of one feature from two lags");
  add_run_options(timeseries, false);

  // show-rules
  std::string model_path;
  double show_r = 0.0;
  auto* show = app.add_subcommand("show-rules", "print a readable rule listing");
  show->add_option("model", model_path, "model JSON written by --model-out")->required();
  show->add_option("--r", show_r, "Mahalanobis radius (default: model config)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (extract->parsed()) {
      const int windows = panfis::extract_to_csv(raw_path, feature_out, extract_opts);
      std::cout << "wrote " << windows << " feature rows to " << feature_out << "\n";
      return 0;
    }
    if (direct->parsed()) {
      const panfis::RunResult result =
          panfis::run_direct(data_path, target, resolve_config(direct, flags), split, paths);
      std::cout << panfis::report_to_json(result.report);
      return 0;
    }
    if (timeseries->parsed()) {
      const panfis::RunResult result =
          panfis::run_timeseries(data_path, target, resolve_config(timeseries, flags), paths);
      std::cout << panfis::report_to_json(result.report);
      return 0;
    }
    if (show->parsed()) {
      const panfis::Model model = panfis::load_model_file(model_path);
      const double r = show->count("--r") ? show_r : model.config.mahalanobis_r;
      std::cout << panfis::render_rules(model, r);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
