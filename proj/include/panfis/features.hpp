#pragma once

#include <Eigen/Dense>
#include <array>
#include <span>
#include <string>
#include <vector>

#include "panfis/learner.hpp"

namespace panfis {

/// The nine time-domain features of one vibration window. Degenerate
/// conventions: zero variance reports skewness = kurtosis = 0; zero rms
/// reports shape_factor = crest_factor = 0. Kurtosis is the raw standardized
/// fourth moment (Gaussian -> 3).
struct FeatureVector {
  double rms = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  double shape_factor = 0.0;
  double crest_factor = 0.0;
  double entropy = 0.0;
  double histogram_upper = 0.0;
  double histogram_lower = 0.0;
  std::string window_id;

  Eigen::VectorXd values() const;  // the nine features, fixed order
};

inline constexpr std::array<const char*, 9> kFeatureNames = {
    "rms",          "variance",     "skewness", "kurtosis",
    "shape_factor", "crest_factor", "entropy",  "histogram_upper",
    "histogram_lower"};

/// Index of a feature name in kFeatureNames; throws on unknown names.
int feature_index(const std::string& name);

/// Extracts the nine features from a window of at least 8 finite samples.
/// Entropy uses a `bins`-bin histogram (natural log, empty bins skipped);
/// histogram bounds are min - d/2 and max + d/2 with d = (max-min)/(bins-1).
FeatureVector extract_features(std::span<const double> window, int bins = 16,
                               std::string window_id = {});

/// Per-feature min/max observed over the fitting range.
struct Normalizer {
  Eigen::VectorXd min;
  Eigen::VectorXd max;
};

/// Fit over >= 2 vectors of equal dimension.
Normalizer fit_normalizer(const std::vector<Eigen::VectorXd>& vectors);

/// (v - min)/(max - min), unclamped; zero-range features map to 0.5.
Eigen::VectorXd apply_normalizer(const Normalizer& n, const Eigen::VectorXd& v);

struct DirectDataset {
  std::vector<Sample> train;
  std::vector<Sample> test;
  std::vector<std::string> input_names;  // the 8 non-target features, in order
};

/// Per row: x = the 8 other features, target = the named feature. Rows before
/// `split` go to train, the rest to test (both must be non-empty).
DirectDataset build_direct_dataset(const std::vector<Eigen::VectorXd>& table,
                                   const std::string& target_feature, int split);

/// Lag-2 embedding: samples (x = [y_{n-1}, y_{n-2}], target = y_n), n ordered.
std::vector<Sample> build_timeseries_dataset(const std::vector<double>& series);

}  // namespace panfis
