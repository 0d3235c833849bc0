#include "panfis/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace panfis {

Eigen::VectorXd FeatureVector::values() const {
  Eigen::VectorXd v(9);
  v << rms, variance, skewness, kurtosis, shape_factor, crest_factor, entropy,
      histogram_upper, histogram_lower;
  return v;
}

int feature_index(const std::string& name) {
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
    if (name == kFeatureNames[i]) return static_cast<int>(i);
  throw std::invalid_argument("unknown feature \"" + name + "\"");
}

FeatureVector extract_features(std::span<const double> window, int bins,
                               std::string window_id) {
  const std::size_t n = window.size();
  if (n < 8) throw std::invalid_argument("window must hold at least 8 samples");
  if (bins < 2) throw std::invalid_argument("bins must be >= 2");
  for (double v : window)
    if (!std::isfinite(v)) throw std::invalid_argument("window has non-finite samples");

  const double nd = static_cast<double>(n);
  double sum = 0.0, sum_sq = 0.0, sum_abs = 0.0;
  double lo = window[0], hi = window[0], peak = 0.0;
  for (double v : window) {
    sum += v;
    sum_sq += v * v;
    sum_abs += std::abs(v);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    peak = std::max(peak, std::abs(v));
  }
  const double mean = sum / nd;

  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : window) {
    const double d = v - mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= nd;
  m3 /= nd;
  m4 /= nd;

  FeatureVector f;
  f.window_id = std::move(window_id);
  f.rms = std::sqrt(sum_sq / nd);
  f.variance = m2;
  f.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  f.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
  f.shape_factor = f.rms > 0.0 ? f.rms / (sum_abs / nd) : 0.0;
  f.crest_factor = f.rms > 0.0 ? peak / f.rms : 0.0;

  const double span = hi - lo;
  if (span > 0.0) {
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bins), 0);
    const double width = span / static_cast<double>(bins);
    for (double v : window) {
      auto b = static_cast<std::size_t>((v - lo) / width);
      counts[std::min(b, counts.size() - 1)] += 1;
    }
    double entropy = 0.0;
    for (std::int64_t c : counts) {
      if (c == 0) continue;
      const double p = static_cast<double>(c) / nd;
      entropy -= p * std::log(p);
    }
    f.entropy = entropy;
    const double delta = span / static_cast<double>(bins - 1);
    f.histogram_lower = lo - 0.5 * delta;
    f.histogram_upper = hi + 0.5 * delta;
  } else {
    f.entropy = 0.0;  // single occupied bin
    f.histogram_lower = lo;
    f.histogram_upper = hi;
  }
  return f;
}

Normalizer fit_normalizer(const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.size() < 2)
    throw std::invalid_argument("normalizer needs at least 2 vectors to fit");
  Normalizer n;
  n.min = vectors.front();
  n.max = vectors.front();
  for (const Eigen::VectorXd& v : vectors) {
    if (v.size() != n.min.size())
      throw std::invalid_argument("normalizer fit vectors differ in dimension");
    n.min = n.min.cwiseMin(v);
    n.max = n.max.cwiseMax(v);
  }
  return n;
}

Eigen::VectorXd apply_normalizer(const Normalizer& n, const Eigen::VectorXd& v) {
  if (v.size() != n.min.size())
    throw std::invalid_argument("vector does not match normalizer dimension");
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double range = n.max[i] - n.min[i];
    out[i] = range > 0.0 ? (v[i] - n.min[i]) / range : 0.5;
  }
  return out;
}

DirectDataset build_direct_dataset(const std::vector<Eigen::VectorXd>& table,
                                   const std::string& target_feature, int split) {
  const int t = static_cast<int>(table.size());
  if (t < 2) throw std::invalid_argument("direct mode needs at least 2 rows");
  if (split < 1 || split >= t)
    throw std::invalid_argument(split >= t ? "empty test split"
                                           : "empty train split");
  const int target = feature_index(target_feature);

  DirectDataset ds;
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
    if (static_cast<int>(i) != target) ds.input_names.emplace_back(kFeatureNames[i]);

  for (int row = 0; row < t; ++row) {
    const Eigen::VectorXd& full = table[static_cast<std::size_t>(row)];
    if (full.size() != static_cast<Eigen::Index>(kFeatureNames.size()))
      throw std::invalid_argument("feature rows must have 9 entries");
    Sample s;
    s.x.resize(full.size() - 1);
    Eigen::Index k = 0;
    for (Eigen::Index j = 0; j < full.size(); ++j)
      if (j != target) s.x[k++] = full[j];
    s.target = full[target];
    (row < split ? ds.train : ds.test).push_back(std::move(s));
  }
  return ds;
}

std::vector<Sample> build_timeseries_dataset(const std::vector<double>& series) {
  if (series.size() < 3)
    throw std::invalid_argument("time-series mode needs at least 3 points");
  std::vector<Sample> samples;
  samples.reserve(series.size() - 2);
  for (std::size_t n = 2; n < series.size(); ++n) {
    Sample s;
    s.x.resize(2);
    s.x << series[n - 1], series[n - 2];
    s.target = series[n];
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace panfis
