#pragma once

namespace panfis {

/// Global learner configuration. The growing/pruning thresholds g1 and g2
/// are the main tuning knobs and are usually chosen close to each other.
struct Config {
  double g1 = 0.01;              // rule-growing (conflict) threshold, >= 0
  double g2 = 0.01;              // rule-pruning threshold, >= 0
  double epsilon = 0.6;          // completeness level for new-rule widths, in (0,1)
  double merge_threshold = 0.8;  // fuzzy-set similarity cutoff, in (0,1)
  double omega = 1e5;            // initial RLS covariance scale, > 0
  double mahalanobis_r = 1.0;    // ellipsoid cut radius for fuzzy-set extraction, > 0
  int input_dim = 0;             // input dimension u, >= 1

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

bool operator==(const Config& a, const Config& b);

}  // namespace panfis
