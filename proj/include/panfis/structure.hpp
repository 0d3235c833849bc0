#pragma once

#include <Eigen/Dense>
#include <vector>

#include "panfis/inference.hpp"
#include "panfis/model.hpp"

namespace panfis {

/// Outcome of the datum-significance growth test.
struct GrowthDecision {
  double significance = 0.0;  // D_{C+1}
  bool grew = false;
  int winner_index = -1;  // most-firing existing rule; -1 when the base is empty
};

/// Premise of the hypothetical (C+1)-th rule centered at x. Widths follow the
/// completeness principle: sigma_j = dist_j / sqrt(ln(1/epsilon)) against the
/// nearest existing center, with a floor derived from the observed input range
/// for degenerate distances and for the first rule.
Rule hypothetical_rule(const Model& model, const Eigen::VectorXd& x);

/// D_{C+1} = |e| * V_{C+1}^u / sum_i V_i^u over existing rules plus the
/// hypothetical one. Volume powers are combined in log space.
GrowthDecision datum_significance(const Model& model, const Eigen::VectorXd& x,
                                  double abs_error);
GrowthDecision datum_significance(const Model& model, const Eigen::VectorXd& x,
                                  double abs_error, const Firings& firings);

/// Appends the hypothetical rule with support 1, consequent weights copied
/// from the winner (zeros when the base was empty) and rls_cov = omega * I.
void spawn_rule(Model& model, const Eigen::VectorXd& x, int winner_index);
void spawn_rule(Model& model, const Eigen::VectorXd& x);

enum class AdaptOutcome {
  applied,
  rejected_non_spd,  // numeric breakdown; the rule was left untouched
};

/// Winner premise update: center <- center + (x - center)/(N+1), inverse
/// covariance via the exact Sherman-Morrison form of the covariance recursion
/// Sigma <- (1-a)Sigma + a vv^T with a = 1/(N+1), support <- N+1.
AdaptOutcome adapt_winner(Rule& rule, const Eigen::VectorXd& x);

/// ERS_i = |sum_j W_ij| * V_i^u / sum_k V_k^u.
double rule_significance(const Model& model, int rule_index);
std::vector<double> rule_significances(const Model& model);

/// Removes every rule with ERS <= g2 except the last survivor (the base is
/// never emptied; with a single rule the test is skipped). Returns the pruned
/// indices as they were before removal.
std::vector<int> prune_rules(Model& model);

/// S = exp(-(|cA - cB| + |sA - sB|)); equals 1 iff the sets are identical.
double fuzzy_set_similarity(const FuzzySet& a, const FuzzySet& b);

/// Exact merge over U = {c +/- sigma of both sets}:
/// c = (max U + min U)/2, sigma = (max U - min U)/2.
FuzzySet merge_fuzzy_sets(const FuzzySet& a, const FuzzySet& b);

/// Display-side view: per-dimension fuzzy sets after greedy merging of every
/// pair above the similarity threshold (most-similar pair first, ties by
/// lowest index pair). The high-dimensional rules are unchanged.
struct MergedRuleView {
  std::vector<std::vector<FuzzySet>> sets;    // [dim] -> surviving sets
  std::vector<std::vector<int>> set_of_rule;  // [rule][dim] -> index into sets[dim]

  std::vector<int> counts_per_dim() const;
};

MergedRuleView merged_rule_view(const Model& model);  // r = config.mahalanobis_r
MergedRuleView merged_rule_view(const Model& model, double r);

}  // namespace panfis
