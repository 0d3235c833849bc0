#include "panfis/structure.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace panfis {

namespace {

// log(sum_i exp(v_i)) without overflow.
double log_sum_exp(const Eigen::VectorXd& v) {
  const double peak = v.maxCoeff();
  return peak + std::log((v.array() - peak).exp().sum());
}

// Per-dimension width floor: 0.1 of the observed data range, falling back to
// scale 1 before any spread has been seen, divided by sqrt(ln(1/eps)).
Eigen::VectorXd width_floor(const Model& model) {
  const double denom = std::sqrt(std::log(1.0 / model.config.epsilon));
  const Eigen::Index u = model.config.input_dim;
  Eigen::VectorXd floor(u);
  for (Eigen::Index j = 0; j < u; ++j) {
    double scale = 1.0;
    if (model.has_range()) {
      const double range = model.range_max[j] - model.range_min[j];
      if (range > 0.0) scale = 0.1 * range;
    }
    floor[j] = scale / denom;
  }
  return floor;
}

int most_firing_rule(const Model& model, const Eigen::VectorXd& x) {
  int winner = -1;
  double best = -1.0;
  for (std::size_t i = 0; i < model.rules.size(); ++i) {
    const double r = firing_strength(model.rules[i], x);
    if (r > best) {
      best = r;
      winner = static_cast<int>(i);
    }
  }
  return winner;
}

GrowthDecision decide_growth(const Model& model, const Eigen::VectorXd& x,
                             double abs_error, int winner_index) {
  if (abs_error < 0.0) throw std::invalid_argument("abs_error must be >= 0");
  GrowthDecision decision;
  decision.winner_index = winner_index;
  if (model.rules.empty()) {
    decision.significance = abs_error;
    decision.grew = true;
    return decision;
  }

  const Rule hyp = hypothetical_rule(model, x);
  const double u = static_cast<double>(model.config.input_dim);
  const Eigen::Index n = static_cast<Eigen::Index>(model.rules.size());
  Eigen::VectorXd log_terms(n + 1);
  for (Eigen::Index i = 0; i < n; ++i)
    log_terms[i] = u * rule_log_volume(model.rules[static_cast<std::size_t>(i)]);
  log_terms[n] = u * rule_log_volume(hyp);

  decision.significance =
      abs_error * std::exp(log_terms[n] - log_sum_exp(log_terms));
  decision.grew = decision.significance >= model.config.g1;
  return decision;
}

}  // namespace

Rule hypothetical_rule(const Model& model, const Eigen::VectorXd& x) {
  const Eigen::Index u = model.config.input_dim;
  if (x.size() != u)
    throw std::invalid_argument("input dimension does not match model config");

  const double denom = std::sqrt(std::log(1.0 / model.config.epsilon));
  const Eigen::VectorXd floor = width_floor(model);

  Eigen::VectorXd sigma(u);
  if (model.rules.empty()) {
    sigma = floor;
  } else {
    int nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
      const double d = (x - model.rules[i].center).norm();
      if (d < best) {
        best = d;
        nearest = static_cast<int>(i);
      }
    }
    const Eigen::VectorXd dist = (x - model.rules[nearest].center).cwiseAbs();
    for (Eigen::Index j = 0; j < u; ++j)
      sigma[j] = dist[j] > 0.0 ? dist[j] / denom : floor[j];
  }

  Rule rule;
  rule.center = x;
  rule.inv_cov = sigma.array().square().inverse().matrix().asDiagonal();
  rule.support = 1;
  rule.weights = Eigen::VectorXd::Zero(u + 1);
  rule.rls_cov = model.config.omega * Eigen::MatrixXd::Identity(u + 1, u + 1);
  return rule;
}

GrowthDecision datum_significance(const Model& model, const Eigen::VectorXd& x,
                                  double abs_error) {
  return decide_growth(model, x, abs_error,
                       model.rules.empty() ? -1 : most_firing_rule(model, x));
}

GrowthDecision datum_significance(const Model& model, const Eigen::VectorXd& x,
                                  double abs_error, const Firings& firings) {
  if (firings.count() != static_cast<Eigen::Index>(model.rules.size()))
    throw std::invalid_argument("firings do not match the rule base");
  int winner = -1;
  if (firings.count() > 0) {
    Eigen::Index at = 0;
    firings.raw.maxCoeff(&at);
    winner = static_cast<int>(at);
  }
  return decide_growth(model, x, abs_error, winner);
}

void spawn_rule(Model& model, const Eigen::VectorXd& x, int winner_index) {
  if (winner_index >= static_cast<int>(model.rules.size()))
    throw std::invalid_argument("winner_index out of range");
  Rule rule = hypothetical_rule(model, x);
  if (winner_index >= 0) rule.weights = model.rules[static_cast<std::size_t>(winner_index)].weights;
  model.rules.push_back(std::move(rule));
}

void spawn_rule(Model& model, const Eigen::VectorXd& x) {
  spawn_rule(model, x, most_firing_rule(model, x));
}

AdaptOutcome adapt_winner(Rule& rule, const Eigen::VectorXd& x) {
  if (x.size() != rule.center.size())
    throw std::invalid_argument("input dimension does not match rule center");

  const double n = static_cast<double>(rule.support);
  const double alpha = 1.0 / (n + 1.0);
  const Eigen::VectorXd v = x - rule.center;

  // Inverse of Sigma <- (1-a)Sigma + a vv' by Sherman-Morrison: scale the
  // stored inverse by 1/(1-a), then downdate with the rank-1 term.
  const Eigen::MatrixXd scaled = rule.inv_cov / (1.0 - alpha);
  const Eigen::VectorXd sv = scaled * v;
  const double q = v.dot(sv);
  Eigen::MatrixXd candidate = scaled - (alpha / (1.0 + alpha * q)) * (sv * sv.transpose());
  candidate = 0.5 * (candidate + candidate.transpose());

  if (!candidate.allFinite()) return AdaptOutcome::rejected_non_spd;
  Eigen::LLT<Eigen::MatrixXd> llt(candidate);
  if (llt.info() != Eigen::Success) return AdaptOutcome::rejected_non_spd;

  rule.center += alpha * v;
  rule.inv_cov = std::move(candidate);
  rule.support += 1;
  return AdaptOutcome::applied;
}

std::vector<double> rule_significances(const Model& model) {
  const Eigen::Index n = static_cast<Eigen::Index>(model.rules.size());
  std::vector<double> ers(static_cast<std::size_t>(n), 0.0);
  if (n == 0) return ers;

  const double u = static_cast<double>(model.config.input_dim);
  Eigen::VectorXd log_terms(n);
  for (Eigen::Index i = 0; i < n; ++i)
    log_terms[i] = u * rule_log_volume(model.rules[static_cast<std::size_t>(i)]);
  const double lse = log_sum_exp(log_terms);

  for (Eigen::Index i = 0; i < n; ++i) {
    const double delta = model.rules[static_cast<std::size_t>(i)].weights.sum();
    ers[static_cast<std::size_t>(i)] = std::abs(delta) * std::exp(log_terms[i] - lse);
  }
  return ers;
}

double rule_significance(const Model& model, int rule_index) {
  if (rule_index < 0 || rule_index >= static_cast<int>(model.rules.size()))
    throw std::invalid_argument("rule_index out of range");
  return rule_significances(model)[static_cast<std::size_t>(rule_index)];
}

std::vector<int> prune_rules(Model& model) {
  std::vector<int> pruned;
  if (model.rules.size() <= 1) return pruned;

  const std::vector<double> ers = rule_significances(model);
  for (std::size_t i = 0; i < ers.size(); ++i)
    if (ers[i] <= model.config.g2) pruned.push_back(static_cast<int>(i));

  if (pruned.size() == model.rules.size()) {
    // Everything fell below the bar; keep the most significant rule anyway.
    const std::size_t keep = static_cast<std::size_t>(
        std::max_element(ers.begin(), ers.end()) - ers.begin());
    pruned.erase(pruned.begin() + static_cast<std::ptrdiff_t>(keep));
  }

  for (auto it = pruned.rbegin(); it != pruned.rend(); ++it)
    model.rules.erase(model.rules.begin() + *it);
  return pruned;
}

double fuzzy_set_similarity(const FuzzySet& a, const FuzzySet& b) {
  return std::exp(-(std::abs(a.center - b.center) + std::abs(a.width - b.width)));
}

FuzzySet merge_fuzzy_sets(const FuzzySet& a, const FuzzySet& b) {
  const double lo = std::min(a.center - a.width, b.center - b.width);
  const double hi = std::max(a.center + a.width, b.center + b.width);
  return {0.5 * (hi + lo), 0.5 * (hi - lo)};
}

std::vector<int> MergedRuleView::counts_per_dim() const {
  std::vector<int> counts;
  counts.reserve(sets.size());
  for (const auto& dim_sets : sets) counts.push_back(static_cast<int>(dim_sets.size()));
  return counts;
}

MergedRuleView merged_rule_view(const Model& model) {
  return merged_rule_view(model, model.config.mahalanobis_r);
}

MergedRuleView merged_rule_view(const Model& model, double r) {
  if (model.rules.empty()) throw std::invalid_argument("model has no rules");
  const std::size_t u = static_cast<std::size_t>(model.config.input_dim);
  const std::size_t n_rules = model.rules.size();

  MergedRuleView view;
  view.sets.resize(u);
  view.set_of_rule.assign(n_rules, std::vector<int>(u, 0));

  std::vector<std::vector<FuzzySet>> per_rule;
  per_rule.reserve(n_rules);
  for (const Rule& rule : model.rules) per_rule.push_back(extract_fuzzy_sets(rule, r));

  for (std::size_t d = 0; d < u; ++d) {
    auto& sets = view.sets[d];
    for (std::size_t i = 0; i < n_rules; ++i) {
      sets.push_back(per_rule[i][d]);
      view.set_of_rule[i][d] = static_cast<int>(i);
    }

    // Greedily fuse the most similar qualifying pair until none remains.
    while (sets.size() > 1) {
      std::size_t best_a = 0, best_b = 0;
      double best = -1.0;
      for (std::size_t a = 0; a + 1 < sets.size(); ++a)
        for (std::size_t b = a + 1; b < sets.size(); ++b) {
          const double s = fuzzy_set_similarity(sets[a], sets[b]);
          if (s > best) {
            best = s;
            best_a = a;
            best_b = b;
          }
        }
      if (best <= model.config.merge_threshold) break;

      sets[best_a] = merge_fuzzy_sets(sets[best_a], sets[best_b]);
      sets.erase(sets.begin() + static_cast<std::ptrdiff_t>(best_b));
      for (std::size_t i = 0; i < n_rules; ++i) {
        int& idx = view.set_of_rule[i][d];
        if (idx == static_cast<int>(best_b)) idx = static_cast<int>(best_a);
        else if (idx > static_cast<int>(best_b)) --idx;
      }
    }
  }
  return view;
}

}  // namespace panfis
