#include "panfis/learner.hpp"

#include <cmath>
#include <stdexcept>

#include "panfis/inference.hpp"

namespace panfis {

const char* to_string(StepEvent event) {
  switch (event) {
    case StepEvent::first_rule: return "first_rule";
    case StepEvent::grew: return "grew";
    case StepEvent::adapted: return "adapted";
  }
  return "unknown";
}

TrainStep train_sample(Model& model, const Eigen::VectorXd& x, double target) {
  if (x.size() != model.config.input_dim)
    throw std::invalid_argument("input dimension does not match model config");
  if (!x.allFinite() || !std::isfinite(target))
    throw std::invalid_argument("train_sample requires finite input and target");

  model.observe_range(x);

  TrainStep step;
  step.target = target;
  if (model.rules.empty()) {
    step.prediction = 0.0;
    step.abs_error = std::abs(target);
    spawn_rule(model, x, -1);
    step.event = StepEvent::first_rule;
  } else {
    const Prediction before = predict(model, x);
    step.prediction = before.y;
    step.abs_error = std::abs(target - before.y);
    const GrowthDecision decision =
        datum_significance(model, x, step.abs_error, before.firings);
    if (decision.grew) {
      spawn_rule(model, x, decision.winner_index);
      step.event = StepEvent::grew;
    } else {
      adapt_winner(model.rules[static_cast<std::size_t>(decision.winner_index)], x);
      step.event = StepEvent::adapted;
    }
  }

  const Firings firings = compute_firings(model, x);
  step.erls = erls_update(model, x, target, firings);
  step.pruned = prune_rules(model);
  model.samples_seen += 1;

  step.sample_index = model.samples_seen;
  step.rule_count_after = static_cast<int>(model.rules.size());
  return step;
}

std::vector<TrainStep> fit_stream(Model& model, const std::vector<Sample>& samples) {
  if (samples.empty()) throw std::invalid_argument("fit_stream requires samples");
  std::vector<TrainStep> steps;
  steps.reserve(samples.size());
  for (const Sample& s : samples) steps.push_back(train_sample(model, s.x, s.target));
  return steps;
}

double evaluate(const Model& model, const std::vector<Sample>& samples) {
  if (model.rules.empty()) throw std::invalid_argument("evaluate requires a trained model");
  if (samples.empty()) throw std::invalid_argument("evaluate requires samples");
  double sq = 0.0;
  for (const Sample& s : samples) {
    const double e = s.target - predict(model, s.x).y;
    sq += e * e;
  }
  return std::sqrt(sq / static_cast<double>(samples.size()));
}

double one_step_rmse(const std::vector<TrainStep>& steps) {
  if (steps.empty()) throw std::invalid_argument("one_step_rmse requires steps");
  double sq = 0.0;
  for (const TrainStep& s : steps) sq += s.abs_error * s.abs_error;
  return std::sqrt(sq / static_cast<double>(steps.size()));
}

}  // namespace panfis
