#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "panfis/consequent.hpp"
#include "panfis/model.hpp"
#include "panfis/structure.hpp"

namespace panfis {

enum class StepEvent {
  first_rule,  // empty base bootstrapped with this sample
  grew,        // datum significance passed the growth threshold
  adapted,     // winner premise fine-tuned instead
};

const char* to_string(StepEvent event);

/// Per-sample learning trace.
struct TrainStep {
  std::int64_t sample_index = 0;  // 1-based observation index
  double prediction = 0.0;        // one-step-ahead output before any update
  double target = 0.0;
  double abs_error = 0.0;  // |target - prediction|
  StepEvent event = StepEvent::adapted;
  std::vector<int> pruned;  // rule indices removed this step (pre-removal)
  int rule_count_after = 0;
  std::vector<ErlsStep> erls;
};

struct Sample {
  Eigen::VectorXd x;
  double target = 0.0;
};

/// One full learning step: predict, growth test, spawn or adapt, consequent
/// update against the refreshed firings, prune, count.
TrainStep train_sample(Model& model, const Eigen::VectorXd& x, double target);

/// Folds train_sample over the stream. The one-step-ahead prediction series
/// is in the returned steps (recorded before each update).
std::vector<TrainStep> fit_stream(Model& model, const std::vector<Sample>& samples);

/// sqrt(mean squared error) of the frozen model over the samples. Pure.
double evaluate(const Model& model, const std::vector<Sample>& samples);

/// RMSE of the one-step-ahead predictions of a training trace.
double one_step_rmse(const std::vector<TrainStep>& steps);

}  // namespace panfis
