#pragma once

#include <Eigen/Dense>
#include <vector>

#include "panfis/inference.hpp"
#include "panfis/model.hpp"

namespace panfis {

/// Per-rule trace of one gated RLS step. The gate is global per sample: all
/// rules commit their tentative update or none do. gate = 0 implies the
/// rule's weights and rls_cov are unchanged.
struct ErlsStep {
  int rule_index = -1;
  int gate = 0;
  double error_before = 0.0;  // |target - y| before any consequent change
  double error_after = 0.0;   // |target - y| with all tentative weights
};

// Rules firing below this level skip the update (1/phi would overflow).
constexpr double kActivationFloor = 1e-12;

/// Firing-weighted recursive least squares on every active rule, committed
/// only when the tentative update does not worsen the instantaneous absolute
/// error. `firings` must have been computed at x for the current rule base.
std::vector<ErlsStep> erls_update(Model& model, const Eigen::VectorXd& x,
                                  double target, const Firings& firings);

}  // namespace panfis
