#pragma once

#include <vector>

#include "graphshift/types.hpp"

namespace graphshift {

enum class Phase { RD, NE };

/// One applied transformation: a single replicator step or one expansion.
struct StepRecord {
  Phase phase = Phase::RD;
  double objective = 0;
  int outer_iteration = 0;  // 0 for an expansion taken before the first replicator phase
};

/// Objective trajectory of one run, in execution order. Objectives are
/// non-decreasing along the steps up to 1e-14 roundoff.
struct RunTrace {
  Index start_vertex = -1;
  double initial_objective = 0;  // g at the starting point, baseline for step gains
  std::vector<StepRecord> steps;
};

}  // namespace graphshift
