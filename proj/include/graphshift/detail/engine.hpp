#pragma once

#include <vector>

#include "graphshift/affinity.hpp"
#include "graphshift/kkt.hpp"
#include "graphshift/types.hpp"

namespace graphshift::detail {

// The GS/DSPC iteration is a per-column state machine driven by one shared
// matrix product per sweep: all active candidate points advance together
// through Omega = A * X, which is the only O(n^2)-per-column work. Columns
// leave the batch as they finish, so unequal run lengths cost nothing.

struct EngineOptions {
  double eps_kkt = kDefaultKktEps;
  double eps_fix = kDefaultFixEps;
  double eps_supp = kDefaultSupportEps;
  long max_rd_iters = kDefaultMaxRdIters;
  int max_outer_iters = kDefaultMaxOuterIters;
  bool allow_expansion = true;   // false: pure replicator run (DSPC / replicator_run)
  bool initial_full_check = false;  // test the start point for modehood before stepping
  int threads = 1;
};

struct ColumnOutcome {
  VectorXd x;
  std::vector<long> rd_counts;     // m_k per replicator phase
  bool rd_converged = false;       // no phase exhausted the step budget
  bool stopped_by_residual = false;  // final phase ended on the residual rule
  bool mode_reached = false;       // full KKT residual <= eps_kkt at the final point
  bool outer_exhausted = false;    // phase budget ran out before a mode was found
  bool stuck = false;              // expansion was the identity while not at a mode
  double on_support_residual = 0;
  KktReport kkt;
  double final_objective = 0;
  std::vector<double> objectives;      // g after every applied step, execution order
  std::vector<int> ne_after_phase;     // 1-based phase indices followed by an expansion
};

/// Advance every column of x0 to termination. Column results depend only on
/// the column's own start point; ordering matches x0's columns.
std::vector<ColumnOutcome> run_batch(const AffinityMatrixd& a, const MatrixXd& x0,
                                     const EngineOptions& opts);

}  // namespace graphshift::detail
