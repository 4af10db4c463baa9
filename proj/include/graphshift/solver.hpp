#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphshift/affinity.hpp"
#include "graphshift/dynamics.hpp"
#include "graphshift/kkt.hpp"
#include "graphshift/trace.hpp"
#include "graphshift/types.hpp"

namespace graphshift {

enum class Algorithm { GS, DSPC };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);

struct SolverConfig {
  Algorithm algorithm = Algorithm::GS;
  double eps_kkt = kDefaultKktEps;
  double eps_fix = kDefaultFixEps;
  double eps_supp = kDefaultSupportEps;
  double merge_tol = kDefaultMergeTol;
  long max_rd_iters = kDefaultMaxRdIters;
  int max_outer_iters = kDefaultMaxOuterIters;
  bool record_trajectory = false;
  int threads = 1;

  void validate() const;  // throws InvalidInput on nonpositive tolerances or budgets
};

/// Outcome of one start vertex (or explicit start point).
///
/// For GS, converged means the full KKT test passed (kkt.is_mode). DSPC has no
/// expansion step to repair off-support violations, so its convergence gauge
/// is the replicator stop rule: on_support_residual <= eps_kkt. kkt always
/// reports the full-graph test for either algorithm.
struct RunResult {
  Index start_vertex = -1;  // -1 when started from an explicit point
  VectorXd final_x;
  std::vector<Index> mode_support;
  double final_objective = 0;
  KktReport kkt;
  double on_support_residual = 0;
  std::vector<long> rd_step_counts;  // one m_k per replicator phase
  int outer_iterations = 0;          // replicator phases run; equals rd_step_counts.size()
  bool converged = false;
  std::optional<RunTrace> trace;
};

/// Per-vertex GS loop: replicator dynamics to fixation, full KKT test,
/// neighborhood expansion, repeat. A start vertex with no neighbors is a
/// singleton mode. A start with zero objective but live neighbors takes one
/// expansion before the first replicator phase (the replicator map is 0/0
/// there, and expansion is well-defined with lambda = 0).
RunResult gs_run(const AffinityMatrixd& a, Index start, const SolverConfig& cfg);
RunResult gs_run(const AffinityMatrixd& a, const VectorXd& x0, const SolverConfig& cfg);

/// DSPC: a single replicator run to an epsilon-fixed point, no expansion.
/// A vertex start is lifted to the uniform distribution on its closed
/// neighborhood so the objective is positive; an isolated vertex is a
/// singleton mode.
RunResult dspc_run(const AffinityMatrixd& a, Index start, const SolverConfig& cfg);
RunResult dspc_run(const AffinityMatrixd& a, const VectorXd& x0, const SolverConfig& cfg);

/// Run the configured algorithm from every vertex. Results are indexed by
/// start vertex regardless of scheduling.
std::vector<RunResult> run_all_starts(const AffinityMatrixd& a, const SolverConfig& cfg);

struct Mode {
  int id = 0;
  VectorXd representative;
  std::vector<Index> support;
  double objective = 0;
};

struct ClusterAssignment {
  std::vector<Mode> modes;
  std::vector<int> labels;  // label -1 marks a start whose run did not converge
  bool all_converged = true;
};

/// Cluster start vertices by terminal mode. Two converged runs share a mode
/// iff their supports are equal or their terminal points are within merge_tol
/// in the inf-norm; mode ids are assigned first-seen by ascending start vertex.
std::pair<std::vector<RunResult>, ClusterAssignment> cluster_all(const AffinityMatrixd& a,
                                                                 const SolverConfig& cfg);

ClusterAssignment merge_modes(const std::vector<RunResult>& results, const SolverConfig& cfg);

}  // namespace graphshift
