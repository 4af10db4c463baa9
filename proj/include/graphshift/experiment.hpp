#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "graphshift/generators.hpp"
#include "graphshift/solver.hpp"
#include "graphshift/trace.hpp"

namespace graphshift {

/// Extract the recorded trajectory of a run; recording must have been enabled.
RunTrace record(const RunResult& run);

/// One row of a benchmark table: counts, timings and sparsity for one
/// (algorithm, family, scale) cell.
struct ExperimentSummary {
  Algorithm algorithm = Algorithm::GS;
  Family family = Family::FDM;
  Index scale = 0;
  double m_k_avg = 0;   // mean over runs of total replicator steps
  double m_avg = 0;     // mean over runs of replicator-phase count
  double T_seconds = 0;  // wall clock of the whole per-family experiment
  double t_seconds = 0;  // T / m_avg
  double sparse_rate_pct = 0;
  long runs = 0;
  double converged_fraction = 0;
};

ExperimentSummary aggregate(const std::vector<RunResult>& results, double wall_seconds,
                            const GeneratorSpec& spec, Algorithm algorithm,
                            double sparse_rate_pct);

// ---------------------------------------------------------------------------
// Experiment grids
// ---------------------------------------------------------------------------

struct ExperimentGrid {
  std::vector<Algorithm> algorithms{Algorithm::GS};
  std::vector<Family> families{Family::FDM};
  std::vector<Index> scales{100};
  int repeats = 3;
  std::uint64_t base_seed = 1;
  double pdm_target_sparse_rate = 0.263;
  int btm_blocks = 13;
  SolverConfig solver;

  void validate() const;
};

/// Seed of one repeat, derived so no two grid cells share a matrix.
std::uint64_t cell_seed(std::uint64_t base, Family family, Index scale, int repeat);

/// Run every cell of the grid in deterministic grid order
/// (algorithm-major, then family, then scale). Per-cell failures are folded
/// into converged_fraction rather than aborting the grid. When traces is
/// non-null, runs record trajectories and all of them are appended.
std::vector<ExperimentSummary> run_grid(const ExperimentGrid& grid,
                                        std::vector<RunTrace>* traces = nullptr);

/// CSV with the fixed header
/// algorithm,case,scale,m_k,m,T_s,t_s,sr_pct,runs,converged_frac.
/// Only the two timing columns vary between identical invocations.
void write_summary_csv(std::ostream& out, const std::vector<ExperimentSummary>& rows);

}  // namespace graphshift
