#include "graphshift/experiment.hpp"

#include <chrono>
#include <numeric>
#include <ostream>

#include "graphshift/errors.hpp"
#include "graphshift/matrix_io.hpp"
#include "graphshift/rng.hpp"

namespace graphshift {

RunTrace record(const RunResult& run) {
  if (!run.trace)
    throw InvalidInput("record: run has no trace (trajectory recording was not enabled)");
  return *run.trace;
}

ExperimentSummary aggregate(const std::vector<RunResult>& results, double wall_seconds,
                            const GeneratorSpec& spec, Algorithm algorithm,
                            double sparse_rate_pct) {
  if (results.empty()) throw InvalidInput("aggregate: no results");
  ExperimentSummary s;
  s.algorithm = algorithm;
  s.family = spec.family;
  s.scale = spec.n;
  s.runs = static_cast<long>(results.size());
  double mk = 0, m = 0, conv = 0;
  for (const RunResult& r : results) {
    mk += static_cast<double>(
        std::accumulate(r.rd_step_counts.begin(), r.rd_step_counts.end(), 0L));
    m += r.outer_iterations;
    conv += r.converged ? 1.0 : 0.0;
  }
  s.m_k_avg = mk / static_cast<double>(s.runs);
  s.m_avg = m / static_cast<double>(s.runs);
  s.T_seconds = wall_seconds;
  s.t_seconds = s.m_avg > 0 ? wall_seconds / s.m_avg : 0.0;
  s.sparse_rate_pct = sparse_rate_pct;
  s.converged_fraction = conv / static_cast<double>(s.runs);
  return s;
}

void ExperimentGrid::validate() const {
  if (algorithms.empty() || families.empty() || scales.empty())
    throw InvalidInput("ExperimentGrid: algorithms, families and scales must be nonempty");
  if (repeats < 1) throw InvalidInput("ExperimentGrid: repeats must be at least 1");
  for (Index n : scales)
    if (n < 2) throw InvalidInput("ExperimentGrid: scales must be at least 2");
  solver.validate();
}

std::uint64_t cell_seed(std::uint64_t base, Family family, Index scale, int repeat) {
  std::uint64_t h = hash_combine(base, static_cast<std::uint64_t>(family) + 1);
  h = hash_combine(h, static_cast<std::uint64_t>(scale));
  return hash_combine(h, static_cast<std::uint64_t>(repeat));
}

std::vector<ExperimentSummary> run_grid(const ExperimentGrid& grid,
                                        std::vector<RunTrace>* traces) {
  grid.validate();
  std::vector<ExperimentSummary> rows;
  for (Algorithm alg : grid.algorithms) {
    for (Family fam : grid.families) {
      for (Index n : grid.scales) {
        SolverConfig cfg = grid.solver;
        cfg.algorithm = alg;
        cfg.record_trajectory = traces != nullptr;
        GeneratorSpec spec{fam, n, grid.pdm_target_sparse_rate, grid.btm_blocks,
                           grid.base_seed};
        std::vector<RunResult> all;
        double wall = 0, sr = 0;
        bool cell_failed = false;
        for (int rep = 0; rep < grid.repeats && !cell_failed; ++rep) {
          spec.seed = cell_seed(grid.base_seed, fam, n, rep);
          try {
            const AffinityMatrixd a = generate(spec);
            sr += sparse_rate(a);
            const auto t0 = std::chrono::steady_clock::now();
            std::vector<RunResult> results = run_all_starts(a, cfg);
            wall +=
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (traces)
              for (const RunResult& r : results)
                if (r.trace) traces->push_back(*r.trace);
            all.insert(all.end(), std::make_move_iterator(results.begin()),
                       std::make_move_iterator(results.end()));
          } catch (const std::exception&) {
            cell_failed = true;  // shows up as converged_fraction 0, grid continues
          }
        }
        spec.seed = grid.base_seed;
        if (cell_failed || all.empty()) {
          ExperimentSummary s;
          s.algorithm = alg;
          s.family = fam;
          s.scale = n;
          s.runs = static_cast<long>(all.size());
          s.converged_fraction = 0;
          rows.push_back(s);
        } else {
          rows.push_back(aggregate(all, wall / grid.repeats, spec, alg,
                                   100.0 * sr / grid.repeats));
        }
      }
    }
  }
  return rows;
}

void write_summary_csv(std::ostream& out, const std::vector<ExperimentSummary>& rows) {
  out << "algorithm,case,scale,m_k,m,T_s,t_s,sr_pct,runs,converged_frac\n";
  for (const ExperimentSummary& s : rows) {
    out << to_string(s.algorithm) << ',' << to_string(s.family) << ',' << s.scale << ','
        << format_double(s.m_k_avg) << ',' << format_double(s.m_avg) << ','
        << format_double(s.T_seconds) << ',' << format_double(s.t_seconds) << ','
        << format_double(s.sparse_rate_pct) << ',' << s.runs << ','
        << format_double(s.converged_fraction) << '\n';
  }
}

}  // namespace graphshift
