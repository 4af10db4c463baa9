#include "graphshift/solver.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "graphshift/detail/engine.hpp"
#include "graphshift/errors.hpp"
#include "graphshift/simplex.hpp"

namespace graphshift {

std::string to_string(Algorithm a) { return a == Algorithm::GS ? "gs" : "dspc"; }

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "gs") return Algorithm::GS;
  if (s == "dspc") return Algorithm::DSPC;
  throw InvalidInput("unknown algorithm '" + s + "' (expected gs or dspc)");
}

void SolverConfig::validate() const {
  if (!(eps_kkt > 0) || !(eps_fix > 0) || !(eps_supp > 0) || !(merge_tol > 0))
    throw InvalidInput("SolverConfig: tolerances must be positive");
  if (max_rd_iters < 1 || max_outer_iters < 1)
    throw InvalidInput("SolverConfig: iteration budgets must be at least 1");
  if (threads < 1) throw InvalidInput("SolverConfig: threads must be at least 1");
}

namespace {

detail::EngineOptions engine_options(const SolverConfig& cfg, bool expansion,
                                     bool initial_check) {
  detail::EngineOptions o;
  o.eps_kkt = cfg.eps_kkt;
  o.eps_fix = cfg.eps_fix;
  o.eps_supp = cfg.eps_supp;
  o.max_rd_iters = cfg.max_rd_iters;
  o.max_outer_iters = cfg.max_outer_iters;
  o.allow_expansion = expansion;
  o.initial_full_check = initial_check;
  o.threads = cfg.threads;
  return o;
}

struct LeadingNe {
  double objective = 0;  // g right after the expansion taken before any replicator phase
};

RunTrace assemble_trace(Index start, double initial_objective,
                        const std::optional<LeadingNe>& leading,
                        const detail::ColumnOutcome& out) {
  RunTrace tr;
  tr.start_vertex = start;
  tr.initial_objective = initial_objective;
  if (leading) tr.steps.push_back({Phase::NE, leading->objective, 0});
  std::size_t oi = 0;
  std::size_t nei = 0;
  for (std::size_t p = 0; p < out.rd_counts.size(); ++p) {
    const int outer = static_cast<int>(p) + 1;
    for (long s = 0; s < out.rd_counts[p]; ++s)
      tr.steps.push_back({Phase::RD, out.objectives.at(oi++), outer});
    if (nei < out.ne_after_phase.size() && out.ne_after_phase[nei] == outer) {
      tr.steps.push_back({Phase::NE, out.objectives.at(oi++), outer});
      ++nei;
    }
  }
  return tr;
}

RunResult result_from_outcome(Index start, const SolverConfig& cfg, double initial_objective,
                              const std::optional<LeadingNe>& leading,
                              detail::ColumnOutcome&& out, bool converged) {
  RunResult r;
  r.start_vertex = start;
  r.final_x = std::move(out.x);
  r.mode_support = support_of(r.final_x, cfg.eps_supp);
  r.final_objective = out.final_objective;
  r.kkt = out.kkt;
  r.on_support_residual = out.on_support_residual;
  r.rd_step_counts = out.rd_counts;
  r.outer_iterations = static_cast<int>(out.rd_counts.size());
  r.converged = converged;
  if (cfg.record_trajectory || !converged)
    r.trace = assemble_trace(start, initial_objective, leading, out);
  return r;
}

// A start that is already stationary (isolated vertex, zero matrix, or any
// point with Ax = 0): nothing to iterate.
RunResult stationary_start_result(const AffinityMatrixd& a, Index start, const VectorXd& x0,
                                  const SolverConfig& cfg, bool dspc) {
  RunResult r;
  r.start_vertex = start;
  r.final_x = x0;
  r.mode_support = support_of(x0, cfg.eps_supp);
  r.kkt = kkt_check(a, x0, cfg.eps_kkt, cfg.eps_supp);
  r.final_objective = r.kkt.lambda;
  r.on_support_residual = 0;
  if (dspc) {
    r.rd_step_counts = {0};
    r.outer_iterations = 1;
  }
  r.converged = true;
  if (cfg.record_trajectory) {
    r.trace = RunTrace{start, r.final_objective, {}};
  }
  return r;
}

struct GsSetup {
  VectorXd entry;  // the point the replicator engine starts from
  std::optional<LeadingNe> leading;
  std::optional<RunResult> immediate;  // resolved without any iteration
};

GsSetup gs_setup(const AffinityMatrixd& a, Index start, const VectorXd& x0,
                 const SolverConfig& cfg) {
  GsSetup s;
  const VectorXd ax = a.apply(x0);
  const double g = x0.dot(ax);
  if (g == 0) {
    const auto rep = detail::kkt_from_products(x0, ax, 0.0, cfg.eps_kkt, cfg.eps_supp);
    if (rep.is_mode) {
      s.immediate = stationary_start_result(a, start, x0, cfg, false);
      return s;
    }
    // The replicator map is 0/0 here; expand first (lambda = 0 and the
    // off-support gains are exactly (Ax)_i, so the step is well-defined).
    s.entry = expansion_step(a, x0, cfg.eps_supp);
    s.leading = LeadingNe{objective(a, s.entry)};
  } else {
    s.entry = x0;
  }
  return s;
}

}  // namespace

RunResult gs_run(const AffinityMatrixd& a, const VectorXd& x0, const SolverConfig& cfg) {
  cfg.validate();
  validate_simplex(x0, "gs_run start point");
  if (x0.size() != a.n()) throw InvalidInput("gs_run: start point has wrong dimension");

  GsSetup setup = gs_setup(a, -1, x0, cfg);
  if (setup.immediate) return std::move(*setup.immediate);
  const bool had_leading = setup.leading.has_value();
  auto outcomes =
      detail::run_batch(a, setup.entry, engine_options(cfg, true, had_leading));
  auto& out = outcomes.front();
  return result_from_outcome(-1, cfg, had_leading ? 0.0 : objective(a, x0), setup.leading,
                             std::move(out), out.mode_reached);
}

RunResult gs_run(const AffinityMatrixd& a, Index start, const SolverConfig& cfg) {
  if (start < 0 || start >= a.n()) throw InvalidInput("gs_run: start vertex out of range");
  RunResult r = gs_run(a, vertex_point(a.n(), start), cfg);
  r.start_vertex = start;
  if (r.trace) r.trace->start_vertex = start;
  return r;
}

RunResult dspc_run(const AffinityMatrixd& a, const VectorXd& x0, const SolverConfig& cfg) {
  cfg.validate();
  validate_simplex(x0, "dspc_run start point");
  if (x0.size() != a.n()) throw InvalidInput("dspc_run: start point has wrong dimension");

  const VectorXd ax = a.apply(x0);
  const double g = x0.dot(ax);
  if (g == 0) {
    const auto rep = detail::kkt_from_products(x0, ax, 0.0, cfg.eps_kkt, cfg.eps_supp);
    if (rep.is_mode) return stationary_start_result(a, -1, x0, cfg, true);
    throw DegenerateState(
        "dspc_run: start has zero objective and is not stationary; DSPC has no expansion "
        "step to leave it");
  }
  auto outcomes = detail::run_batch(a, x0, engine_options(cfg, false, false));
  auto& out = outcomes.front();
  const bool converged = out.rd_converged && out.stopped_by_residual;
  return result_from_outcome(-1, cfg, g, std::nullopt, std::move(out), converged);
}

RunResult dspc_run(const AffinityMatrixd& a, Index start, const SolverConfig& cfg) {
  if (start < 0 || start >= a.n()) throw InvalidInput("dspc_run: start vertex out of range");
  cfg.validate();
  const auto nbhd = a.closed_neighborhood(start);
  RunResult r;
  if (nbhd.size() == 1) {
    r = stationary_start_result(a, start, vertex_point(a.n(), start), cfg, true);
  } else {
    r = dspc_run(a, uniform_on(a.n(), nbhd), cfg);
  }
  r.start_vertex = start;
  if (r.trace) r.trace->start_vertex = start;
  return r;
}

std::vector<RunResult> run_all_starts(const AffinityMatrixd& a, const SolverConfig& cfg) {
  cfg.validate();
  const Index n = a.n();
  std::vector<RunResult> results(n);

  if (cfg.algorithm == Algorithm::GS) {
    // Per-vertex starts e_i all have zero objective, so each takes its leading
    // expansion first; the expanded points then advance together.
    std::vector<Index> engine_starts;
    std::vector<std::optional<LeadingNe>> leading(n);
    MatrixXd entries(n, n);
    for (Index i = 0; i < n; ++i) {
      GsSetup s = gs_setup(a, i, vertex_point(n, i), cfg);
      if (s.immediate) {
        results[i] = std::move(*s.immediate);
        continue;
      }
      entries.col(static_cast<Index>(engine_starts.size())) = s.entry;
      leading[i] = s.leading;
      engine_starts.push_back(i);
    }
    const Index k = static_cast<Index>(engine_starts.size());
    if (k > 0) {
      auto outcomes = detail::run_batch(a, entries.leftCols(k),
                                        engine_options(cfg, true, true));
      for (Index c = 0; c < k; ++c) {
        const Index i = engine_starts[c];
        auto& out = outcomes[c];
        results[i] = result_from_outcome(i, cfg, 0.0, leading[i], std::move(out),
                                         out.mode_reached);
      }
    }
    return results;
  }

  // DSPC: vertices sharing a closed neighborhood share the start point and
  // therefore the whole run; solve one representative per distinct start.
  std::vector<Index> rep_of(n, -1);
  std::vector<VectorXd> starts;
  std::vector<std::vector<Index>> members;
  std::map<std::vector<Index>, std::size_t> seen;  // keyed by the neighborhood itself
  std::vector<double> initial_g(n, 0);
  for (Index i = 0; i < n; ++i) {
    const auto nbhd = a.closed_neighborhood(i);
    if (nbhd.size() == 1) {
      results[i] = stationary_start_result(a, i, vertex_point(n, i), cfg, true);
      continue;
    }
    auto [it, fresh] = seen.try_emplace(nbhd, starts.size());
    if (fresh) {
      starts.push_back(uniform_on(n, nbhd));
      members.emplace_back();
    }
    members[it->second].push_back(i);
  }
  if (!starts.empty()) {
    MatrixXd x0(n, static_cast<Index>(starts.size()));
    for (std::size_t c = 0; c < starts.size(); ++c) x0.col(static_cast<Index>(c)) = starts[c];
    auto outcomes = detail::run_batch(a, x0, engine_options(cfg, false, false));
    for (std::size_t c = 0; c < starts.size(); ++c) {
      const double g0 = objective(a, starts[c]);
      const bool converged = outcomes[c].rd_converged && outcomes[c].stopped_by_residual;
      for (Index i : members[c]) {
        detail::ColumnOutcome copy = outcomes[c];
        results[i] = result_from_outcome(i, cfg, g0, std::nullopt, std::move(copy), converged);
      }
    }
  }
  return results;
}

ClusterAssignment merge_modes(const std::vector<RunResult>& results, const SolverConfig& cfg) {
  ClusterAssignment out;
  out.labels.assign(results.size(), -1);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const RunResult& r = results[i];
    if (!r.converged) {
      out.all_converged = false;
      continue;
    }
    int label = -1;
    for (const Mode& m : out.modes) {
      if (m.support == r.mode_support ||
          (m.representative - r.final_x).cwiseAbs().maxCoeff() <= cfg.merge_tol) {
        label = m.id;
        break;
      }
    }
    if (label < 0) {
      label = static_cast<int>(out.modes.size());
      out.modes.push_back({label, r.final_x, r.mode_support, r.final_objective});
    }
    out.labels[i] = label;
  }
  return out;
}

std::pair<std::vector<RunResult>, ClusterAssignment> cluster_all(const AffinityMatrixd& a,
                                                                 const SolverConfig& cfg) {
  std::vector<RunResult> results = run_all_starts(a, cfg);
  ClusterAssignment assignment = merge_modes(results, cfg);
  return {std::move(results), std::move(assignment)};
}

}  // namespace graphshift
