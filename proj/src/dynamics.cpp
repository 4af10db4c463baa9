#include "graphshift/dynamics.hpp"

#include <utility>

#include "graphshift/detail/engine.hpp"
#include "graphshift/errors.hpp"

namespace graphshift {

ReplicatorRun replicator_run(const AffinityMatrixd& a, const VectorXd& x0,
                             const ReplicatorOptions& opts) {
  validate_simplex(x0, "replicator_run start point");
  if (x0.size() != a.n()) throw InvalidInput("replicator_run: start point has wrong dimension");
  if (opts.max_iters < 1) throw InvalidInput("replicator_run: max_iters must be at least 1");
  if (objective(a, x0) == 0)
    throw DegenerateState("replicator_run: objective is zero at the start point");

  detail::EngineOptions eo;
  eo.eps_kkt = opts.eps_kkt;
  eo.eps_fix = opts.eps_fix;
  eo.eps_supp = opts.eps_supp;
  eo.max_rd_iters = opts.max_iters;
  eo.allow_expansion = false;
  eo.initial_full_check = false;
  auto outcomes = detail::run_batch(a, x0, eo);
  auto& out = outcomes.front();

  ReplicatorRun run;
  run.x = std::move(out.x);
  run.iterations = out.rd_counts.empty() ? 0 : out.rd_counts.front();
  run.converged = out.rd_converged;
  run.stopped_by_residual = out.stopped_by_residual;
  run.on_support_residual = out.on_support_residual;
  if (opts.record || !run.converged) run.objectives = std::move(out.objectives);
  return run;
}

}  // namespace graphshift
