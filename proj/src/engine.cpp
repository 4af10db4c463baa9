#include "graphshift/detail/engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <utility>

#include "graphshift/dynamics.hpp"
#include "graphshift/errors.hpp"
#include "graphshift/simplex.hpp"

namespace graphshift::detail {
namespace {

enum class ColPhase {
  InitialCheck,  // full KKT test of the incoming point before any step
  Rd,            // inside a replicator phase
  CheckAfterNe,  // expansion applied last round; test the fresh point
};

struct ColumnState {
  VectorXd x;
  ColPhase phase = ColPhase::Rd;
  long rd_in_phase = 0;
  double last_disp = 0;
  bool pending_record = false;  // a step was applied; its objective lands next sweep
  ColumnOutcome out;
  bool done = false;
};

void finish(ColumnState& st, const VectorXd& ax, double g, double on, double off,
            const EngineOptions& opts) {
  st.out.x = st.x;
  st.out.final_objective = g;
  st.out.on_support_residual = on;
  st.out.kkt = kkt_from_products(st.x, ax, g, opts.eps_kkt, opts.eps_supp);
  st.out.mode_reached = std::max(on, off) <= opts.eps_kkt;
  st.done = true;
}

// One sweep of the state machine for a single column, given fresh ax = A x.
void advance(const AffinityMatrixd& a, ColumnState& st, const VectorXd& ax,
             const EngineOptions& opts) {
  const double g = st.x.dot(ax);
  if (st.pending_record) {
    st.out.objectives.push_back(g);
    st.pending_record = false;
  }

  if (st.phase == ColPhase::InitialCheck || st.phase == ColPhase::CheckAfterNe) {
    const double on = on_support_residual<double>(st.x, ax, g, opts.eps_supp);
    const double off = off_support_violation<double>(st.x, ax, g, opts.eps_supp);
    if (std::max(on, off) <= opts.eps_kkt) {
      st.out.rd_converged = true;
      finish(st, ax, g, on, off, opts);
      return;
    }
    if (static_cast<int>(st.out.rd_counts.size()) >= opts.max_outer_iters) {
      st.out.outer_exhausted = true;
      st.out.rd_converged = true;
      finish(st, ax, g, on, off, opts);
      return;
    }
    st.phase = ColPhase::Rd;
    st.rd_in_phase = 0;
  }

  if (st.rd_in_phase >= 1) {
    const double on = on_support_residual<double>(st.x, ax, g, opts.eps_supp);
    const bool stop_res = on <= opts.eps_kkt;
    const bool stop_fix = st.last_disp < opts.eps_fix;
    const bool budget = st.rd_in_phase >= opts.max_rd_iters;
    if (stop_res || stop_fix || budget) {
      st.out.rd_counts.push_back(st.rd_in_phase);
      if (!stop_res && !stop_fix) {
        // step budget exhausted mid-phase
        st.out.rd_converged = false;
        st.out.stopped_by_residual = false;
        finish(st, ax, g, on, off_support_violation<double>(st.x, ax, g, opts.eps_supp), opts);
        return;
      }
      st.out.rd_converged = true;
      st.out.stopped_by_residual = stop_res;
      const double off = off_support_violation<double>(st.x, ax, g, opts.eps_supp);
      const bool mode = std::max(on, off) <= opts.eps_kkt;
      if (!opts.allow_expansion || mode) {
        finish(st, ax, g, on, off, opts);
        return;
      }
      // neighborhood expansion
      auto comps = expansion_from_products(a, st.x, ax, g, opts.eps_supp);
      if (comps.s == 0) {
        // displacement stall left on-support deviation above tolerance and no
        // off-support vertex improves on the density: nowhere to go
        st.out.stuck = true;
        finish(st, ax, g, on, off, opts);
        return;
      }
      VectorXd expanded = st.x + comps.t_star * comps.b;
      st.x = clamp_to_simplex(std::move(expanded), "expansion_step");
      st.out.ne_after_phase.push_back(static_cast<int>(st.out.rd_counts.size()));
      st.pending_record = true;
      st.phase = ColPhase::CheckAfterNe;
      return;
    }
  }

  // replicator step
  if (g == 0)
    throw DegenerateState("replicator run: objective is zero, update undefined");
  VectorXd next = replicator_apply(st.x, ax, g);
  st.last_disp = (next - st.x).cwiseAbs().maxCoeff();
  st.x = std::move(next);
  st.rd_in_phase += 1;
  st.pending_record = true;
}

void run_chunk(const AffinityMatrixd& a, const MatrixXd& x0, Index begin, Index end,
               const EngineOptions& opts, std::vector<ColumnOutcome>& results) {
  const Index n = a.n();
  const Index count = end - begin;
  std::vector<ColumnState> states(count);
  std::vector<Index> alive(count);
  for (Index c = 0; c < count; ++c) {
    states[c].x = x0.col(begin + c);
    states[c].phase = opts.initial_full_check ? ColPhase::InitialCheck : ColPhase::Rd;
    alive[c] = c;
  }

  MatrixXd pack(n, count);
  while (!alive.empty()) {
    const Index k = static_cast<Index>(alive.size());
    for (Index c = 0; c < k; ++c) pack.col(c) = states[alive[c]].x;
    const MatrixXd omega = a.apply(MatrixXd(pack.leftCols(k)));
    std::vector<Index> still;
    still.reserve(alive.size());
    for (Index c = 0; c < k; ++c) {
      ColumnState& st = states[alive[c]];
      advance(a, st, omega.col(c), opts);
      if (!st.done) still.push_back(alive[c]);
    }
    alive.swap(still);
  }

  for (Index c = 0; c < count; ++c) results[begin + c] = std::move(states[c].out);
}

}  // namespace

std::vector<ColumnOutcome> run_batch(const AffinityMatrixd& a, const MatrixXd& x0,
                                     const EngineOptions& opts) {
  const Index cols = x0.cols();
  std::vector<ColumnOutcome> results(cols);
  if (cols == 0) return results;

  const int threads = std::max(1, std::min<int>(opts.threads, static_cast<int>(cols)));
  if (threads == 1) {
    run_chunk(a, x0, 0, cols, opts, results);
    return results;
  }

  std::vector<std::thread> pool;
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  const Index chunk = (cols + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const Index begin = std::min<Index>(t * chunk, cols);
    const Index end = std::min<Index>(begin + chunk, cols);
    if (begin == end) continue;
    pool.emplace_back([&, begin, end] {
      try {
        run_chunk(a, x0, begin, end, opts, results);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed) std::rethrow_exception(first_error);
  return results;
}

}  // namespace graphshift::detail
