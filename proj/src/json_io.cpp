#include "graphshift/json_io.hpp"

#include <fstream>

#include "graphshift/errors.hpp"

namespace graphshift {

json to_json(const SolverConfig& cfg) {
  return json{{"algorithm", to_string(cfg.algorithm)},
              {"eps_kkt", cfg.eps_kkt},
              {"eps_fix", cfg.eps_fix},
              {"eps_supp", cfg.eps_supp},
              {"merge_tol", cfg.merge_tol},
              {"max_rd_iters", cfg.max_rd_iters},
              {"max_outer_iters", cfg.max_outer_iters},
              {"record_trajectory", cfg.record_trajectory},
              {"threads", cfg.threads}};
}

json to_json(const KktReport& rep) {
  return json{{"lambda", rep.lambda}, {"residual", rep.residual}, {"is_mode", rep.is_mode}};
}

json to_json(const RunTrace& trace) {
  json steps = json::array();
  for (const StepRecord& s : trace.steps)
    steps.push_back({{"phase", s.phase == Phase::RD ? "RD" : "NE"},
                     {"g", s.objective},
                     {"outer", s.outer_iteration}});
  return json{{"vertex", trace.start_vertex},
              {"initial_g", trace.initial_objective},
              {"steps", std::move(steps)}};
}

json traces_to_json(const std::vector<RunTrace>& traces) {
  json arr = json::array();
  for (const RunTrace& t : traces) arr.push_back(to_json(t));
  return arr;
}

json to_json(const RunResult& run, bool include_trace) {
  json j{{"start_vertex", run.start_vertex},
         {"final_x", std::vector<double>(run.final_x.data(), run.final_x.data() + run.final_x.size())},
         {"mode_support", run.mode_support},
         {"final_objective", run.final_objective},
         {"kkt", to_json(run.kkt)},
         {"on_support_residual", run.on_support_residual},
         {"rd_step_counts", run.rd_step_counts},
         {"outer_iterations", run.outer_iterations},
         {"converged", run.converged}};
  if (include_trace && run.trace) j["trace"] = to_json(*run.trace);
  return j;
}

json to_json(const ClusterAssignment& assignment) {
  json modes = json::array();
  for (const Mode& m : assignment.modes) {
    modes.push_back({{"id", m.id},
                     {"support", m.support},
                     {"objective", m.objective},
                     {"representative", std::vector<double>(m.representative.data(),
                                                            m.representative.data() +
                                                                m.representative.size())}});
  }
  return json{{"modes", std::move(modes)},
              {"labels", assignment.labels},
              {"all_converged", assignment.all_converged}};
}

json generator_metadata(const GeneratorSpec& spec, const AffinityMatrixd& a) {
  json j{{"family", to_string(spec.family)},
         {"n", spec.n},
         {"seed", spec.seed},
         {"prng", kGeneratorPrng},
         {"sparse_rate", sparse_rate(a)},
         {"nonzeros", a.nonzero_count()}};
  if (spec.family == Family::PDM) j["target_sparse_rate"] = spec.target_sparse_rate;
  if (spec.family == Family::BTM) j["block_count"] = spec.block_count;
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing '" + path + "'");
}

}  // namespace graphshift
