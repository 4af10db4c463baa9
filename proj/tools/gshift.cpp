// gshift: generate synthetic affinity matrices, run the Graph Shift and
// Dominant-Sets solvers, cluster start vertices by terminal mode, and drive
// benchmark grids.
//
// Exit codes: 0 success, 1 invalid input, 2 I/O failure, 3 non-convergence.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "graphshift/errors.hpp"
#include "graphshift/experiment.hpp"
#include "graphshift/json_io.hpp"
#include "graphshift/matrix_io.hpp"
#include "graphshift/solver.hpp"

namespace gs = graphshift;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;
constexpr int kExitNoConvergence = 3;

struct MatrixSource {
  std::string file;
  std::string family;
  long n = 0;
  double sparse_rate_target = 0.263;
  int blocks = 13;
  std::uint64_t seed = 1;

  void add_flags(CLI::App* cmd) {
    auto* file_opt = cmd->add_option("--matrix-file", file, "Read the matrix from a text file");
    auto* fam_opt =
        cmd->add_option("--family", family, "Generate a matrix: fdm, pdm or btm")
            ->check(CLI::IsMember({"fdm", "pdm", "btm"}));
    cmd->add_option("--n", n, "Vertex count for --family");
    cmd->add_option("--sparse-rate", sparse_rate_target, "PDM target sparse rate");
    cmd->add_option("--blocks", blocks, "BTM block count");
    cmd->add_option("--seed", seed, "Generator seed");
    file_opt->excludes(fam_opt);
    fam_opt->excludes(file_opt);
  }

  gs::GeneratorSpec spec() const {
    gs::GeneratorSpec s;
    s.family = gs::family_from_string(family);
    s.n = n;
    s.target_sparse_rate = sparse_rate_target;
    s.block_count = blocks;
    s.seed = seed;
    return s;
  }

  gs::AffinityMatrixd load() const {
    if (!file.empty()) return gs::read_matrix_file(file);
    if (family.empty())
      throw gs::InvalidInput("a matrix source is required: --matrix-file or --family with --n");
    return gs::generate(spec());
  }
};

struct SolverFlags {
  std::string algorithm = "gs";
  gs::SolverConfig cfg;
  std::string trace_path;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--algorithm", algorithm, "gs or dspc")
        ->check(CLI::IsMember({"gs", "dspc"}));
    cmd->add_option("--tol-kkt", cfg.eps_kkt, "KKT residual tolerance");
    cmd->add_option("--tol-fix", cfg.eps_fix, "Replicator displacement tolerance");
    cmd->add_option("--tol-supp", cfg.eps_supp, "Support threshold");
    cmd->add_option("--max-rd-iters", cfg.max_rd_iters, "Replicator step budget per phase");
    cmd->add_option("--max-outer-iters", cfg.max_outer_iters, "Outer iteration budget");
    cmd->add_option("--threads", cfg.threads, "Worker thread cap");
    cmd->add_option("--trace", trace_path, "Write trajectory JSON to this path");
  }

  gs::SolverConfig config() const {
    gs::SolverConfig c = cfg;
    c.algorithm = gs::algorithm_from_string(algorithm);
    c.record_trajectory = !trace_path.empty();
    return c;
  }
};

std::unique_ptr<std::ofstream> open_output(const std::string& path) {
  auto out = std::make_unique<std::ofstream>(path);
  if (!*out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  return out;
}

int cmd_generate(const MatrixSource& src, const std::string& out_path,
                 const std::string& format) {
  if (src.family.empty()) throw gs::InvalidInput("generate requires --family and --n");
  const gs::GeneratorSpec spec = src.spec();
  const gs::AffinityMatrixd a = gs::generate(spec);
  const gs::StorageKind kind =
      format == "sparse" ? gs::StorageKind::SparseSymmetric : gs::StorageKind::Dense;
  gs::write_matrix_file(out_path, a, kind);
  gs::write_json_file(out_path + ".meta.json", gs::generator_metadata(spec, a));
  return kExitOk;
}

int cmd_run(const MatrixSource& src, const SolverFlags& flags, long start) {
  const gs::AffinityMatrixd a = src.load();
  const gs::SolverConfig cfg = flags.config();
  if (start < 0 || start >= a.n())
    throw gs::InvalidInput("--start " + std::to_string(start) + " out of range for n = " +
                           std::to_string(a.n()));
  const gs::RunResult result = cfg.algorithm == gs::Algorithm::GS
                                   ? gs::gs_run(a, static_cast<gs::Index>(start), cfg)
                                   : gs::dspc_run(a, static_cast<gs::Index>(start), cfg);
  gs::json j = gs::to_json(result, false);
  j["config"] = gs::to_json(cfg);
  std::cout << j.dump(2) << '\n';
  if (!flags.trace_path.empty() && result.trace)
    gs::write_json_file(flags.trace_path, gs::traces_to_json({*result.trace}));
  return result.converged ? kExitOk : kExitNoConvergence;
}

int cmd_cluster(const MatrixSource& src, const SolverFlags& flags, const std::string& out_path,
                const std::string& modes_path) {
  const gs::AffinityMatrixd a = src.load();
  const gs::SolverConfig cfg = flags.config();
  auto [results, assignment] = gs::cluster_all(a, cfg);

  std::unique_ptr<std::ofstream> file;
  if (!out_path.empty()) file = open_output(out_path);
  std::ostream& out = file ? *file : std::cout;
  out << "vertex,label\n";
  for (std::size_t i = 0; i < assignment.labels.size(); ++i)
    out << i << ',' << assignment.labels[i] << '\n';
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing labels");

  if (!modes_path.empty()) {
    gs::json j = gs::to_json(assignment);
    j["config"] = gs::to_json(cfg);
    gs::write_json_file(modes_path, j);
  }
  if (!flags.trace_path.empty()) {
    std::vector<gs::RunTrace> traces;
    for (const auto& r : results)
      if (r.trace) traces.push_back(*r.trace);
    gs::write_json_file(flags.trace_path, gs::traces_to_json(traces));
  }
  return assignment.all_converged ? kExitOk : kExitNoConvergence;
}

int cmd_experiment(const SolverFlags& flags, const std::vector<std::string>& families,
                   const std::vector<long>& scales, const std::vector<std::string>& algorithms,
                   int repeats, std::uint64_t seed, double pdm_rate, int blocks,
                   const std::string& out_path) {
  gs::ExperimentGrid grid;
  grid.families.clear();
  for (const auto& f : families) grid.families.push_back(gs::family_from_string(f));
  grid.scales.assign(scales.begin(), scales.end());
  grid.algorithms.clear();
  for (const auto& a : algorithms) grid.algorithms.push_back(gs::algorithm_from_string(a));
  grid.repeats = repeats;
  grid.base_seed = seed;
  grid.pdm_target_sparse_rate = pdm_rate;
  grid.btm_blocks = blocks;
  grid.solver = flags.cfg;
  grid.solver.validate();

  std::vector<gs::RunTrace> traces;
  const bool want_traces = !flags.trace_path.empty();
  const auto rows = gs::run_grid(grid, want_traces ? &traces : nullptr);

  std::unique_ptr<std::ofstream> file;
  if (!out_path.empty()) file = open_output(out_path);
  std::ostream& out = file ? *file : std::cout;
  gs::write_summary_csv(out, rows);
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing summary CSV");

  if (!out_path.empty()) {
    gs::json meta{{"base_seed", grid.base_seed},
                  {"repeats", grid.repeats},
                  {"pdm_target_sparse_rate", grid.pdm_target_sparse_rate},
                  {"btm_blocks", grid.btm_blocks},
                  {"prng", gs::kGeneratorPrng},
                  {"solver", gs::to_json(grid.solver)}};
    gs::write_json_file(out_path + ".meta.json", meta);
  }
  if (want_traces) gs::write_json_file(flags.trace_path, gs::traces_to_json(traces));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph Shift / Dominant Sets dense-subgraph solver"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic affinity matrix");
  MatrixSource gen_src;
  gen_src.add_flags(gen);
  std::string gen_out, gen_format = "dense";
  gen->add_option("--out", gen_out, "Output matrix path")->required();
  gen->add_option("--format", gen_format, "dense or sparse")
      ->check(CLI::IsMember({"dense", "sparse"}));

  // run
  auto* run = app.add_subcommand("run", "Solve from one start vertex, print JSON");
  MatrixSource run_src;
  SolverFlags run_flags;
  run_src.add_flags(run);
  run_flags.add_flags(run);
  long run_start = 0;
  run->add_option("--start", run_start, "Start vertex (0-based)")->required();

  // cluster
  auto* clu = app.add_subcommand("cluster", "Solve from every vertex, emit labels CSV");
  MatrixSource clu_src;
  SolverFlags clu_flags;
  clu_src.add_flags(clu);
  clu_flags.add_flags(clu);
  std::string clu_out, clu_modes;
  clu->add_option("--out", clu_out, "Labels CSV path (stdout if omitted)");
  clu->add_option("--modes", clu_modes, "Modes JSON path");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Benchmark grid, emit summary CSV");
  SolverFlags exp_flags;
  exp_flags.add_flags(exp);
  std::vector<std::string> exp_families{"fdm"}, exp_algorithms{"gs"};
  std::vector<long> exp_scales{100};
  int exp_repeats = 3;
  std::uint64_t exp_seed = 1;
  double exp_rate = 0.263;
  int exp_blocks = 13;
  std::string exp_out;
  exp->add_option("--families", exp_families, "Comma-separated families")->delimiter(',');
  exp->add_option("--scales", exp_scales, "Comma-separated matrix sizes")->delimiter(',');
  exp->add_option("--algorithms", exp_algorithms, "Comma-separated algorithms")->delimiter(',');
  exp->add_option("--repeats", exp_repeats, "Seeds per cell");
  exp->add_option("--seed", exp_seed, "Base seed");
  exp->add_option("--sparse-rate", exp_rate, "PDM target sparse rate");
  exp->add_option("--blocks", exp_blocks, "BTM block count");
  exp->add_option("--out", exp_out, "Summary CSV path (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_src, gen_out, gen_format);
    if (run->parsed()) return cmd_run(run_src, run_flags, run_start);
    if (clu->parsed()) return cmd_cluster(clu_src, clu_flags, clu_out, clu_modes);
    if (exp->parsed())
      return cmd_experiment(exp_flags, exp_families, exp_scales, exp_algorithms, exp_repeats,
                            exp_seed, exp_rate, exp_blocks, exp_out);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const gs::InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const gs::DegenerateState& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const gs::NumericalFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
