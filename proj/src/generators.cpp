#include "graphshift/generators.hpp"

#include "graphshift/errors.hpp"
#include "graphshift/rng.hpp"

namespace graphshift {
namespace {

SplitMix64 entry_stream(std::uint64_t seed, Index i, Index j) {
  return SplitMix64(hash_combine(hash_combine(seed, static_cast<std::uint64_t>(i)),
                                 static_cast<std::uint64_t>(j)));
}

Index block_of(Index i, Index n, int blocks) {
  // contiguous blocks, sizes differing by at most one, larger blocks first
  const Index q = n / blocks, r = n % blocks;
  const Index cut = r * (q + 1);
  return i < cut ? i / (q + 1) : r + (i - cut) / q;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::FDM: return "fdm";
    case Family::PDM: return "pdm";
    case Family::BTM: return "btm";
  }
  return "fdm";
}

Family family_from_string(const std::string& s) {
  if (s == "fdm") return Family::FDM;
  if (s == "pdm") return Family::PDM;
  if (s == "btm") return Family::BTM;
  throw InvalidInput("unknown matrix family '" + s + "' (expected fdm, pdm or btm)");
}

void GeneratorSpec::validate() const {
  if (n < 2) throw InvalidInput("GeneratorSpec: n must be at least 2");
  if (family == Family::PDM) {
    const double max_rate = static_cast<double>(n - 1) / static_cast<double>(n);
    if (!(target_sparse_rate > 0) || target_sparse_rate >= 1)
      throw InvalidInput("GeneratorSpec: PDM needs a target sparse rate in (0, 1)");
    if (target_sparse_rate > max_rate)
      throw InvalidInput("GeneratorSpec: target sparse rate exceeds the feasible (n^2-n)/n^2");
  }
  if (family == Family::BTM) {
    if (block_count < 2) throw InvalidInput("GeneratorSpec: BTM needs at least 2 blocks");
    if (n < block_count) throw InvalidInput("GeneratorSpec: BTM needs n >= block_count");
  }
}

AffinityMatrixd gen_fdm(Index n, std::uint64_t seed) {
  GeneratorSpec{Family::FDM, n, 0, 13, seed}.validate();
  MatrixXd m = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const double v = entry_stream(seed, i, j).next_unit_closed();
      m(i, j) = v;
      m(j, i) = v;
    }
  return AffinityMatrixd::from_dense(std::move(m));
}

AffinityMatrixd gen_pdm(Index n, double target_sparse_rate, std::uint64_t seed) {
  GeneratorSpec{Family::PDM, n, target_sparse_rate, 13, seed}.validate();
  const double nd = static_cast<double>(n);
  const double keep_p = target_sparse_rate * nd * nd / (nd * nd - nd);
  MatrixXd m = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      SplitMix64 g = entry_stream(seed, i, j);
      if (g.next_unit_closed() >= keep_p) continue;
      const double v = g.next_unit_closed();
      m(i, j) = v;
      m(j, i) = v;
    }
  return AffinityMatrixd::from_dense(std::move(m));
}

AffinityMatrixd gen_btm(Index n, int block_count, std::uint64_t seed) {
  GeneratorSpec{Family::BTM, n, 0, block_count, seed}.validate();
  MatrixXd m = MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    const Index bi = block_of(i, n, block_count);
    for (Index j = i + 1; j < n; ++j) {
      const Index bj = block_of(j, n, block_count);
      if (bj - bi > 1) break;  // blocks are contiguous, later j only moves further away
      const double v = entry_stream(seed, i, j).next_unit_closed();
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return AffinityMatrixd::from_dense(std::move(m));
}

AffinityMatrixd generate(const GeneratorSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case Family::FDM: return gen_fdm(spec.n, spec.seed);
    case Family::PDM: return gen_pdm(spec.n, spec.target_sparse_rate, spec.seed);
    case Family::BTM: return gen_btm(spec.n, spec.block_count, spec.seed);
  }
  throw InvalidInput("GeneratorSpec: unknown family");
}

}  // namespace graphshift
