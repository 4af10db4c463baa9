#pragma once

#include <cstdint>
#include <string>

#include "graphshift/affinity.hpp"
#include "graphshift/types.hpp"

namespace graphshift {

enum class Family { FDM, PDM, BTM };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

/// Seeded recipe for one synthetic affinity matrix. Entry values come from
/// per-entry splitmix64 streams keyed by (seed, i, j), so the result is
/// bit-identical across platforms and independent of generation order.
struct GeneratorSpec {
  Family family = Family::FDM;
  Index n = 0;
  double target_sparse_rate = 0;  // PDM only, in (0, 1)
  int block_count = 13;           // BTM only, >= 2
  std::uint64_t seed = 0;

  void validate() const;
};

/// Fully dense: every off-diagonal entry uniform on [0, 1].
AffinityMatrixd gen_fdm(Index n, std::uint64_t seed);

/// Partially dense: each off-diagonal pair kept with probability
/// p = target * n^2 / (n^2 - n), so the expected nonzero fraction over the
/// whole matrix (zero diagonal included) hits the target.
AffinityMatrixd gen_pdm(Index n, double target_sparse_rate, std::uint64_t seed);

/// Block tridiagonal: block_count near-equal contiguous blocks, entries
/// uniform on [0, 1] wherever |block(i) - block(j)| <= 1.
AffinityMatrixd gen_btm(Index n, int block_count, std::uint64_t seed);

AffinityMatrixd generate(const GeneratorSpec& spec);

/// The generator behind entry values; recorded in output metadata.
inline constexpr const char* kGeneratorPrng = "splitmix64";

}  // namespace graphshift
