#pragma once

#include <iosfwd>
#include <string>

#include "graphshift/affinity.hpp"

namespace graphshift {

// Text formats:
//   dense  -- line 1: n; lines 2..n+1: n space-separated decimal floats per row.
//   sparse -- line 1: "sparse n nnz"; then nnz lines "i j v" with 0-based
//             i < j and v > 0; the (j, i) mirror is implied, absent pairs are 0.
// The reader rejects nonzero diagonals, asymmetric or duplicate entries, and
// negative weights; errors carry the offending line number. Values are written
// with shortest round-trip precision, so write -> read is bit-identical.

AffinityMatrixd read_matrix(std::istream& in);
AffinityMatrixd read_matrix_file(const std::string& path);

void write_matrix(std::ostream& out, const AffinityMatrixd& a, StorageKind as);
void write_matrix_file(const std::string& path, const AffinityMatrixd& a, StorageKind as);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace graphshift
