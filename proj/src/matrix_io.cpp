#include "graphshift/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "graphshift/errors.hpp"

namespace graphshift {
namespace {

struct LineReader {
  std::istream& in;
  long line = 0;

  bool next(std::string& out) {
    while (std::getline(in, out)) {
      ++line;
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  }
};

std::vector<std::string_view> split_ws(const std::string& s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(std::string_view(s).substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view tok, long line) {
  double v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError("malformed number '" + std::string(tok) + "'", line);
  return v;
}

long parse_long(std::string_view tok, long line) {
  long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    throw ParseError("malformed integer '" + std::string(tok) + "'", line);
  return v;
}

AffinityMatrixd read_dense(LineReader& r, Index n) {
  if (n <= 0) throw ParseError("vertex count must be positive", r.line);
  MatrixXd m(n, n);
  std::string buf;
  for (Index i = 0; i < n; ++i) {
    if (!r.next(buf)) throw ParseError("expected " + std::to_string(n) + " matrix rows", r.line);
    const auto toks = split_ws(buf);
    if (static_cast<Index>(toks.size()) != n)
      throw ParseError("row has " + std::to_string(toks.size()) + " values, expected " +
                           std::to_string(n),
                       r.line);
    for (Index j = 0; j < n; ++j) m(i, j) = parse_double(toks[j], r.line);
  }
  std::string extra;
  if (r.next(extra)) throw ParseError("trailing content after matrix rows", r.line);
  try {
    return AffinityMatrixd::from_dense(std::move(m));
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), r.line);
  }
}

AffinityMatrixd read_sparse(LineReader& r, Index n, long nnz) {
  if (n <= 0) throw ParseError("vertex count must be positive", r.line);
  if (nnz < 0) throw ParseError("nnz must be nonnegative", r.line);
  std::vector<AffinityMatrixd::Triplet> upper;
  upper.reserve(static_cast<std::size_t>(nnz));
  std::string buf;
  for (long e = 0; e < nnz; ++e) {
    if (!r.next(buf)) throw ParseError("expected " + std::to_string(nnz) + " entries", r.line);
    const auto toks = split_ws(buf);
    if (toks.size() != 3) throw ParseError("sparse entry must be 'i j v'", r.line);
    const long i = parse_long(toks[0], r.line);
    const long j = parse_long(toks[1], r.line);
    const double v = parse_double(toks[2], r.line);
    if (i == j) throw ParseError("diagonal entry not allowed", r.line);
    if (i < 0 || j < 0 || i >= n || j >= n) throw ParseError("index out of range", r.line);
    if (i >= j)
      throw ParseError("entries must have i < j (the mirror is implied)", r.line);
    if (!(v > 0)) throw ParseError("sparse entries must be positive", r.line);
    upper.emplace_back(static_cast<Index>(i), static_cast<Index>(j), v);
  }
  std::string extra;
  if (r.next(extra)) throw ParseError("trailing content after entries", r.line);
  try {
    return AffinityMatrixd::from_upper_triplets(n, upper);
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), r.line);
  }
}

}  // namespace

AffinityMatrixd read_matrix(std::istream& in) {
  LineReader r{in};
  std::string header;
  if (!r.next(header)) throw ParseError("empty matrix file", 1);
  const auto toks = split_ws(header);
  if (toks.size() == 1) return read_dense(r, static_cast<Index>(parse_long(toks[0], r.line)));
  if (toks.size() == 3 && toks[0] == "sparse")
    return read_sparse(r, static_cast<Index>(parse_long(toks[1], r.line)),
                       parse_long(toks[2], r.line));
  throw ParseError("header must be 'n' or 'sparse n nnz'", r.line);
}

AffinityMatrixd read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file '" + path + "'");
  return read_matrix(in);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_matrix(std::ostream& out, const AffinityMatrixd& a, StorageKind as) {
  const Index n = a.n();
  if (as == StorageKind::Dense) {
    out << n << '\n';
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) {
        if (j) out << ' ';
        out << format_double(a.coeff(i, j));
      }
      out << '\n';
    }
    return;
  }
  const auto upper = a.upper_triplets();
  out << "sparse " << n << ' ' << upper.size() << '\n';
  for (const auto& t : upper)
    out << t.row() << ' ' << t.col() << ' ' << format_double(t.value()) << '\n';
}

void write_matrix_file(const std::string& path, const AffinityMatrixd& a, StorageKind as) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  write_matrix(out, a, as);
  out.flush();
  if (!out) throw std::ios_base::failure("failed writing '" + path + "'");
}

}  // namespace graphshift
