#pragma once

#include <Eigen/SparseCore>

#include <string>
#include <utility>
#include <vector>

#include "graphshift/errors.hpp"
#include "graphshift/types.hpp"

namespace graphshift {

enum class StorageKind { Dense, SparseSymmetric };

/// Symmetric nonnegative similarity matrix with zero diagonal. Immutable
/// after construction; reads are safe from any number of threads.
///
/// Dense storage keeps the full mirrored matrix. Sparse storage keeps the
/// strict upper triangle only and mirrors on read, so symmetry holds by
/// construction.
template <class Scalar>
class AffinityMatrix {
 public:
  using Dense = Matrix<Scalar>;
  using Sparse = Eigen::SparseMatrix<Scalar>;
  using Triplet = Eigen::Triplet<Scalar>;

  static AffinityMatrix from_dense(Dense entries) {
    validate_dense(entries);
    AffinityMatrix a;
    a.kind_ = StorageKind::Dense;
    a.dense_ = std::move(entries);
    a.n_ = a.dense_.rows();
    return a;
  }

  /// Build sparse-symmetric storage from strict-upper triplets (i < j, v > 0).
  static AffinityMatrix from_upper_triplets(Index n, const std::vector<Triplet>& upper) {
    if (n <= 0) throw InvalidInput("AffinityMatrix: n must be positive");
    AffinityMatrix a;
    a.kind_ = StorageKind::SparseSymmetric;
    a.n_ = n;
    a.upper_.resize(n, n);
    for (const auto& t : upper) {
      if (t.row() < 0 || t.col() >= n || t.row() >= t.col())
        throw InvalidInput("AffinityMatrix: sparse entries must satisfy 0 <= i < j < n");
      if (!(t.value() > Scalar(0)))
        throw InvalidInput("AffinityMatrix: sparse entries must be positive");
    }
    a.upper_.setFromTriplets(upper.begin(), upper.end(),
                             [](const Scalar&, const Scalar&) -> Scalar {
                               throw InvalidInput("AffinityMatrix: duplicate sparse entry");
                             });
    a.upper_.makeCompressed();
    return a;
  }

  Index n() const { return n_; }
  StorageKind storage_kind() const { return kind_; }
  bool is_dense() const { return kind_ == StorageKind::Dense; }

  Scalar coeff(Index i, Index j) const {
    if (is_dense()) return dense_(i, j);
    return i < j ? upper_.coeff(i, j) : (i > j ? upper_.coeff(j, i) : Scalar(0));
  }

  /// y = A x.
  Vector<Scalar> apply(const Vector<Scalar>& x) const {
    require_size(x.size());
    if (is_dense()) return dense_ * x;
    return upper_.template selfadjointView<Eigen::Upper>() * x;
  }

  /// Y = A X, one column per candidate point.
  Matrix<Scalar> apply(const Matrix<Scalar>& x_cols) const {
    require_size(x_cols.rows());
    if (is_dense()) return dense_ * x_cols;
    return upper_.template selfadjointView<Eigen::Upper>() * x_cols;
  }

  bool row_is_zero(Index i) const {
    if (is_dense()) return (dense_.row(i).array() == Scalar(0)).all();
    for (typename Sparse::InnerIterator it(upper_, i); it; ++it)
      if (it.row() < i) return false;  // entries (r, i) with r < i mirror into row i
    // entries (i, c) with c > i live in columns right of i
    for (Index c = i + 1; c < n_; ++c)
      if (upper_.coeff(i, c) != Scalar(0)) return false;
    return true;
  }

  /// {i} together with every j such that a_ij > 0.
  std::vector<Index> closed_neighborhood(Index i) const {
    std::vector<Index> nb;
    for (Index j = 0; j < n_; ++j)
      if (j == i || coeff(i, j) > Scalar(0)) nb.push_back(j);
    return nb;
  }

  Index nonzero_count() const {
    if (is_dense()) return (dense_.array() != Scalar(0)).count();
    Index nnz = 0;
    for (Index k = 0; k < upper_.outerSize(); ++k)
      for (typename Sparse::InnerIterator it(upper_, k); it; ++it)
        if (it.value() != Scalar(0)) ++nnz;
    return 2 * nnz;  // mirror; diagonal is structurally zero
  }

  Scalar max_entry() const {
    if (n_ == 0) return Scalar(0);
    if (is_dense()) return dense_.maxCoeff();
    Scalar m = 0;
    for (Index k = 0; k < upper_.outerSize(); ++k)
      for (typename Sparse::InnerIterator it(upper_, k); it; ++it)
        m = std::max(m, it.value());
    return m;
  }

  AffinityMatrix to_dense() const {
    if (is_dense()) return *this;
    Dense d = upper_.template selfadjointView<Eigen::Upper>();
    return from_dense(std::move(d));
  }

  AffinityMatrix to_sparse() const {
    if (!is_dense()) return *this;
    std::vector<Triplet> upper;
    for (Index j = 1; j < n_; ++j)
      for (Index i = 0; i < j; ++i)
        if (dense_(i, j) != Scalar(0)) upper.emplace_back(i, j, dense_(i, j));
    return from_upper_triplets(n_, upper);
  }

  /// Strict-upper nonzeros as (i, j, value), row-major order.
  std::vector<Triplet> upper_triplets() const {
    std::vector<Triplet> out;
    if (is_dense()) {
      for (Index i = 0; i < n_; ++i)
        for (Index j = i + 1; j < n_; ++j)
          if (dense_(i, j) != Scalar(0)) out.emplace_back(i, j, dense_(i, j));
      return out;
    }
    for (Index i = 0; i < n_; ++i)
      for (Index c = i + 1; c < n_; ++c) {
        const Scalar v = upper_.coeff(i, c);
        if (v != Scalar(0)) out.emplace_back(i, c, v);
      }
    return out;
  }

  const Dense& dense_entries() const {
    if (!is_dense()) throw InvalidInput("AffinityMatrix: not dense storage");
    return dense_;
  }

 private:
  AffinityMatrix() = default;

  static void validate_dense(const Dense& m) {
    if (m.rows() != m.cols() || m.rows() <= 0)
      throw InvalidInput("AffinityMatrix: matrix must be square and nonempty");
    for (Index i = 0; i < m.rows(); ++i) {
      if (m(i, i) != Scalar(0))
        throw InvalidInput("AffinityMatrix: nonzero diagonal at index " + std::to_string(i));
      for (Index j = i + 1; j < m.cols(); ++j) {
        if (m(i, j) != m(j, i))
          throw InvalidInput("AffinityMatrix: asymmetric entries at (" + std::to_string(i) +
                             ", " + std::to_string(j) + ")");
        if (m(i, j) < Scalar(0))
          throw InvalidInput("AffinityMatrix: negative entry at (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
      }
    }
  }

  void require_size(Index rows) const {
    if (rows != n_)
      throw InvalidInput("AffinityMatrix: dimension mismatch (n = " + std::to_string(n_) +
                         ", vector size = " + std::to_string(rows) + ")");
  }

  StorageKind kind_ = StorageKind::Dense;
  Index n_ = 0;
  Dense dense_;
  Sparse upper_;
};

using AffinityMatrixd = AffinityMatrix<double>;

/// g(x) = x^T A x, the internal similarity of the weighted subgraph x.
template <class Scalar>
Scalar objective(const AffinityMatrix<Scalar>& a, const Vector<Scalar>& x) {
  return x.dot(a.apply(x));
}

/// Fraction of nonzero entries.
template <class Scalar>
double sparse_rate(const AffinityMatrix<Scalar>& a) {
  const double n = static_cast<double>(a.n());
  return static_cast<double>(a.nonzero_count()) / (n * n);
}

}  // namespace graphshift
