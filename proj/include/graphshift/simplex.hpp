#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "graphshift/errors.hpp"
#include "graphshift/types.hpp"

namespace graphshift {

// Neumaier compensated summation; error is O(eps) independent of length.
template <class Scalar, class Derived>
Scalar compensated_sum(const Eigen::MatrixBase<Derived>& v) {
  Scalar sum = 0, comp = 0;
  for (Index i = 0; i < v.size(); ++i) {
    const Scalar x = v(i);
    const Scalar t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

template <class Derived>
typename Derived::Scalar compensated_sum(const Eigen::MatrixBase<Derived>& v) {
  return compensated_sum<typename Derived::Scalar>(v);
}

/// True iff x is componentwise nonnegative and sums to 1 within sum_tol.
template <class Derived>
bool is_simplex_point(const Eigen::MatrixBase<Derived>& x,
                      typename Derived::Scalar sum_tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  if (x.size() == 0) return false;
  if ((x.array() < Scalar(0)).any()) return false;
  return std::abs(compensated_sum(x) - Scalar(1)) <= sum_tol;
}

template <class Derived>
void validate_simplex(const Eigen::MatrixBase<Derived>& x, const char* where,
                      typename Derived::Scalar sum_tol = 1e-12) {
  if (!is_simplex_point(x, sum_tol))
    throw InvalidInput(std::string(where) + ": not a simplex point");
}

/// Snap a vector that is a roundoff-perturbation of a simplex point back onto
/// the simplex: negatives of magnitude <= 1e-12 become 0 and the vector is
/// rescaled so the compensated sum is within 1e-15 of 1. Gross departures
/// (sum off by more than 1e-6, or a negative below -1e-12) are numerical
/// failures attributed to `step`.
template <class Scalar>
Vector<Scalar> clamp_to_simplex(Vector<Scalar> x, const char* step) {
  constexpr Scalar neg_floor = Scalar(-1e-12);
  constexpr Scalar sum_slack = Scalar(1e-6);

  const Scalar raw_sum = compensated_sum(x);
  if (std::abs(raw_sum - Scalar(1)) > sum_slack)
    throw NumericalFailure(std::string(step) + ": simplex sum drifted to " +
                           std::to_string(static_cast<double>(raw_sum)));
  for (Index i = 0; i < x.size(); ++i) {
    if (x(i) < Scalar(0)) {
      if (x(i) < neg_floor)
        throw NumericalFailure(std::string(step) + ": negative component " +
                               std::to_string(static_cast<double>(x(i))) + " at index " +
                               std::to_string(i));
      x(i) = Scalar(0);
    }
  }
  x /= compensated_sum(x);
  // One correction on the largest entry pins the compensated sum to 1 +- eps.
  Scalar excess = compensated_sum(x) - Scalar(1);
  if (excess != Scalar(0)) {
    Index imax = 0;
    x.maxCoeff(&imax);
    x(imax) -= excess;
    if (x(imax) < Scalar(0)) x(imax) = Scalar(0);
  }
  return x;
}

/// Indices with mass strictly above eps_supp, ascending.
template <class Derived>
std::vector<Index> support_of(const Eigen::MatrixBase<Derived>& x,
                              typename Derived::Scalar eps_supp = kDefaultSupportEps) {
  std::vector<Index> idx;
  for (Index i = 0; i < x.size(); ++i)
    if (x(i) > eps_supp) idx.push_back(i);
  return idx;
}

template <class Scalar = double>
Vector<Scalar> vertex_point(Index n, Index i) {
  if (i < 0 || i >= n) throw InvalidInput("vertex_point: index out of range");
  Vector<Scalar> x = Vector<Scalar>::Zero(n);
  x(i) = Scalar(1);
  return x;
}

/// Uniform distribution over a nonempty index set.
template <class Scalar = double>
Vector<Scalar> uniform_on(Index n, const std::vector<Index>& indices) {
  if (indices.empty()) throw InvalidInput("uniform_on: empty index set");
  Vector<Scalar> x = Vector<Scalar>::Zero(n);
  const Scalar w = Scalar(1) / Scalar(indices.size());
  for (Index i : indices) {
    if (i < 0 || i >= n) throw InvalidInput("uniform_on: index out of range");
    x(i) = w;
  }
  return clamp_to_simplex(std::move(x), "uniform_on");
}

}  // namespace graphshift
