#pragma once

#include <algorithm>
#include <cmath>

#include "graphshift/affinity.hpp"
#include "graphshift/simplex.hpp"
#include "graphshift/types.hpp"

namespace graphshift {

/// First-order stationarity report for max x^T A x over the simplex.
/// lambda is the Lagrange multiplier estimate; contracting the stationarity
/// system with x forces lambda = x^T A x, so that value is used everywhere.
struct KktReport {
  double lambda = 0;
  double residual = 0;
  bool is_mode = false;
};

namespace detail {

// Max deviation |(Ax)_i - lambda| over the support.
template <class Scalar>
Scalar on_support_residual(const Vector<Scalar>& x, const Vector<Scalar>& ax, Scalar lambda,
                           Scalar eps_supp) {
  Scalar r = 0;
  for (Index i = 0; i < x.size(); ++i)
    if (x(i) > eps_supp) r = std::max(r, std::abs(ax(i) - lambda));
  return r;
}

// Max positive part of (Ax)_i - lambda off the support.
template <class Scalar>
Scalar off_support_violation(const Vector<Scalar>& x, const Vector<Scalar>& ax, Scalar lambda,
                             Scalar eps_supp) {
  Scalar r = 0;
  for (Index i = 0; i < x.size(); ++i)
    if (!(x(i) > eps_supp)) r = std::max(r, ax(i) - lambda);
  return std::max(r, Scalar(0));
}

template <class Scalar>
KktReport kkt_from_products(const Vector<Scalar>& x, const Vector<Scalar>& ax, Scalar lambda,
                            Scalar eps_kkt, Scalar eps_supp) {
  KktReport rep;
  rep.lambda = static_cast<double>(lambda);
  const Scalar on = on_support_residual(x, ax, lambda, eps_supp);
  const Scalar off = off_support_violation(x, ax, lambda, eps_supp);
  rep.residual = static_cast<double>(std::max(on, off));
  rep.is_mode = rep.residual <= static_cast<double>(eps_kkt);
  return rep;
}

}  // namespace detail

/// Test membership in the solution set: (Ax)_i = lambda on the support,
/// (Ax)_i <= lambda off it, combined into one max-norm residual.
template <class Scalar>
KktReport kkt_check(const AffinityMatrix<Scalar>& a, const Vector<Scalar>& x, Scalar eps_kkt,
                    Scalar eps_supp = Scalar(kDefaultSupportEps)) {
  if (!(eps_kkt > Scalar(0))) throw InvalidInput("kkt_check: eps_kkt must be positive");
  const Vector<Scalar> ax = a.apply(x);
  return detail::kkt_from_products(x, ax, x.dot(ax), eps_kkt, eps_supp);
}

/// Stationarity residual restricted to the support; the replicator stopping
/// gauge (off-support violations are invisible to the B iteration).
template <class Scalar>
Scalar on_support_residual(const AffinityMatrix<Scalar>& a, const Vector<Scalar>& x,
                           Scalar eps_supp = Scalar(kDefaultSupportEps)) {
  const Vector<Scalar> ax = a.apply(x);
  return detail::on_support_residual(x, ax, x.dot(ax), eps_supp);
}

}  // namespace graphshift
