#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "graphshift/affinity.hpp"
#include "graphshift/kkt.hpp"
#include "graphshift/simplex.hpp"
#include "graphshift/types.hpp"

namespace graphshift {

// ---------------------------------------------------------------------------
// Replicator transformation B
// ---------------------------------------------------------------------------

namespace detail {

// x'_i = (Ax)_i x_i / (x^T A x), given the precomputed products.
template <class Scalar>
Vector<Scalar> replicator_apply(const Vector<Scalar>& x, const Vector<Scalar>& ax, Scalar g) {
  Vector<Scalar> next = x.cwiseProduct(ax) / g;
  return clamp_to_simplex(std::move(next), "replicator_step");
}

}  // namespace detail

/// One application of the replicator map. Requires x^T A x > 0; a zero
/// objective makes the update 0/0 and the caller must route to expansion or
/// declare a singleton mode.
template <class Scalar>
Vector<Scalar> replicator_step(const AffinityMatrix<Scalar>& a, const Vector<Scalar>& x) {
  const Vector<Scalar> ax = a.apply(x);
  const Scalar g = x.dot(ax);
  if (g == Scalar(0))
    throw DegenerateState("replicator_step: objective is zero, update undefined");
  return detail::replicator_apply(x, ax, g);
}

// ---------------------------------------------------------------------------
// Neighborhood expansion C
// ---------------------------------------------------------------------------

/// Ingredients of the expansion line search x + t* b. With lambda = g(x):
///   v_i    = max((Ax)_i - lambda, 0) off the support, 0 on it
///   s      = sum v,  zeta = sum v^2,  omega = v^T A v
///   b      = -x_i s on the support, v_i off it
///   t*     = 1/s when D <= 0, min(1/s, zeta/D) when D > 0,
/// where D = lambda s^2 + 2 s zeta - omega. s = 0 means no vertex improves on
/// the current density and expansion is the identity (t* = 0, b = 0).
template <class Scalar>
struct ExpansionComponents {
  Vector<Scalar> v;
  Scalar s = 0;
  Scalar zeta = 0;
  Scalar omega = 0;
  Scalar lambda = 0;
  Vector<Scalar> b;
  Scalar t_star = 0;

  Scalar discriminant() const { return lambda * s * s + 2 * s * zeta - omega; }
};

namespace detail {

template <class Scalar>
ExpansionComponents<Scalar> expansion_from_products(const AffinityMatrix<Scalar>& a,
                                                    const Vector<Scalar>& x,
                                                    const Vector<Scalar>& ax, Scalar g,
                                                    Scalar eps_supp) {
  const Index n = x.size();
  ExpansionComponents<Scalar> c;
  c.lambda = g;
  c.v = Vector<Scalar>::Zero(n);
  for (Index i = 0; i < n; ++i)
    if (!(x(i) > eps_supp)) c.v(i) = std::max(ax(i) - g, Scalar(0));
  c.s = c.v.sum();
  if (c.s == Scalar(0)) {
    c.b = Vector<Scalar>::Zero(n);
    c.t_star = 0;
    return c;
  }
  c.zeta = c.v.squaredNorm();
  c.omega = c.v.dot(a.apply(c.v));
  c.b = c.v;
  for (Index i = 0; i < n; ++i)
    if (x(i) > eps_supp) c.b(i) = -x(i) * c.s;
  const Scalar inv_s = Scalar(1) / c.s;
  const Scalar d = c.discriminant();
  c.t_star = d > Scalar(0) ? std::min(inv_s, c.zeta / d) : inv_s;
  return c;
}

}  // namespace detail

template <class Scalar>
ExpansionComponents<Scalar> expansion_components(const AffinityMatrix<Scalar>& a,
                                                 const Vector<Scalar>& x,
                                                 Scalar eps_supp = Scalar(kDefaultSupportEps)) {
  const Vector<Scalar> ax = a.apply(x);
  return detail::expansion_from_products(a, x, ax, x.dot(ax), eps_supp);
}

/// Closed form for g(x + t b) - g(x): -D t^2 + 2 zeta t.
template <class Scalar>
Scalar delta_g_closed_form(const ExpansionComponents<Scalar>& c, Scalar t) {
  return -c.discriminant() * t * t + Scalar(2) * c.zeta * t;
}

/// One neighborhood expansion: x + t* b, snapped back onto the simplex.
/// Identity when s = 0. The objective never decreases and strictly increases
/// whenever s > 0.
template <class Scalar>
Vector<Scalar> expansion_step(const AffinityMatrix<Scalar>& a, const Vector<Scalar>& x,
                              Scalar eps_supp = Scalar(kDefaultSupportEps)) {
  const ExpansionComponents<Scalar> c = expansion_components(a, x, eps_supp);
  if (c.s == Scalar(0)) return x;
  Vector<Scalar> next = x + c.t_star * c.b;
  return clamp_to_simplex(std::move(next), "expansion_step");
}

// ---------------------------------------------------------------------------
// Replicator runs (B^m to fixation)
// ---------------------------------------------------------------------------

struct ReplicatorOptions {
  double eps_kkt = kDefaultKktEps;
  double eps_fix = kDefaultFixEps;
  double eps_supp = kDefaultSupportEps;
  long max_iters = kDefaultMaxRdIters;
  bool record = false;  // keep the per-step objective sequence
};

struct ReplicatorRun {
  VectorXd x;
  long iterations = 0;             // number of B applications (m_k)
  bool converged = false;          // a stop rule fired within budget
  bool stopped_by_residual = false;  // on-support residual <= eps_kkt (vs displacement stall)
  double on_support_residual = 0;
  std::vector<double> objectives;  // g after each step, when recorded or on failure
};

/// Iterate B until the on-support KKT residual drops to eps_kkt, the inf-norm
/// displacement falls below eps_fix, or the budget runs out. At least one step
/// is always applied. Requires objective(a, x0) > 0.
ReplicatorRun replicator_run(const AffinityMatrixd& a, const VectorXd& x0,
                             const ReplicatorOptions& opts = {});

}  // namespace graphshift
