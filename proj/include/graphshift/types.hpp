#pragma once

#include <Eigen/Core>

#include <cstdint>

namespace graphshift {

using Index = Eigen::Index;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXd = Vector<double>;
using MatrixXd = Matrix<double>;

// Shared tolerance defaults. Every solver entry point takes these as explicit
// configuration; the constants here are the single source for the defaults.
inline constexpr double kDefaultKktEps = 1e-6;      // KKT residual stopping tolerance
inline constexpr double kDefaultFixEps = 1e-12;     // inf-norm displacement stop for replicator runs
inline constexpr double kDefaultSupportEps = 1e-8;  // threshold separating support from numerically-zero mass
inline constexpr double kDefaultMergeTol = 1e-4;    // inf-norm distance under which two modes are merged
inline constexpr long kDefaultMaxRdIters = 100000;
inline constexpr int kDefaultMaxOuterIters = 100;

}  // namespace graphshift
