// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_EIGEN_ESTIMATE_HPP
#define FORMBOUND_EIGEN_ESTIMATE_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace formbound
{

using CVector = std::vector<std::complex<double>>;
/// out = A in for a Hermitian positive semidefinite A (Euclidean inner product).
using LinearMap = std::function<void(const CVector &in, CVector &out)>;

enum class EigenMethod
{
  power_iteration,
  subspace_sweep  ///< locally optimal three-term Rayleigh-Ritz (single-vector LOBPCG)
};

struct EigenOptions
{
  EigenMethod method = EigenMethod::subspace_sweep;
  int max_iterations = 1000;
  double value_tolerance = 1e-8;     ///< relative change of the eigenvalue between iterations
  double residual_tolerance = 1e-6;  ///< ||Ax - lambda x|| / (lambda ||x||)
};

struct EigenResult
{
  double value = 0.0;
  CVector vector;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  /// Rayleigh quotient after every iteration.
  std::vector<double> history;
  EigenMethod method = EigenMethod::subspace_sweep;

  /// True if the Rayleigh quotients never decreased by more than `slack` relative.
  bool monotone(double slack = 1e-12) const;
};

/// Largest eigenvalue of a Hermitian PSD operator from the start vector. A zero operator
/// returns value 0 and converged = true immediately.
EigenResult top_eigenpair(const LinearMap &op, CVector start, const EigenOptions &options = {});

double norm(const CVector &v);
std::complex<double> dot(const CVector &a, const CVector &b);  ///< sum conj(a) b

}  // namespace formbound

#endif  // FORMBOUND_EIGEN_ESTIMATE_HPP
