// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_FORM_NORM_HPP
#define FORMBOUND_FORM_NORM_HPP

#include <cstdint>
#include <vector>

#include "formbound/eigen_estimate.hpp"
#include "formbound/field.hpp"
#include "formbound/flavor.hpp"
#include "formbound/measure.hpp"
#include "formbound/oscillation.hpp"

namespace formbound
{

//
// Operator-norm estimates for forms compressed by the energy norm. With G = (-lap)^-1/2 on
// zero-mean fields (homogeneous) or G = (1-lap)^-1/2 (inhomogeneous), a form B(u, v) = <R' u, v>
// has best constant ||G R' G||. All norms are exact for the grid problem; the estimate is the
// top eigenvalue of a Hermitian square found matrix-free.
//
struct FormEstimate
{
  double value = 0.0;
  EigenMethod method = EigenMethod::subspace_sweep;
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
  /// Rayleigh quotients never decreased.
  bool monotone = true;
  /// Extremizing trial fields: {u} for trace-type estimates, {u, v} for bilinear forms.
  std::vector<ScalarField> witness;
};

struct FormOptions
{
  EigenOptions eigen{};
  std::uint64_t seed = 1;
};

/// sup of sum |u|^2 mu over the energy of u.
FormEstimate trace_constant(const DiscreteMeasure &mu, Flavor flavor,
                            const FormOptions &options = {});

/// B(u, v) = -<A grad u, grad v> + <b . grad u, v> + <q u, v>.
FormEstimate form_norm(const MatrixField &A, const VectorField &b, const ScalarField &q,
                       Flavor flavor, const FormOptions &options = {});

enum class FormPart
{
  full,
  hermitian,  ///< (B(u, v) + conj B(v, u)) / 2
  skew        ///< (B(u, v) - conj B(v, u)) / 2
};

/// Norm of one part of the form; form_norm is the `full` case. For real b and q the Hermitian
/// part is the multiplication form of q - div(b)/2 and the skew part is the commutator of b.
FormEstimate form_part_norm(const MatrixField &A, const VectorField &b, const ScalarField &q,
                            Flavor flavor, FormPart part, const FormOptions &options = {});

/// K(u, v) = 1/2 sum b . (conj(v) grad u - u grad conj(v)), assembled directly.
FormEstimate commutator_norm(const VectorField &b, Flavor flavor,
                             const FormOptions &options = {});

struct NonlinearConstant
{
  /// sup of int |b . grad u| |u| / ||grad u||^2 from restarted ascent; a lower bound.
  FormEstimate lower;
  /// sqrt of the trace constant of |b|^2 dx.
  FormEstimate trace_root;
  bool sandwich_ok = true;
  /// Best ascent restart stopped on the iteration budget rather than on stagnation.
  bool budget_exhausted = false;
  int restarts = 0;
};

struct AscentOptions
{
  int restarts = 20;
  int max_iterations = 200;
  int band = 4;
  std::uint64_t seed = 1;
  double smoothing = 1e-8;
};

NonlinearConstant nonlinear_form_constant(const VectorField &b,
                                          const AscentOptions &options = {});

/// Trace constant of mu restricted to the cube with Dirichlet conditions on its boundary.
FormEstimate local_trace_constant(const DiscreteMeasure &mu, const Cube &cube,
                                  const FormOptions &options = {});

}  // namespace formbound

#endif  // FORMBOUND_FORM_NORM_HPP
