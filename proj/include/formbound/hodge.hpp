// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_HODGE_HPP
#define FORMBOUND_HODGE_HPP

#include <array>

#include "formbound/field.hpp"

namespace formbound
{

//
// b = mean + c + Div F with c a gradient and F skew-symmetric; q = div h + gamma.
// In the homogeneous splitting the torus mean of b (and of q) cannot be absorbed by the
// inverse Laplacian and is returned separately; gamma is then zero.
//
struct DecompositionResult
{
  std::array<Complex, 3> mean_part{};
  Complex q_mean = 0.0;
  VectorField c;
  MatrixField F;
  VectorField h;
  ScalarField gamma;
  double residual = 0.0;
};

DecompositionResult hodge_decompose(const VectorField &b);
/// Also splits q: h = grad(lap^-1 (q - mean q)).
DecompositionResult hodge_decompose(const VectorField &b, const ScalarField &q);

/// Bessel splitting: c = -grad (1-lap)^-1 div b + (1-lap)^-1 b, F = -(1-lap)^-1 curl b,
/// h = -grad (1-lap)^-1 q, gamma = (1-lap)^-1 q. Nothing is left in mean_part.
DecompositionResult inhomogeneous_decompose(const VectorField &b, const ScalarField &q);

enum class Projection
{
  P,  ///< gradient part grad(lap^-1 div b)
  Q   ///< solenoidal part Div(lap^-1 curl b)
};

/// Both projections act on b - mean(b).
VectorField project(Projection which, const VectorField &b);

struct PrincipalReduction
{
  MatrixField symmetric;  ///< 1/2 (A + A^t)
  VectorField b1;         ///< b - Div(1/2 (A - A^t))
  double sup_norm = 0.0;  ///< max over cells of the operator norm of the symmetric part
};

PrincipalReduction reduce_principal(const MatrixField &A, const VectorField &b);

}  // namespace formbound

#endif  // FORMBOUND_HODGE_HPP
