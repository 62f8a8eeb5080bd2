// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_REDUCE_HPP
#define FORMBOUND_REDUCE_HPP

#include "formbound/field.hpp"

namespace formbound
{

// Integrals are Riemann sums with cell weight h^dim. Vector-valued overloads use the
// pointwise Euclidean modulus.

double lp_norm(const ScalarField &f, double p);
double lp_norm(const VectorField &v, double p);
double l2_norm(const ScalarField &f);
Complex mean(const ScalarField &f);
double max_abs(const ScalarField &f);
double max_abs(const VectorField &v);
double max_abs(const MatrixField &m);
/// ||grad f||_{L^2}, evaluated in frequency space.
double dirichlet_norm(const ScalarField &f);
/// ||f||_{L^2} + ||grad f||_{L^2}.
double sobolev_norm(const ScalarField &f);
/// Integral of f over the torus.
Complex integral(const ScalarField &f);
/// Weighted inner product sum_x f(x) conj(g(x)) h^dim.
Complex inner(const ScalarField &f, const ScalarField &g);

}  // namespace formbound

#endif  // FORMBOUND_REDUCE_HPP
