// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_LATTICE_SUMS_HPP
#define FORMBOUND_LATTICE_SUMS_HPP

#include "formbound/field.hpp"

namespace formbound
{

/// Analytic continuation of sum over nonzero m in Z^3 of |m|^-s, by the Ewald split.
/// Supports integer s other than the poles 0 and 3.
double epstein_zeta_cubic(int s);

/// c(n, alpha) with I_alpha f = c(n, alpha) |x|^(alpha - n) * f and symbol |xi|^-alpha.
double riesz_kernel_constant(int dim, int alpha);

//
// The periodic kernel with symbol |kappa|^-alpha on nonzero modes differs from the free-space
// kernel c |x|^(alpha-n) by a smooth function whose value at the origin is
// c L^(alpha-n) Z(n - alpha). matched_zero_mode returns the negative of that value, so that
// adding it (times the total mass) to the zero-mean potential reproduces the free-space
// kernel's local behaviour and keeps the potential of a positive measure positive.
//
double matched_zero_mode(const Grid &grid, int alpha);

/// Riesz potential of order alpha (1 or 2) of a density on the 3-torus with the matched
/// zero mode. The density need not have zero mean.
ScalarField matched_riesz_potential(const ScalarField &density, int alpha);

}  // namespace formbound

#endif  // FORMBOUND_LATTICE_SUMS_HPP
