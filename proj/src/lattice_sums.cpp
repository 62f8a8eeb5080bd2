// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/lattice_sums.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "formbound/reduce.hpp"
#include "formbound/spectral.hpp"

namespace formbound
{

namespace
{

// Upper incomplete gamma for half-integer a > 0, by upward recursion from a = 1/2 or 1.
double upper_gamma_half_integer(double a, double x)
{
  double g = 0.0;
  double b = 0.0;
  if (std::abs(a - std::round(a)) < 1e-12)
  {
    g = std::exp(-x);
    b = 1.0;
  }
  else
  {
    g = std::sqrt(std::numbers::pi) * std::erfc(std::sqrt(x));
    b = 0.5;
  }
  while (b < a - 1e-12)
  {
    g = b * g + std::pow(x, b) * std::exp(-x);
    b += 1.0;
  }
  return g;
}

}  // namespace

double epstein_zeta_cubic(int s)
{
  constexpr int d = 3;
  if (s == 0 || s == d)
  {
    throw std::invalid_argument("Epstein zeta has poles at s = 0 and s = 3");
  }
  const double a = 0.5 * s;
  const double b = 0.5 * (d - s);
  if (a <= 0.0 || b <= 0.0)
  {
    throw std::invalid_argument("Epstein zeta supported for 0 < s < 3");
  }
  constexpr int R = 6;
  const double pi = std::numbers::pi;
  double direct = 0.0;
  double dual = 0.0;
  for (int i = -R; i <= R; ++i)
  {
    for (int j = -R; j <= R; ++j)
    {
      for (int k = -R; k <= R; ++k)
      {
        const int m2 = i * i + j * j + k * k;
        if (m2 == 0)
        {
          continue;
        }
        const double x = pi * m2;
        direct += upper_gamma_half_integer(a, x) * std::pow(x, -a);
        dual += upper_gamma_half_integer(b, x) * std::pow(x, -b);
      }
    }
  }
  return std::pow(pi, a) / std::tgamma(a) *
         (direct + dual + 2.0 / (s - d) - 2.0 / s);
}

double riesz_kernel_constant(int dim, int alpha)
{
  const double pi = std::numbers::pi;
  return std::tgamma(0.5 * (dim - alpha)) /
         (std::pow(2.0, alpha) * std::pow(pi, 0.5 * dim) * std::tgamma(0.5 * alpha));
}

double matched_zero_mode(const Grid &grid, int alpha)
{
  if (grid.dim() != 3 || (alpha != 1 && alpha != 2))
  {
    throw std::invalid_argument("matched kernels are provided for n = 3, alpha = 1, 2");
  }
  return -riesz_kernel_constant(3, alpha) * std::pow(grid.period(), alpha - 3) *
         epstein_zeta_cubic(3 - alpha);
}

ScalarField matched_riesz_potential(const ScalarField &density, int alpha)
{
  const SpectralKind kind = alpha == 1 ? SpectralKind::riesz_half : SpectralKind::inv_laplacian;
  ScalarField p = apply_spectral(kind, density, MeanPolicy::annihilate);
  if (alpha == 2)
  {
    p *= -1.0;
  }
  const Complex shift = matched_zero_mode(density.grid(), alpha) * integral(density);
  for (Complex &z : p.values())
  {
    z += shift;
  }
  return p;
}

}  // namespace formbound
