// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_SPECTRAL_HPP
#define FORMBOUND_SPECTRAL_HPP

#include <array>
#include <complex>
#include <vector>

#include "formbound/field.hpp"

namespace formbound
{

//
// Exact periodic calculus. Every operator is a Fourier multiplier on the grid's DFT; the
// derivative symbol along axis j is i kappa_j with kappa_j = 2 pi k_j / L and k_j in
// [-n/2, n/2). The Nyquist bin is kept as-is, so the discrete identities below hold exactly
// in exact arithmetic:
//
//   div(Div F) = 0 for skew F,   curl(grad f) = 0,
//   v - mean(v) = grad(lap^-1 div v) + Div(lap^-1 curl v).
//
// Odd-order operators may produce imaginary Nyquist content from real input; outputs are
// flagged real only when their imaginary parts vanish to 1e-12 of the peak modulus.
//

/// Forward DFT of a field (unnormalized).
std::vector<Complex> spectrum(const ScalarField &f);
/// Inverse DFT. If `inputs_real`, the result is flagged real when its imaginary part is
/// negligible.
ScalarField from_spectrum(const Grid &grid, std::vector<Complex> data, bool inputs_real);

/// Calls fn(flat_index, kappa, |kappa|^2) for every DFT bin.
template <typename Fn>
void for_each_mode(const Grid &grid, Fn &&fn)
{
  const int n = grid.points_per_axis();
  const int dim = grid.dim();
  std::vector<double> wn(n);
  for (int i = 0; i < n; ++i)
  {
    wn[i] = grid.wavenumber(i);
  }
  std::array<double, 3> kappa{0.0, 0.0, 0.0};
  std::size_t idx = 0;
  if (dim == 2)
  {
    for (int a = 0; a < n; ++a)
    {
      kappa[0] = wn[a];
      for (int b = 0; b < n; ++b, ++idx)
      {
        kappa[1] = wn[b];
        fn(idx, kappa, kappa[0] * kappa[0] + kappa[1] * kappa[1]);
      }
    }
  }
  else
  {
    for (int a = 0; a < n; ++a)
    {
      kappa[0] = wn[a];
      for (int b = 0; b < n; ++b)
      {
        kappa[1] = wn[b];
        const double k01 = kappa[0] * kappa[0] + kappa[1] * kappa[1];
        for (int c = 0; c < n; ++c, ++idx)
        {
          kappa[2] = wn[c];
          fn(idx, kappa, k01 + kappa[2] * kappa[2]);
        }
      }
    }
  }
}

VectorField gradient(const ScalarField &f);
ScalarField divergence(const VectorField &v);
/// (curl v)_ij = d_j v_i - d_i v_j; returned flagged skew-symmetric.
MatrixField curl(const VectorField &v);
/// Row divergence (Div F)_i = sum_j d_j F_ij.
VectorField row_divergence(const MatrixField &m);
ScalarField laplacian(const ScalarField &f);
/// Single partial derivative along `axis`.
ScalarField partial(const ScalarField &f, int axis);

enum class SpectralKind
{
  inv_laplacian,      ///< -1/|kappa|^2 (i.e. Delta^-1), zero mode -> 0
  riesz_half,         ///< 1/|kappa|, i.e. (-Delta)^-1/2, zero mode -> 0
  bessel_inv,         ///< 1/(1+|kappa|^2), i.e. (1-Delta)^-1
  bessel_riesz_half,  ///< 1/sqrt(1+|kappa|^2), i.e. (1-Delta)^-1/2
  neg_laplacian_sqrt, ///< |kappa|, i.e. (-Delta)^1/2
  bessel_sqrt         ///< sqrt(1+|kappa|^2), i.e. (1-Delta)^1/2
};

enum class MeanPolicy
{
  require_zero,  ///< homogeneous kinds throw if the input mean is not negligible
  annihilate     ///< homogeneous kinds silently drop the mean
};

ScalarField apply_spectral(SpectralKind kind, const ScalarField &f,
                           MeanPolicy policy = MeanPolicy::require_zero);

/// True for kinds whose symbol is singular or vanishes at the zero frequency.
bool is_homogeneous(SpectralKind kind) noexcept;

}  // namespace formbound

#endif  // FORMBOUND_SPECTRAL_HPP
