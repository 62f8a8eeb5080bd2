// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "formbound/fft.hpp"

namespace formbound
{

namespace
{

constexpr Complex I(0.0, 1.0);

std::vector<Complex> derivative_spectrum(const Grid &grid, const std::vector<Complex> &hat,
                                         int axis)
{
  std::vector<Complex> out(hat.size());
  for_each_mode(grid, [&](std::size_t idx, const std::array<double, 3> &k, double)
                { out[idx] = I * k[axis] * hat[idx]; });
  return out;
}

void check_dims(const Grid &grid, int dim, const char *what)
{
  if (grid.dim() != dim)
  {
    throw std::invalid_argument(std::string("rank mismatch in ") + what);
  }
}

}  // namespace

std::vector<Complex> spectrum(const ScalarField &f)
{
  std::vector<Complex> data(f.values().begin(), f.values().end());
  fft::forward(f.grid(), data);
  return data;
}

ScalarField from_spectrum(const Grid &grid, std::vector<Complex> data, bool inputs_real)
{
  fft::inverse(grid, data);
  if (inputs_real)
  {
    double peak = 0.0;
    double imag = 0.0;
    for (const Complex &z : data)
    {
      peak = std::max(peak, std::abs(z));
      imag = std::max(imag, std::abs(z.imag()));
    }
    if (imag <= 1e-12 * peak)
    {
      return ScalarField(grid, std::move(data), true);
    }
  }
  return ScalarField(grid, std::move(data), false);
}

VectorField gradient(const ScalarField &f)
{
  const Grid &g = f.grid();
  const auto hat = spectrum(f);
  std::vector<ScalarField> comps;
  comps.reserve(g.dim());
  for (int j = 0; j < g.dim(); ++j)
  {
    comps.push_back(from_spectrum(g, derivative_spectrum(g, hat, j), f.is_real()));
  }
  return VectorField(std::move(comps));
}

ScalarField partial(const ScalarField &f, int axis)
{
  if (axis < 0 || axis >= f.grid().dim())
  {
    throw std::invalid_argument("derivative axis out of range");
  }
  return from_spectrum(f.grid(), derivative_spectrum(f.grid(), spectrum(f), axis), f.is_real());
}

ScalarField divergence(const VectorField &v)
{
  const Grid &g = v.grid();
  check_dims(g, v.dim(), "divergence");
  std::vector<Complex> acc(g.size());
  bool real = true;
  for (int j = 0; j < v.dim(); ++j)
  {
    const auto hat = spectrum(v[j]);
    for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &k, double)
                  { acc[idx] += I * k[j] * hat[idx]; });
    real = real && v[j].is_real();
  }
  return from_spectrum(g, std::move(acc), real);
}

MatrixField curl(const VectorField &v)
{
  const Grid &g = v.grid();
  const int n = v.dim();
  check_dims(g, n, "curl");
  std::vector<std::vector<Complex>> hat;
  hat.reserve(n);
  bool real = true;
  for (int i = 0; i < n; ++i)
  {
    hat.push_back(spectrum(v[i]));
    real = real && v[i].is_real();
  }
  std::vector<ScalarField> entries(n * n, ScalarField(g));
  for (int i = 0; i < n; ++i)
  {
    for (int j = i + 1; j < n; ++j)
    {
      std::vector<Complex> c(g.size());
      for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &k, double)
                    { c[idx] = I * (k[j] * hat[i][idx] - k[i] * hat[j][idx]); });
      ScalarField cij = from_spectrum(g, std::move(c), real);
      entries[j * n + i] = -1.0 * cij;
      entries[i * n + j] = std::move(cij);
    }
  }
  return MatrixField(n, std::move(entries), true);
}

VectorField row_divergence(const MatrixField &m)
{
  const Grid &g = m.grid();
  const int n = m.dim();
  std::vector<std::vector<Complex>> acc(n, std::vector<Complex>(g.size()));
  std::vector<bool> real(n, true);
  for (int i = 0; i < n; ++i)
  {
    for (int j = 0; j < n; ++j)
    {
      if (i == j && m.skew_symmetric())
      {
        continue;
      }
      const auto hat = spectrum(m(i, j));
      for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &k, double)
                    { acc[i][idx] += I * k[j] * hat[idx]; });
      real[i] = real[i] && m(i, j).is_real();
    }
  }
  std::vector<ScalarField> comps;
  comps.reserve(n);
  for (int i = 0; i < n; ++i)
  {
    comps.push_back(from_spectrum(g, std::move(acc[i]), real[i]));
  }
  return VectorField(std::move(comps));
}

ScalarField laplacian(const ScalarField &f)
{
  auto hat = spectrum(f);
  for_each_mode(f.grid(), [&](std::size_t idx, const std::array<double, 3> &, double k2)
                { hat[idx] *= -k2; });
  return from_spectrum(f.grid(), std::move(hat), f.is_real());
}

bool is_homogeneous(SpectralKind kind) noexcept
{
  return kind == SpectralKind::inv_laplacian || kind == SpectralKind::riesz_half ||
         kind == SpectralKind::neg_laplacian_sqrt;
}

ScalarField apply_spectral(SpectralKind kind, const ScalarField &f, MeanPolicy policy)
{
  auto hat = spectrum(f);
  if (is_homogeneous(kind) && policy == MeanPolicy::require_zero)
  {
    double peak = 0.0;
    for (Complex z : f.values())
    {
      peak = std::max(peak, std::abs(z));
    }
    const double mean = std::abs(hat[0]) / static_cast<double>(f.size());
    if (mean > 1e-10 * peak)
    {
      throw std::invalid_argument(
        "homogeneous spectral operator applied to a field with nonzero mean");
    }
  }
  for_each_mode(f.grid(), [&](std::size_t idx, const std::array<double, 3> &, double k2)
                {
                  double s = 0.0;
                  switch (kind)
                  {
                  case SpectralKind::inv_laplacian:
                    s = k2 > 0.0 ? -1.0 / k2 : 0.0;
                    break;
                  case SpectralKind::riesz_half:
                    s = k2 > 0.0 ? 1.0 / std::sqrt(k2) : 0.0;
                    break;
                  case SpectralKind::bessel_inv:
                    s = 1.0 / (1.0 + k2);
                    break;
                  case SpectralKind::bessel_riesz_half:
                    s = 1.0 / std::sqrt(1.0 + k2);
                    break;
                  case SpectralKind::neg_laplacian_sqrt:
                    s = std::sqrt(k2);
                    break;
                  case SpectralKind::bessel_sqrt:
                    s = std::sqrt(1.0 + k2);
                    break;
                  }
                  hat[idx] *= s;
                });
  return from_spectrum(f.grid(), std::move(hat), f.is_real());
}

}  // namespace formbound
