// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace formbound
{

Grid::Grid(int dim, int points_per_axis, double period)
  : dim_(dim), n_(points_per_axis), period_(period), size_(1)
{
  if (dim != 2 && dim != 3)
  {
    throw std::invalid_argument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  if (points_per_axis < 16 || !std::has_single_bit(static_cast<unsigned>(points_per_axis)))
  {
    throw std::invalid_argument("points_per_axis must be a power of two >= 16, got " +
                                std::to_string(points_per_axis));
  }
  if (!(period > 0.0) || !std::isfinite(period))
  {
    throw std::invalid_argument("grid period must be positive and finite");
  }
  for (int d = 0; d < dim; ++d)
  {
    size_ *= static_cast<std::size_t>(n_);
  }
}

double Grid::cell_volume() const noexcept
{
  return std::pow(spacing(), dim_);
}

double Grid::volume() const noexcept
{
  return std::pow(period_, dim_);
}

int Grid::depth() const noexcept
{
  return std::countr_zero(static_cast<unsigned>(n_));
}

Index Grid::coords(std::size_t flat) const noexcept
{
  Index c{0, 0, 0};
  for (int d = dim_ - 1; d >= 0; --d)
  {
    c[d] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return c;
}

std::size_t Grid::flat(const Index &c) const noexcept
{
  std::size_t idx = 0;
  for (int d = 0; d < dim_; ++d)
  {
    int w = c[d] % n_;
    if (w < 0)
    {
      w += n_;
    }
    idx = idx * n_ + static_cast<std::size_t>(w);
  }
  return idx;
}

Point Grid::position(const Index &c) const noexcept
{
  Point x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim_; ++d)
  {
    x[d] = c[d] * spacing();
  }
  return x;
}

double Grid::wavenumber(int i) const noexcept
{
  return 2.0 * std::numbers::pi * frequency(i) / period_;
}

double Grid::periodic_offset(double a, double b) const noexcept
{
  double d = std::fmod(b - a, period_);
  if (d > 0.5 * period_)
  {
    d -= period_;
  }
  else if (d <= -0.5 * period_)
  {
    d += period_;
  }
  return d;
}

double Grid::torus_distance(const Point &a, const Point &b) const noexcept
{
  double s = 0.0;
  for (int d = 0; d < dim_; ++d)
  {
    const double o = periodic_offset(a[d], b[d]);
    s += o * o;
  }
  return std::sqrt(s);
}

void require_same_grid(const Grid &a, const Grid &b, const char *what)
{
  if (!(a == b))
  {
    throw std::invalid_argument(std::string("grid mismatch: ") + what);
  }
}

}  // namespace formbound
