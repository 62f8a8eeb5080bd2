// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_GRID_HPP
#define FORMBOUND_GRID_HPP

#include <array>
#include <cstddef>
#include <span>

namespace formbound
{

/// Integer cell coordinates; unused trailing axes are zero.
using Index = std::array<int, 3>;
/// Physical coordinates; unused trailing axes are zero.
using Point = std::array<double, 3>;

//
// Uniform periodic grid on the flat torus [0, L)^dim. Sample i sits at x = i h and is the
// center of its cell. points_per_axis is a power of two so every dyadic cube is a union of
// cells.
//
class Grid
{
public:
  Grid(int dim, int points_per_axis, double period = 1.0);

  int dim() const noexcept { return dim_; }
  int points_per_axis() const noexcept { return n_; }
  double period() const noexcept { return period_; }
  double spacing() const noexcept { return period_ / n_; }
  double cell_volume() const noexcept;
  double volume() const noexcept;
  std::size_t size() const noexcept { return size_; }

  /// Number of dyadic levels below the whole torus (log2 of points_per_axis).
  int depth() const noexcept;

  Index coords(std::size_t flat) const noexcept;
  /// Flat C-order index, last axis fastest; coordinates are wrapped periodically.
  std::size_t flat(const Index &c) const noexcept;
  Point position(const Index &c) const noexcept;

  /// Signed integer frequency of FFT bin i, in [-n/2, n/2).
  int frequency(int i) const noexcept { return i < n_ / 2 ? i : i - n_; }
  /// Angular wavenumber 2 pi k / L of FFT bin i.
  double wavenumber(int i) const noexcept;

  /// Shortest periodic displacement from a to b along one axis, in (-L/2, L/2].
  double periodic_offset(double a, double b) const noexcept;
  double torus_distance(const Point &a, const Point &b) const noexcept;

  friend bool operator==(const Grid &, const Grid &) = default;

private:
  int dim_;
  int n_;
  double period_;
  std::size_t size_;
};

/// Throws std::invalid_argument if the grids differ.
void require_same_grid(const Grid &a, const Grid &b, const char *what);

}  // namespace formbound

#endif  // FORMBOUND_GRID_HPP
