// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_OSCILLATION_HPP
#define FORMBOUND_OSCILLATION_HPP

#include <span>
#include <vector>

#include "formbound/field.hpp"

namespace formbound
{

/// Axis-aligned cube of `side` cells whose lowest cell is `corner`; wraps periodically.
struct Cube
{
  Index corner{0, 0, 0};
  int side = 0;

  friend bool operator==(const Cube &, const Cube &) = default;
};

enum class CubeFlavor
{
  dyadic,
  dyadic_plus_half_shifts
};

//
// Dyadic cubes of every side 1, 2, 4, ..., points_per_axis cells. The shifted flavor adds, at
// each side s >= 2, the 2^dim - 1 translates of the dyadic tiling by s/2 cells along any
// subset of axes.
//
class CubeFamily
{
public:
  CubeFamily(const Grid &grid, CubeFlavor flavor);

  const Grid &grid() const noexcept { return grid_; }
  CubeFlavor flavor() const noexcept { return flavor_; }
  /// Side lengths in cells, increasing.
  std::vector<int> sides() const;
  /// Shift vectors (in cells) applied to the dyadic tiling of side s.
  std::vector<Index> shifts(int side) const;
  /// Every cube in the family, ordered by side, shift, then tile.
  std::vector<Cube> cubes() const;

private:
  Grid grid_;
  CubeFlavor flavor_;
};

enum class BmoFlavor
{
  BMO,       ///< sup over all cubes of the mean oscillation
  bmo,       ///< BMO plus sup over large cubes of the mean of |f|
  BMO_sharp  ///< small cubes only
};

//
// Mean oscillation is taken in rooted form, (|Q|^-1 int_Q |f - m_Q f|^r)^(1/r), which keeps
// the norm homogeneous of degree one. "Small" means side <= L/2 and "large" side >= L/2.
//
struct BmoReport
{
  double norm = 0.0;
  BmoFlavor flavor = BmoFlavor::BMO;
  int r_exponent = 1;
  Cube worst_cube;
  /// For bmo: the two summands. For the other flavors large_part is 0.
  double oscillation_part = 0.0;
  double large_part = 0.0;
};

BmoReport bmo_norm(const ScalarField &f, BmoFlavor flavor, int r_exponent,
                   const CubeFamily &family);
/// Entrywise maximum over all matrix entries.
BmoReport bmo_norm(const MatrixField &f, BmoFlavor flavor, int r_exponent,
                   const CubeFamily &family);

/// Mean oscillation of f over one cube, by direct summation.
double mean_oscillation(const ScalarField &f, const Cube &cube, int r_exponent);

struct VmoProfile
{
  std::vector<double> delta;
  std::vector<double> value;

  /// True if the value at the smallest delta does not exceed `threshold`.
  bool vmo_consistent(double threshold) const;
};

/// value[i] = sup of the mean oscillation over family cubes of side <= delta[i].
VmoProfile vmo_profile(const ScalarField &f, std::span<const double> deltas,
                       int r_exponent = 1,
                       CubeFlavor flavor = CubeFlavor::dyadic_plus_half_shifts);
VmoProfile vmo_profile(const MatrixField &f, std::span<const double> deltas,
                       int r_exponent = 1,
                       CubeFlavor flavor = CubeFlavor::dyadic_plus_half_shifts);

}  // namespace formbound

#endif  // FORMBOUND_OSCILLATION_HPP
