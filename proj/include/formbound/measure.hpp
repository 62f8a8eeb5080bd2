// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_MEASURE_HPP
#define FORMBOUND_MEASURE_HPP

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "formbound/field.hpp"
#include "formbound/oscillation.hpp"

namespace formbound
{

/// Nonnegative mass per cell.
class DiscreteMeasure
{
public:
  explicit DiscreteMeasure(const Grid &grid);
  DiscreteMeasure(const Grid &grid, std::vector<double> masses);

  /// mass = rho h^dim. Samples below -1e-12 times the peak are rejected, the rest clipped.
  static DiscreteMeasure from_density(const ScalarField &rho);
  static DiscreteMeasure lebesgue(const Grid &grid, double scale = 1.0);

  const Grid &grid() const noexcept { return grid_; }
  std::span<const double> masses() const noexcept { return mass_; }
  double operator[](std::size_t i) const noexcept { return mass_[i]; }
  double total_mass() const noexcept;
  bool is_zero() const noexcept;
  /// Cell density mass / h^dim.
  ScalarField density() const;
  DiscreteMeasure scaled(double a) const;
  DiscreteMeasure operator+(const DiscreteMeasure &o) const;

private:
  Grid grid_;
  std::vector<double> mass_;
};

//
// Dyadic cubes of the torus: level l has 2^l cubes per axis, level depth() is single cells.
// Each node stores mu(Q) and the Carleson energy sum_{Q' in Q} mu(Q')^2 |Q'|^(2/n - 1).
//
class DyadicTree
{
public:
  explicit DyadicTree(const DiscreteMeasure &mu);

  int depth() const noexcept { return depth_; }
  int dim() const noexcept { return grid_.dim(); }
  std::size_t nodes(int level) const noexcept { return mass_[level].size(); }
  double mass(int level, std::size_t node) const { return mass_[level][node]; }
  double energy(int level, std::size_t node) const { return energy_[level][node]; }
  /// mu(Q)^2 |Q|^(2/n - 1) for a single node.
  double own_term(int level, std::size_t node) const;
  Cube cube(int level, std::size_t node) const;

private:
  Grid grid_;
  int depth_;
  std::vector<std::vector<double>> mass_;
  std::vector<std::vector<double>> energy_;
};

struct Witness
{
  enum class Kind
  {
    none,
    cube,
    ball,
    point
  };
  Kind kind = Kind::none;
  Index location{0, 0, 0};  ///< cube corner, ball center, or point
  int side = 0;             ///< cube side in cells
  double radius = 0.0;
};

struct MeasureReport
{
  std::string test;
  double constant = 0.0;
  Witness witness;
  double threshold = std::numeric_limits<double>::infinity();
  bool pass = true;
  /// Ball families evaluated on a strided subset of centers.
  bool sampled = false;
  /// n = 2 homogeneous tests: admissibility forces mu = 0.
  bool forces_zero = false;
};

constexpr double kNoThreshold = std::numeric_limits<double>::infinity();

/// c5 = max over dyadic P with mu(P) > 0 of energy(P) / mu(P).
MeasureReport carleson_test(const DiscreteMeasure &mu, double threshold = kNoThreshold);
/// Same with the root excluded (cubes of side <= L/2).
MeasureReport truncated_carleson_test(const DiscreteMeasure &mu,
                                      double threshold = kNoThreshold);

/// Radii 2h, 2 sqrt(2) h, ... up to L/4.
std::vector<double> default_radii(const Grid &grid);

/// Mass of the discrete ball of radius r about every cell center (cells whose centers lie
/// within r in the torus metric).
std::vector<double> ball_sums(const Grid &grid, std::span<const double> weights, double r);

/// max over centers and radii of mu(B_r(x)) / r^(n-2). In n = 2 the max ball mass is reported
/// and forces_zero is set.
MeasureReport ball_growth_test(const DiscreteMeasure &mu, std::span<const double> radii,
                               double threshold = kNoThreshold);

/// Ball centers on a stride of points_per_axis / 8 cells, including the torus origin.
std::vector<Index> ball_centers(const Grid &grid);

/// c3 = max over sampled balls of int [I_1 mu_B]^2 / mu(B); n = 3 only.
MeasureReport ball_energy_test(const DiscreteMeasure &mu, std::span<const double> radii,
                               double threshold = kNoThreshold);
/// c4 = max over cells of I_1[(I_1 mu)^2] / I_1 mu where I_1 mu exceeds 1e-12 of its peak.
MeasureReport pointwise_test(const DiscreteMeasure &mu, double threshold = kNoThreshold);

/// max over centers and radii of r^(2(1+eps)-n) int_{B_r} rho^(1+eps).
MeasureReport fefferman_phong_test(const ScalarField &rho, double eps,
                                   std::span<const double> radii,
                                   double threshold = kNoThreshold);

struct InhomogeneousMeasureReport
{
  MeasureReport carleson;
  MeasureReport ball_energy;
  MeasureReport pointwise;
};

/// Bessel-potential versions of the energy and pointwise tests and the truncated Carleson
/// test. Valid in n = 2 and 3.
InhomogeneousMeasureReport inhomogeneous_variants(const DiscreteMeasure &mu,
                                                  std::span<const double> radii,
                                                  double threshold = kNoThreshold);

}  // namespace formbound

#endif  // FORMBOUND_MEASURE_HPP
