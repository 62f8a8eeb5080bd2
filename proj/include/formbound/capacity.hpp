// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_CAPACITY_HPP
#define FORMBOUND_CAPACITY_HPP

#include <cstdint>
#include <vector>

#include "formbound/field.hpp"
#include "formbound/flavor.hpp"
#include "formbound/measure.hpp"

namespace formbound
{

/// Boolean cell mask.
class CompactSet
{
public:
  CompactSet(const Grid &grid, std::vector<std::uint8_t> mask);

  static CompactSet cube(const Grid &grid, const Index &corner, int side);
  /// Cells whose centers lie within `radius` of `center` in the torus metric.
  static CompactSet ball(const Grid &grid, const Point &center, double radius);
  /// Cells where the real part exceeds 0.5.
  static CompactSet from_field(const ScalarField &f);

  const Grid &grid() const noexcept { return grid_; }
  bool contains(std::size_t cell) const noexcept { return mask_[cell] != 0; }
  std::size_t count() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  /// Circular mean of the member cells per axis.
  Point centroid() const;
  bool subset_of(const CompactSet &o) const;

private:
  Grid grid_;
  std::vector<std::uint8_t> mask_;
  std::size_t count_;
};

struct CapacityOptions
{
  double kkt_tolerance = 1e-8;
  /// Active-set sweeps; 0 means 10 * points_per_axis.
  int max_sweeps = 0;
  int max_cg_iterations = 5000;
};

struct CapacityResult
{
  double value = 0.0;
  ScalarField potential;
  DiscreteMeasure equilibrium;
  double kkt_residual = 0.0;
  Flavor flavor = Flavor::homogeneous;
  int sweeps = 0;
  int cg_iterations = 0;
  /// Energy of the potential and total equilibrium mass, reported separately.
  double energy = 0.0;
  double mass = 0.0;
  /// Most negative equilibrium mass before clipping.
  double clipped_mass = 0.0;
};

/// Minimizes the energy over u >= 1 on e. The homogeneous problem is grounded: u = 0 on every
/// cell at torus distance >= L/2 from the centroid of e. Homogeneous capacity in two
/// dimensions is 0 (u = 1 is admissible in the limit).
CapacityResult capacity(const CompactSet &e, Flavor flavor, const CapacityOptions &options = {});

/// Newtonian potential of mu with the free-space-matched periodic kernel (three dimensions).
ScalarField equilibrium_potential(const DiscreteMeasure &mu);
/// The same potential shifted so that its minimum over e is 1.
ScalarField normalized_potential(const DiscreteMeasure &mu, const CompactSet &e);

struct GaugeCheck
{
  ScalarField lambda;
  double energy_lhs = 0.0;
  double energy_rhs = 0.0;
  double capacity = 0.0;
  /// Extremes of ||grad(e^{i lambda} u)|| / ||grad u|| over the random trial fields.
  double gauge_ratio = 0.0;
  double gauge_ratio_min = 0.0;
  int samples = 0;
};

struct GaugeOptions
{
  int samples = 20;
  int band = 4;
  std::uint64_t seed = 1;
  CapacityOptions capacity{};
};

/// lambda = tau log P with P the grounded equilibrium potential of e (clamped at 0; lambda is
/// floored where P vanishes). Three dimensions, 1/2 < tau < 3/2.
GaugeCheck gauge_check(const CompactSet &e, double tau, const GaugeOptions &options = {});
/// Same, reusing a homogeneous capacity solution of e.
GaugeCheck gauge_check(const CompactSet &e, const CapacityResult &cap, double tau,
                       const GaugeOptions &options = {});

}  // namespace formbound

#endif  // FORMBOUND_CAPACITY_HPP
