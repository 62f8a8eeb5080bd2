// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "formbound/fft.hpp"
#include "formbound/lattice_sums.hpp"
#include "formbound/reduce.hpp"
#include "formbound/spectral.hpp"

namespace formbound
{

CompactSet::CompactSet(const Grid &grid, std::vector<std::uint8_t> mask)
    : grid_(grid), mask_(std::move(mask)), count_(0)
{
  if (mask_.size() != grid_.size())
  {
    throw std::invalid_argument("mask size does not match the grid");
  }
  for (auto &m : mask_)
  {
    m = m ? 1 : 0;
    count_ += m;
  }
}

CompactSet CompactSet::cube(const Grid &grid, const Index &corner, int side)
{
  if (side < 1 || side > grid.points_per_axis())
  {
    throw std::invalid_argument("cube side out of range");
  }
  std::vector<std::uint8_t> mask(grid.size(), 0);
  for (std::size_t x = 0; x < grid.size(); ++x)
  {
    const Index c = grid.coords(x);
    bool inside = true;
    for (int a = 0; a < grid.dim(); ++a)
    {
      const int off = ((c[a] - corner[a]) % grid.points_per_axis() + grid.points_per_axis()) %
                      grid.points_per_axis();
      inside = inside && off < side;
    }
    mask[x] = inside ? 1 : 0;
  }
  return CompactSet(grid, std::move(mask));
}

CompactSet CompactSet::ball(const Grid &grid, const Point &center, double radius)
{
  std::vector<std::uint8_t> mask(grid.size(), 0);
  for (std::size_t x = 0; x < grid.size(); ++x)
  {
    mask[x] = grid.torus_distance(grid.position(grid.coords(x)), center) <= radius ? 1 : 0;
  }
  return CompactSet(grid, std::move(mask));
}

CompactSet CompactSet::from_field(const ScalarField &f)
{
  std::vector<std::uint8_t> mask(f.size(), 0);
  for (std::size_t x = 0; x < f.size(); ++x)
  {
    mask[x] = f[x].real() > 0.5 ? 1 : 0;
  }
  return CompactSet(f.grid(), std::move(mask));
}

Point CompactSet::centroid() const
{
  if (empty())
  {
    throw std::invalid_argument("empty set has no centroid");
  }
  const double L = grid_.period();
  std::array<double, 3> cs{0, 0, 0};
  std::array<double, 3> sn{0, 0, 0};
  for (std::size_t x = 0; x < mask_.size(); ++x)
  {
    if (!mask_[x])
    {
      continue;
    }
    const Point p = grid_.position(grid_.coords(x));
    for (int a = 0; a < grid_.dim(); ++a)
    {
      const double t = 2.0 * std::numbers::pi * p[a] / L;
      cs[a] += std::cos(t);
      sn[a] += std::sin(t);
    }
  }
  Point c{0, 0, 0};
  for (int a = 0; a < grid_.dim(); ++a)
  {
    double t = std::atan2(sn[a], cs[a]);
    if (t < 0.0)
    {
      t += 2.0 * std::numbers::pi;
    }
    c[a] = t * L / (2.0 * std::numbers::pi);
  }
  return c;
}

bool CompactSet::subset_of(const CompactSet &o) const
{
  require_same_grid(grid_, o.grid_, "subset_of");
  for (std::size_t x = 0; x < mask_.size(); ++x)
  {
    if (mask_[x] && !o.mask_[x])
    {
      return false;
    }
  }
  return true;
}

namespace
{

// A = -lap (+ 1) as a Fourier multiplier on real grid vectors, with a shifted inverse as
// preconditioner.
class EnergyOperator
{
public:
  EnergyOperator(const Grid &g, Flavor flavor) : grid_(g), symbol_(g.size()), inverse_(g.size())
  {
    const double shift = flavor == Flavor::homogeneous
                             ? std::pow(2.0 * std::numbers::pi / g.period(), 2)
                             : 1.0;
    const double base = flavor == Flavor::homogeneous ? 0.0 : 1.0;
    for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &, double k2)
                  {
                    symbol_[idx] = base + k2;
                    inverse_[idx] = 1.0 / (k2 + shift);
                  });
  }

  void apply(const std::vector<double> &x, std::vector<double> &y) const
  {
    multiply(x, y, symbol_);
  }
  void precondition(const std::vector<double> &x, std::vector<double> &y) const
  {
    multiply(x, y, inverse_);
  }

private:
  void multiply(const std::vector<double> &x, std::vector<double> &y,
                const std::vector<double> &s) const
  {
    std::vector<Complex> buf(x.begin(), x.end());
    fft::forward(grid_, buf);
    for (std::size_t i = 0; i < buf.size(); ++i)
    {
      buf[i] *= s[i];
    }
    fft::inverse(grid_, buf);
    y.resize(x.size());
    for (std::size_t i = 0; i < buf.size(); ++i)
    {
      y[i] = buf[i].real();
    }
  }

  Grid grid_;
  std::vector<double> symbol_;
  std::vector<double> inverse_;
};

enum Role : std::uint8_t
{
  kFree = 0,
  kActive = 1,  // pinned to 1
  kGround = 2   // pinned to 0
};

double masked_dot(const std::vector<double> &a, const std::vector<double> &b,
                  const std::vector<std::uint8_t> &role)
{
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (role[i] == kFree)
    {
      s += a[i] * b[i];
    }
  }
  return s;
}

void mask_free(std::vector<double> &v, const std::vector<std::uint8_t> &role)
{
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    if (role[i] != kFree)
    {
      v[i] = 0.0;
    }
  }
}

// Solves the free rows of A u = 0 with the pinned values held fixed; returns iterations.
int solve_free(const EnergyOperator &op, const std::vector<std::uint8_t> &role,
               std::vector<double> &u, double abs_tol, int max_iterations)
{
  const std::size_t n = u.size();
  std::vector<double> au(n);
  op.apply(u, au);
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    r[i] = role[i] == kFree ? -au[i] : 0.0;
  }
  std::vector<double> z(n);
  op.precondition(r, z);
  mask_free(z, role);
  std::vector<double> p(z);
  std::vector<double> ap(n);
  double rz = masked_dot(r, z, role);
  for (int it = 0; it < max_iterations; ++it)
  {
    if (std::sqrt(masked_dot(r, r, role)) <= abs_tol)
    {
      return it;
    }
    op.apply(p, ap);
    mask_free(ap, role);
    const double pap = masked_dot(p, ap, role);
    if (pap <= 0.0)
    {
      return it;
    }
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i)
    {
      u[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    op.precondition(r, z);
    mask_free(z, role);
    const double rz_new = masked_dot(r, z, role);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i)
    {
      p[i] = z[i] + beta * p[i];
    }
  }
  throw std::runtime_error("capacity: conjugate gradient did not converge");
}

}  // namespace

CapacityResult capacity(const CompactSet &e, Flavor flavor, const CapacityOptions &options)
{
  if (e.empty())
  {
    throw std::invalid_argument("capacity of an empty set");
  }
  const Grid &g = e.grid();
  const std::size_t n = g.size();
  CapacityResult res{.potential = ScalarField(g), .equilibrium = DiscreteMeasure(g)};
  res.flavor = flavor;
  if (flavor == Flavor::homogeneous && g.dim() == 2)
  {
    res.potential = ScalarField::constant(g, 1.0);
    res.potential.make_real();
    return res;
  }

  std::vector<std::uint8_t> role(n, kFree);
  for (std::size_t x = 0; x < n; ++x)
  {
    if (e.contains(x))
    {
      role[x] = kActive;
    }
  }
  if (flavor == Flavor::homogeneous)
  {
    const Point c = e.centroid();
    for (std::size_t x = 0; x < n; ++x)
    {
      if (g.torus_distance(g.position(g.coords(x)), c) >= 0.5 * g.period())
      {
        if (e.contains(x))
        {
          throw std::invalid_argument("set reaches the grounding region");
        }
        role[x] = kGround;
      }
    }
  }

  const EnergyOperator op(g, flavor);
  std::vector<double> u(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
  {
    u[x] = e.contains(x) ? 1.0 : 0.0;
  }
  std::vector<double> au(n);
  op.apply(u, au);
  double forcing = 0.0;
  for (std::size_t x = 0; x < n; ++x)
  {
    forcing += au[x] * au[x];
  }
  const double abs_tol = 1e-3 * options.kkt_tolerance * std::sqrt(forcing);
  double max_symbol = 0.0;
  for_each_mode(g, [&](std::size_t, const std::array<double, 3> &, double k2)
                { max_symbol = std::max(max_symbol, k2 + 1.0); });

  const int max_sweeps =
      options.max_sweeps > 0 ? options.max_sweeps : 10 * g.points_per_axis();
  bool settled = false;
  for (int sweep = 0; sweep < max_sweeps; ++sweep)
  {
    for (std::size_t x = 0; x < n; ++x)
    {
      if (role[x] == kActive)
      {
        u[x] = 1.0;
      }
      else if (role[x] == kGround)
      {
        u[x] = 0.0;
      }
    }
    res.cg_iterations += solve_free(op, role, u, abs_tol, options.max_cg_iterations);
    res.sweeps = sweep + 1;
    op.apply(u, au);
    bool changed = false;
    for (std::size_t x = 0; x < n; ++x)
    {
      if (!e.contains(x))
      {
        continue;
      }
      const double multiplier = role[x] == kActive ? au[x] : 0.0;
      const bool active = multiplier + max_symbol * (1.0 - u[x]) > 0.0;
      if (active != (role[x] == kActive))
      {
        role[x] = active ? kActive : kFree;
        changed = true;
      }
    }
    if (!changed)
    {
      settled = true;
      break;
    }
  }
  if (!settled)
  {
    throw std::runtime_error("capacity: active set did not settle");
  }

  // KKT: stationarity on free cells, feasibility on e, sign of the multipliers.
  double peak = 0.0;
  for (std::size_t x = 0; x < n; ++x)
  {
    if (role[x] == kActive)
    {
      peak = std::max(peak, au[x]);
    }
  }
  double stationarity = 0.0;
  double primal = 0.0;
  double dual = 0.0;
  const double hd = g.cell_volume();
  std::vector<double> mass(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
  {
    if (role[x] == kFree)
    {
      stationarity = std::max(stationarity, std::abs(au[x]));
    }
    if (e.contains(x))
    {
      primal = std::max(primal, 1.0 - u[x]);
      const double m = (role[x] == kActive ? au[x] : 0.0) * hd;
      res.clipped_mass = std::min(res.clipped_mass, m);
      if (role[x] == kActive)
      {
        dual = std::max(dual, -au[x]);
      }
      mass[x] = std::max(m, 0.0);
    }
  }
  res.kkt_residual = std::max({stationarity / peak, primal, dual / peak});
  if (res.kkt_residual > options.kkt_tolerance)
  {
    throw std::runtime_error("capacity: KKT residual above tolerance");
  }

  res.potential = ScalarField(g, u);
  res.equilibrium = DiscreteMeasure(g, std::move(mass));
  const double grad = dirichlet_norm(res.potential);
  res.energy = grad * grad;
  if (flavor == Flavor::inhomogeneous)
  {
    const double l2 = l2_norm(res.potential);
    res.energy += l2 * l2;
  }
  res.mass = res.equilibrium.total_mass();
  res.value = res.energy;
  return res;
}

ScalarField equilibrium_potential(const DiscreteMeasure &mu)
{
  if (mu.grid().dim() != 3)
  {
    throw std::invalid_argument("equilibrium potential is three-dimensional");
  }
  if (mu.is_zero())
  {
    throw std::invalid_argument("equilibrium potential of the zero measure");
  }
  return matched_riesz_potential(mu.density(), 2);
}

ScalarField normalized_potential(const DiscreteMeasure &mu, const CompactSet &e)
{
  require_same_grid(mu.grid(), e.grid(), "normalized_potential");
  ScalarField p = equilibrium_potential(mu);
  double low = std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < p.size(); ++x)
  {
    if (e.contains(x))
    {
      low = std::min(low, p[x].real());
    }
  }
  if (!std::isfinite(low))
  {
    throw std::invalid_argument("empty set");
  }
  for (std::size_t x = 0; x < p.size(); ++x)
  {
    p[x] += 1.0 - low;
  }
  return p;
}

GaugeCheck gauge_check(const CompactSet &e, double tau, const GaugeOptions &options)
{
  const Grid &g = e.grid();
  if (g.dim() != 3)
  {
    throw std::invalid_argument("gauge check is three-dimensional");
  }
  if (!(tau > 0.5 && tau < 1.5))
  {
    throw std::invalid_argument("tau must lie in (1/2, 3/2)");
  }
  return gauge_check(e, capacity(e, Flavor::homogeneous, options.capacity), tau, options);
}

GaugeCheck gauge_check(const CompactSet &e, const CapacityResult &cap, double tau,
                       const GaugeOptions &options)
{
  const Grid &g = e.grid();
  require_same_grid(g, cap.potential.grid(), "gauge_check");
  if (g.dim() != 3)
  {
    throw std::invalid_argument("gauge check is three-dimensional");
  }
  if (!(tau > 0.5 && tau < 1.5))
  {
    throw std::invalid_argument("tau must lie in (1/2, 3/2)");
  }
  if (cap.flavor != Flavor::homogeneous)
  {
    throw std::invalid_argument("gauge check needs the homogeneous capacity");
  }
  if (!(cap.value > 0.0))
  {
    throw std::invalid_argument("zero capacity");
  }
  const std::size_t n = g.size();
  constexpr double kFloor = 1e-12;
  std::vector<double> P(n);
  std::vector<double> Ptau(n);
  std::vector<double> lambda(n);
  for (std::size_t x = 0; x < n; ++x)
  {
    P[x] = std::max(cap.potential[x].real(), 0.0);
    Ptau[x] = std::pow(P[x], tau);
    lambda[x] = tau * std::log(std::max(P[x], kFloor));
  }
  GaugeCheck out{.lambda = ScalarField(g, lambda)};
  out.capacity = cap.value;
  const double lhs = dirichlet_norm(ScalarField(g, Ptau));
  out.energy_lhs = lhs * lhs;
  out.energy_rhs = tau * tau / (2.0 * tau - 1.0) * cap.value;

  // grad lambda = tau grad P / P on the support of the trial fields.
  const VectorField gradP = gradient(ScalarField(g, P));
  const Point c = e.centroid();
  const double cutoff = 0.45 * g.period();
  std::vector<double> window(n);
  for (std::size_t x = 0; x < n; ++x)
  {
    const double r = g.torus_distance(g.position(g.coords(x)), c);
    const double t = std::cos(0.5 * std::numbers::pi * r / cutoff);
    window[x] = r < cutoff ? t * t : 0.0;
  }

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> nd;
  out.gauge_ratio = 0.0;
  out.gauge_ratio_min = std::numeric_limits<double>::infinity();
  for (int s = 0; s < options.samples; ++s)
  {
    std::vector<Complex> hat(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
    {
      const Index f = g.coords(k);
      bool inside = true;
      for (int a = 0; a < 3; ++a)
      {
        inside = inside && std::abs(g.frequency(f[a])) <= options.band;
      }
      const double re = nd(rng);
      const double im = nd(rng);
      if (inside)
      {
        hat[k] = Complex(re, im);
      }
    }
    fft::inverse(g, hat);
    for (std::size_t x = 0; x < n; ++x)
    {
      hat[x] *= window[x];
    }
    const ScalarField u(g, hat, false);
    const VectorField gu = gradient(u);
    double plain = 0.0;
    double gauged = 0.0;
    for (std::size_t x = 0; x < n; ++x)
    {
      const double inv = P[x] > kFloor ? tau / P[x] : 0.0;
      for (int a = 0; a < 3; ++a)
      {
        const Complex du = gu[a][x];
        const Complex dl = gradP[a][x].real() * inv;
        plain += std::norm(du);
        gauged += std::norm(du + Complex(0.0, 1.0) * u[x] * dl);
      }
    }
    if (plain == 0.0)
    {
      continue;
    }
    const double ratio = std::sqrt(gauged / plain);
    out.gauge_ratio = std::max(out.gauge_ratio, ratio);
    out.gauge_ratio_min = std::min(out.gauge_ratio_min, ratio);
    ++out.samples;
  }
  return out;
}

}  // namespace formbound
