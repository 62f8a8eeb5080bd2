// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace formbound
{

namespace
{

void check_r(int r)
{
  if (r != 1 && r != 2)
  {
    throw std::invalid_argument("oscillation exponent must be 1 or 2");
  }
}

double rooted(double s, int r)
{
  return r == 1 ? s : std::sqrt(s);
}

double power(double a, int r)
{
  return r == 1 ? a : a * a;
}

struct Extremum
{
  double value = 0.0;
  Cube cube;
};

struct LevelStats
{
  int side = 0;
  Extremum oscillation;
  Extremum magnitude;  ///< rooted mean of |f|^r
};

// Tile id of every cell for the tiling of side s shifted by `shift`.
std::vector<std::size_t> tile_ids(const Grid &g, int s, const Index &shift)
{
  const int n = g.points_per_axis();
  const int tiles = n / s;
  std::vector<std::size_t> ids(g.size());
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    const Index c = g.coords(x);
    std::size_t id = 0;
    for (int a = 0; a < g.dim(); ++a)
    {
      const int local = ((c[a] - shift[a]) % n + n) % n;
      id = id * tiles + static_cast<std::size_t>(local / s);
    }
    ids[x] = id;
  }
  return ids;
}

Cube tile_cube(const Grid &g, int s, const Index &shift, std::size_t id)
{
  const int tiles = g.points_per_axis() / s;
  Cube c;
  c.side = s;
  for (int a = g.dim() - 1; a >= 0; --a)
  {
    c.corner[a] = static_cast<int>(id % tiles) * s + shift[a];
    id /= tiles;
  }
  return c;
}

std::vector<LevelStats> scan(const ScalarField &f, int r, const CubeFamily &family)
{
  const Grid &g = f.grid();
  std::vector<LevelStats> out;
  for (int s : family.sides())
  {
    LevelStats level;
    level.side = s;
    const auto count = static_cast<double>(std::pow(s, g.dim()));
    for (const Index &shift : family.shifts(s))
    {
      const auto ids = tile_ids(g, s, shift);
      const std::size_t ntiles = g.size() / static_cast<std::size_t>(count);
      // Means are accumulated relative to one sample per tile, so constant tiles give an
      // exactly zero oscillation.
      std::vector<Complex> ref(ntiles);
      std::vector<bool> seen(ntiles, false);
      std::vector<Complex> sum(ntiles);
      std::vector<double> mag(ntiles);
      for (std::size_t x = 0; x < g.size(); ++x)
      {
        const std::size_t t = ids[x];
        if (!seen[t])
        {
          ref[t] = f[x];
          seen[t] = true;
        }
        sum[t] += f[x] - ref[t];
        mag[t] += power(std::abs(f[x]), r);
      }
      std::vector<Complex> mean(ntiles);
      for (std::size_t t = 0; t < ntiles; ++t)
      {
        mean[t] = ref[t] + sum[t] / count;
      }
      std::vector<double> dev(ntiles);
      for (std::size_t x = 0; x < g.size(); ++x)
      {
        dev[ids[x]] += power(std::abs(f[x] - mean[ids[x]]), r);
      }
      for (std::size_t t = 0; t < ntiles; ++t)
      {
        const double osc = rooted(dev[t] / count, r);
        if (osc > level.oscillation.value || level.oscillation.cube.side == 0)
        {
          level.oscillation = {osc, tile_cube(g, s, shift, t)};
        }
        const double m = rooted(mag[t] / count, r);
        if (m > level.magnitude.value || level.magnitude.cube.side == 0)
        {
          level.magnitude = {m, tile_cube(g, s, shift, t)};
        }
      }
    }
    out.push_back(level);
  }
  return out;
}

BmoReport assemble(const std::vector<LevelStats> &levels, const Grid &g, BmoFlavor flavor,
                   int r)
{
  const int half = g.points_per_axis() / 2;
  BmoReport rep;
  rep.flavor = flavor;
  rep.r_exponent = r;
  Extremum osc;
  Extremum large;
  for (const auto &lv : levels)
  {
    const bool small = lv.side <= half;
    if ((flavor != BmoFlavor::BMO_sharp || small) &&
        (lv.oscillation.value > osc.value || osc.cube.side == 0))
    {
      osc = lv.oscillation;
    }
    if (lv.side >= half && (lv.magnitude.value > large.value || large.cube.side == 0))
    {
      large = lv.magnitude;
    }
  }
  rep.oscillation_part = osc.value;
  rep.worst_cube = osc.cube;
  rep.norm = osc.value;
  if (flavor == BmoFlavor::bmo)
  {
    rep.large_part = large.value;
    rep.norm += large.value;
  }
  return rep;
}

std::vector<int> resolvable_sides(const Grid &g, std::span<const double> deltas)
{
  if (deltas.empty())
  {
    throw std::invalid_argument("empty scale list");
  }
  std::vector<int> limit;
  double prev = 0.0;
  for (double d : deltas)
  {
    if (!(d > prev))
    {
      throw std::invalid_argument("scales must be positive and increasing");
    }
    if (d < 2.0 * g.spacing() * (1.0 - 1e-12))
    {
      throw std::invalid_argument("scale below grid resolution (2h)");
    }
    if (d > 0.5 * g.period() * (1.0 + 1e-12))
    {
      throw std::invalid_argument("scale exceeds L/2");
    }
    prev = d;
    int s = 1;
    while (2 * s * g.spacing() <= d * (1.0 + 1e-12))
    {
      s *= 2;
    }
    limit.push_back(s);
  }
  return limit;
}

VmoProfile profile_from(const std::vector<std::vector<LevelStats>> &per_entry, const Grid &g,
                        std::span<const double> deltas)
{
  const auto limit = resolvable_sides(g, deltas);
  VmoProfile p;
  for (std::size_t i = 0; i < deltas.size(); ++i)
  {
    double v = 0.0;
    for (const auto &levels : per_entry)
    {
      for (const auto &lv : levels)
      {
        if (lv.side <= limit[i])
        {
          v = std::max(v, lv.oscillation.value);
        }
      }
    }
    p.delta.push_back(deltas[i]);
    p.value.push_back(v);
  }
  return p;
}

}  // namespace

CubeFamily::CubeFamily(const Grid &grid, CubeFlavor flavor) : grid_(grid), flavor_(flavor) {}

std::vector<int> CubeFamily::sides() const
{
  std::vector<int> s;
  for (int side = 1; side <= grid_.points_per_axis(); side *= 2)
  {
    s.push_back(side);
  }
  return s;
}

std::vector<Index> CubeFamily::shifts(int side) const
{
  std::vector<Index> out{{0, 0, 0}};
  if (flavor_ == CubeFlavor::dyadic || side < 2 || side == grid_.points_per_axis())
  {
    return out;
  }
  const int d = grid_.dim();
  for (int mask = 1; mask < (1 << d); ++mask)
  {
    Index sh{0, 0, 0};
    for (int a = 0; a < d; ++a)
    {
      if (mask & (1 << a))
      {
        sh[a] = side / 2;
      }
    }
    out.push_back(sh);
  }
  return out;
}

std::vector<Cube> CubeFamily::cubes() const
{
  std::vector<Cube> out;
  for (int s : sides())
  {
    const std::size_t tiles =
      static_cast<std::size_t>(std::pow(grid_.points_per_axis() / s, grid_.dim()));
    for (const Index &sh : shifts(s))
    {
      for (std::size_t t = 0; t < tiles; ++t)
      {
        out.push_back(tile_cube(grid_, s, sh, t));
      }
    }
  }
  return out;
}

double mean_oscillation(const ScalarField &f, const Cube &cube, int r_exponent)
{
  check_r(r_exponent);
  const Grid &g = f.grid();
  const int d = g.dim();
  const int s = cube.side;
  std::vector<std::size_t> cells;
  for (int a = 0; a < s; ++a)
  {
    for (int b = 0; b < s; ++b)
    {
      if (d == 2)
      {
        cells.push_back(g.flat({cube.corner[0] + a, cube.corner[1] + b, 0}));
        continue;
      }
      for (int c = 0; c < s; ++c)
      {
        cells.push_back(
          g.flat({cube.corner[0] + a, cube.corner[1] + b, cube.corner[2] + c}));
      }
    }
  }
  const Complex ref = f[cells.front()];
  Complex m = 0.0;
  for (auto x : cells)
  {
    m += f[x] - ref;
  }
  m = ref + m / static_cast<double>(cells.size());
  double dev = 0.0;
  for (auto x : cells)
  {
    dev += power(std::abs(f[x] - m), r_exponent);
  }
  return rooted(dev / static_cast<double>(cells.size()), r_exponent);
}

BmoReport bmo_norm(const ScalarField &f, BmoFlavor flavor, int r_exponent,
                   const CubeFamily &family)
{
  check_r(r_exponent);
  require_same_grid(f.grid(), family.grid(), "bmo_norm");
  return assemble(scan(f, r_exponent, family), f.grid(), flavor, r_exponent);
}

BmoReport bmo_norm(const MatrixField &f, BmoFlavor flavor, int r_exponent,
                   const CubeFamily &family)
{
  BmoReport best;
  bool first = true;
  for (const auto &e : f.entries())
  {
    BmoReport rep = bmo_norm(e, flavor, r_exponent, family);
    if (first || rep.norm > best.norm)
    {
      best = rep;
      first = false;
    }
  }
  return best;
}

bool VmoProfile::vmo_consistent(double threshold) const
{
  return !value.empty() && value.front() <= threshold;
}

VmoProfile vmo_profile(const ScalarField &f, std::span<const double> deltas, int r_exponent,
                       CubeFlavor flavor)
{
  check_r(r_exponent);
  const CubeFamily family(f.grid(), flavor);
  return profile_from({scan(f, r_exponent, family)}, f.grid(), deltas);
}

VmoProfile vmo_profile(const MatrixField &f, std::span<const double> deltas, int r_exponent,
                       CubeFlavor flavor)
{
  check_r(r_exponent);
  const CubeFamily family(f.grid(), flavor);
  std::vector<std::vector<LevelStats>> per_entry;
  for (const auto &e : f.entries())
  {
    per_entry.push_back(scan(e, r_exponent, family));
  }
  return profile_from(per_entry, f.grid(), deltas);
}

}  // namespace formbound
