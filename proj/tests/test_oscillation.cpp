// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "formbound/oscillation.hpp"
#include "formbound/reduce.hpp"
#include "support.hpp"

using namespace formbound;
using formbound::testing::random_field;
using formbound::testing::smooth_field;

namespace
{

constexpr double pi = std::numbers::pi;

// log|2 sin(pi x_1 / L)|, with the cell average log(pi h / L) - 1 on the singular cells.
ScalarField log_singular(const Grid &g)
{
  const double L = g.period();
  const double h = g.spacing();
  return ScalarField::sample(g, [&](const Point &x)
                             {
                               if (x[0] == 0.0)
                               {
                                 return std::log(pi * h / L) - 1.0;
                               }
                               return std::log(std::abs(2.0 * std::sin(pi * x[0] / L)));
                             });
}

double brute_force_sup(const ScalarField &f, const CubeFamily &family, int r, int max_side)
{
  double best = 0.0;
  for (const Cube &q : family.cubes())
  {
    if (q.side <= max_side)
    {
      best = std::max(best, mean_oscillation(f, q, r));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("constants have no oscillation")
{
  const Grid g(3, 16);
  const CubeFamily fam(g, CubeFlavor::dyadic_plus_half_shifts);
  const auto c = ScalarField::constant(g, 4.2);
  CHECK(bmo_norm(c, BmoFlavor::BMO, 1, fam).norm == 0.0);
  CHECK(bmo_norm(c, BmoFlavor::BMO_sharp, 2, fam).norm == 0.0);
  const std::vector<double> deltas{2.0 / 16, 4.0 / 16, 0.5};
  for (double v : vmo_profile(c, deltas).value)
  {
    CHECK(v == 0.0);
  }
}

TEST_CASE("family scan matches brute force")
{
  const Grid g(2, 32, 2.0);
  const auto f = random_field(g, 4);
  for (auto flavor : {CubeFlavor::dyadic, CubeFlavor::dyadic_plus_half_shifts})
  {
    const CubeFamily fam(g, flavor);
    for (int r : {1, 2})
    {
      const auto rep = bmo_norm(f, BmoFlavor::BMO, r, fam);
      CHECK(rep.norm == doctest::Approx(brute_force_sup(f, fam, r, 32)).epsilon(1e-12));
      CHECK(mean_oscillation(f, rep.worst_cube, r) == doctest::Approx(rep.norm).epsilon(1e-12));
      const auto sharp = bmo_norm(f, BmoFlavor::BMO_sharp, r, fam);
      CHECK(sharp.norm == doctest::Approx(brute_force_sup(f, fam, r, 16)).epsilon(1e-12));
    }
  }
  const CubeFamily shifted(g, CubeFlavor::dyadic_plus_half_shifts);
  const auto cubes = shifted.cubes();
  // Sides 2..16 carry the dyadic tiling and three shifted copies; sides 1 and 32 one tiling.
  std::size_t expect = 32 * 32 + 1;
  for (int s = 2; s <= 16; s *= 2)
  {
    expect += 4 * static_cast<std::size_t>((32 / s) * (32 / s));
  }
  CHECK(cubes.size() == expect);
}

TEST_CASE("homogeneity and translation by constants")
{
  const Grid g(2, 64);
  const CubeFamily fam(g, CubeFlavor::dyadic_plus_half_shifts);
  const auto f = random_field(g, 8);
  for (auto flavor : {BmoFlavor::BMO, BmoFlavor::bmo, BmoFlavor::BMO_sharp})
  {
    for (int r : {1, 2})
    {
      const double a = bmo_norm(f, flavor, r, fam).norm;
      const double b = bmo_norm(3.5 * f, flavor, r, fam).norm;
      CHECK(std::abs(b - 3.5 * a) <= 1e-12 * b);
    }
  }
  const auto shifted = f + ScalarField::constant(g, 10.0);
  for (auto flavor : {BmoFlavor::BMO, BmoFlavor::BMO_sharp})
  {
    const double a = bmo_norm(f, flavor, 1, fam).norm;
    CHECK(std::abs(bmo_norm(shifted, flavor, 1, fam).norm - a) <= 1e-12 * a);
  }
}

TEST_CASE("norm ordering")
{
  const Grid g(3, 16);
  const CubeFamily fam(g, CubeFlavor::dyadic_plus_half_shifts);
  for (std::uint64_t seed : {1u, 2u, 3u})
  {
    const auto f = smooth_field(g, seed) + random_field(g, seed + 10);
    const double big = bmo_norm(f, BmoFlavor::BMO, 1, fam).norm;
    const double sharp = bmo_norm(f, BmoFlavor::BMO_sharp, 1, fam).norm;
    const double local = bmo_norm(f, BmoFlavor::bmo, 1, fam).norm;
    CHECK(big >= sharp);
    CHECK(sharp >= 0.0);
    CHECK(local >= big);
  }
  // r = 2 dominates r = 1 on every cube.
  const auto f = random_field(g, 5);
  for (const Cube &q : fam.cubes())
  {
    CHECK(mean_oscillation(f, q, 2) >= mean_oscillation(f, q, 1) * (1 - 1e-14));
  }
}

TEST_CASE("matrix fields use the entrywise maximum")
{
  const Grid g(2, 16);
  const CubeFamily fam(g, CubeFlavor::dyadic);
  const auto a = random_field(g, 1);
  const auto b = 3.0 * random_field(g, 2);
  const MatrixField m(2, {ScalarField(g), a, b, ScalarField(g)});
  const double expect = std::max(bmo_norm(a, BmoFlavor::BMO, 1, fam).norm,
                                 bmo_norm(b, BmoFlavor::BMO, 1, fam).norm);
  CHECK(bmo_norm(m, BmoFlavor::BMO, 1, fam).norm == expect);
}

TEST_CASE("logarithmic singularity has a resolution-stable BMO norm")
{
  double norms[2];
  int k = 0;
  for (int n : {256, 512})
  {
    const Grid g(2, n);
    const CubeFamily fam(g, CubeFlavor::dyadic);
    const auto f = log_singular(g);
    norms[k] = bmo_norm(f, BmoFlavor::BMO, 1, fam).norm;
    CHECK(std::isfinite(norms[k]));
    if (n == 256)
    {
      CHECK(norms[k] == doctest::Approx(brute_force_sup(f, fam, 1, n)).epsilon(1e-12));
    }
    ++k;
  }
  CHECK(std::abs(norms[1] - norms[0]) <= 0.1 * norms[0]);
}

TEST_CASE("vmo profiles")
{
  const Grid g(2, 256);
  const double h = g.spacing();
  std::vector<double> deltas{2 * h, 4 * h, 8 * h, 16 * h, 32 * h};
  const auto smooth = ScalarField::sample(
    g, [](const Point &x) { return std::sin(2 * pi * x[0]) + 0.5 * std::cos(2 * pi * x[1]); });
  const auto p = vmo_profile(smooth, deltas);
  for (std::size_t i = 1; i < p.value.size(); ++i)
  {
    CHECK(p.value[i] >= p.value[i - 1]);
    const double ratio = p.value[i - 1] / p.value[i];
    CHECK(ratio >= 0.4);
    CHECK(ratio <= 0.6);
  }
  CHECK(p.vmo_consistent(0.05));

  const auto lp = vmo_profile(log_singular(g), deltas);
  for (double v : lp.value)
  {
    CHECK(v >= 0.2);
  }
  CHECK_FALSE(lp.vmo_consistent(0.05));

  const std::vector<double> too_fine{h};
  CHECK_THROWS_AS(vmo_profile(smooth, too_fine), std::invalid_argument);
}
