// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "formbound/lattice_sums.hpp"
#include "formbound/measure.hpp"
#include "formbound/reduce.hpp"
#include "support.hpp"

using namespace formbound;

namespace
{

constexpr double pi = std::numbers::pi;

DiscreteMeasure point_mass(const Grid &g, double m)
{
  std::vector<double> masses(g.size(), 0.0);
  const int c = g.points_per_axis() / 2;
  masses[g.flat({c, c, g.dim() == 3 ? c : 0})] = m;
  return DiscreteMeasure(g, masses);
}

DiscreteMeasure random_measure(const Grid &g, std::uint64_t seed)
{
  const auto f = formbound::testing::random_field(g, seed);
  std::vector<double> m(g.size());
  for (std::size_t i = 0; i < m.size(); ++i)
  {
    m[i] = std::abs(f[i].real()) * g.cell_volume();
  }
  return DiscreteMeasure(g, m);
}

// Direct double loop over dyadic cubes P and their subcubes Q, masses summed from cells.
double brute_force_carleson(const DiscreteMeasure &mu)
{
  const Grid &g = mu.grid();
  const int n = g.points_per_axis();
  const int d = g.dim();
  struct Node
  {
    Index corner;
    int side;
    double mass;
  };
  std::vector<Node> cubes;
  for (int s = n; s >= 1; s /= 2)
  {
    for (int a = 0; a < n; a += s)
    {
      for (int b = 0; b < n; b += s)
      {
        for (int c = 0; c < (d == 3 ? n : 1); c += s)
        {
          double m = 0.0;
          for (std::size_t x = 0; x < g.size(); ++x)
          {
            const Index p = g.coords(x);
            if (p[0] >= a && p[0] < a + s && p[1] >= b && p[1] < b + s &&
                (d == 2 || (p[2] >= c && p[2] < c + s)))
            {
              m += mu[x];
            }
          }
          cubes.push_back({{a, b, c}, s, m});
        }
      }
    }
  }
  double best = 0.0;
  for (const auto &P : cubes)
  {
    if (P.mass <= 0.0)
    {
      continue;
    }
    double energy = 0.0;
    for (const auto &Q : cubes)
    {
      bool inside = Q.side <= P.side;
      for (int a = 0; a < d && inside; ++a)
      {
        inside = Q.corner[a] >= P.corner[a] && Q.corner[a] + Q.side <= P.corner[a] + P.side;
      }
      if (inside)
      {
        const double vol = std::pow(Q.side * g.spacing(), d);
        energy += Q.mass * Q.mass * std::pow(vol, 2.0 / d - 1.0);
      }
    }
    best = std::max(best, energy / P.mass);
  }
  return best;
}

}  // namespace

TEST_CASE("Epstein zeta and kernel constants")
{
  CHECK(epstein_zeta_cubic(1) == doctest::Approx(-2.8372974794806).epsilon(1e-11));
  CHECK(epstein_zeta_cubic(2) == doctest::Approx(-8.9136329175852).epsilon(1e-11));
  CHECK(riesz_kernel_constant(3, 2) == doctest::Approx(1.0 / (4 * pi)).epsilon(1e-14));
  CHECK(riesz_kernel_constant(3, 1) == doctest::Approx(1.0 / (2 * pi * pi)).epsilon(1e-14));
}

TEST_CASE("matched Newtonian potential of a point mass follows the free-space kernel")
{
  const Grid g(3, 64, 2.0);
  const auto mu = point_mass(g, 0.7);
  const auto pot = matched_riesz_potential(mu.density(), 2);
  const int c = g.points_per_axis() / 2;
  const Point x0 = g.position({c, c, c});
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    const double r = g.torus_distance(g.position(g.coords(x)), x0);
    if (r >= 4 * g.spacing() && r <= g.period() / 8)
    {
      const double expect = 0.7 / (4 * pi * r);
      CHECK(std::abs(pot[x].real() - expect) <= 0.15 * expect);
    }
  }
}

TEST_CASE("dyadic tree conserves mass")
{
  const Grid g(3, 16);
  std::vector<double> m(g.size());
  for (std::size_t i = 0; i < m.size(); ++i)
  {
    m[i] = static_cast<double>(i % 7);
  }
  const DiscreteMeasure mu(g, m);
  const DyadicTree tree(mu);
  CHECK(tree.mass(0, 0) == mu.total_mass());
  for (int level = 0; level < tree.depth(); ++level)
  {
    double s = 0.0;
    for (std::size_t k = 0; k < tree.nodes(level + 1); ++k)
    {
      s += tree.mass(level + 1, k);
    }
    CHECK(s == tree.mass(0, 0));
  }
  CHECK(tree.cube(1, 7).corner == Index{8, 8, 8});
  CHECK(tree.cube(1, 7).side == 8);
}

TEST_CASE("Carleson constant of Lebesgue measure")
{
  for (int n : {16, 32})
  {
    const Grid g(3, n);
    const auto rep = carleson_test(DiscreteMeasure::lebesgue(g));
    const int D = g.depth();
    const double expect = 4.0 / 3.0 * (1.0 - std::pow(4.0, -(D + 1)));
    CHECK(std::abs(rep.constant - expect) <= 1e-12 * expect);
    CHECK(rep.witness.side == n);
  }
  const Grid g(3, 16);
  CHECK(brute_force_carleson(DiscreteMeasure::lebesgue(g)) ==
        doctest::Approx(carleson_test(DiscreteMeasure::lebesgue(g)).constant).epsilon(1e-12));
}

TEST_CASE("Carleson tree matches the brute-force double loop on a random measure")
{
  const Grid g(2, 16, 3.0);
  const auto mu = random_measure(g, 12);
  CHECK(carleson_test(mu).constant ==
        doctest::Approx(brute_force_carleson(mu)).epsilon(1e-12));
}

TEST_CASE("Carleson constant scaling and degenerate measures")
{
  const Grid g(3, 16);
  CHECK(carleson_test(DiscreteMeasure(g)).constant == 0.0);
  CHECK(carleson_test(DiscreteMeasure(g)).pass);
  const auto mu = random_measure(g, 3);
  CHECK(carleson_test(mu.scaled(2.0)).constant == 2.0 * carleson_test(mu).constant);
}

TEST_CASE("point mass Carleson constant follows the chain of ancestors")
{
  double prev = 0.0;
  for (int n : {16, 32, 64})
  {
    const Grid g(3, n);
    const double m = 0.3;
    const auto rep = carleson_test(point_mass(g, m));
    const double expect = m * (std::pow(2.0, g.depth() + 1) - 1.0) / g.period();
    CHECK(rep.constant == doctest::Approx(expect).epsilon(1e-12));
    if (prev > 0.0)
    {
      CHECK(rep.constant > 1.9 * prev);
    }
    prev = rep.constant;
  }
}

TEST_CASE("ball growth")
{
  const Grid g(3, 64);
  const auto radii = default_radii(g);
  CHECK(radii.front() == doctest::Approx(2 * g.spacing()));
  CHECK(radii.back() <= g.period() / 4 + 1e-15);
  const auto leb = ball_growth_test(DiscreteMeasure::lebesgue(g), radii);
  const double expect = 4 * pi / 3 * std::pow(g.period() / 4, 2);
  CHECK(std::abs(leb.constant - expect) <= 0.03 * expect);
  CHECK(ball_growth_test(DiscreteMeasure(g), radii).constant == 0.0);

  const double m = 0.25;
  const auto pm = ball_growth_test(point_mass(g, m), radii);
  CHECK(pm.constant == doctest::Approx(m / (2 * g.spacing())).epsilon(1e-10));
  CHECK(pm.witness.radius == doctest::Approx(radii.front()));

  const Grid g2(2, 32);
  const auto two = ball_growth_test(DiscreteMeasure::lebesgue(g2), default_radii(g2));
  CHECK(two.forces_zero);
  CHECK_FALSE(two.pass);
  CHECK_THROWS_AS(ball_growth_test(DiscreteMeasure(g2), std::vector<double>{}),
                  std::invalid_argument);
}

TEST_CASE("ball sums match direct counting")
{
  const Grid g(2, 16, 2.0);
  const auto mu = random_measure(g, 5);
  const double r = 3.1 * g.spacing();
  const auto sums = ball_sums(g, mu.masses(), r);
  for (std::size_t x = 0; x < g.size(); x += 17)
  {
    double direct = 0.0;
    for (std::size_t y = 0; y < g.size(); ++y)
    {
      if (g.torus_distance(g.position(g.coords(x)), g.position(g.coords(y))) <= r)
      {
        direct += mu[y];
      }
    }
    CHECK(sums[x] == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("ball energy test")
{
  const Grid g(3, 32);
  const auto radii = default_radii(g);
  CHECK(ball_energy_test(DiscreteMeasure(g), radii).constant == 0.0);
  const auto mu = random_measure(g, 2);
  const double a = ball_energy_test(mu, radii).constant;
  CHECK(ball_energy_test(mu.scaled(3.0), radii).constant == doctest::Approx(3.0 * a).epsilon(1e-12));

  // Lebesgue ball of radius L/8 about the origin against the truncated free-space kernel.
  const double r = g.period() / 8;
  const std::vector<double> one{r};
  std::vector<double> masses(g.size(), 0.0);
  const Point origin{0, 0, 0};
  std::vector<std::size_t> ball;
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    if (g.torus_distance(g.position(g.coords(x)), origin) <= r)
    {
      masses[x] = g.cell_volume();
      ball.push_back(x);
    }
  }
  const DiscreteMeasure mb(g, masses);
  const double h = g.spacing();
  const double c31 = 1.0 / (2 * pi * pi);
  const double self = 4 * pi * std::cbrt(3.0 / (4 * pi)) / h;  // cell average of |x|^-2
  double energy = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    const Point px = g.position(g.coords(x));
    double pot = 0.0;
    for (std::size_t y : ball)
    {
      const double d = g.torus_distance(px, g.position(g.coords(y)));
      if (d == 0.0)
      {
        pot += c31 * self * g.cell_volume();
      }
      else if (d <= g.period() / 2)
      {
        pot += c31 * g.cell_volume() / (d * d);
      }
    }
    energy += pot * pot * g.cell_volume();
  }
  const double oracle = energy / mb.total_mass();
  // Lebesgue measure is translation invariant, so every sampled ball of radius L/8 sees mb.
  const auto rep = ball_energy_test(DiscreteMeasure::lebesgue(g), one);
  CHECK(rep.constant == doctest::Approx(oracle).epsilon(0.10));
}

TEST_CASE("pointwise potential test")
{
  const Grid g(3, 32);
  CHECK(pointwise_test(DiscreteMeasure(g)).constant == 0.0);
  const auto mu = random_measure(g, 4);
  const double a = pointwise_test(mu).constant;
  CHECK(std::abs(pointwise_test(mu.scaled(2.5)).constant - 2.5 * a) <= 1e-10 * a);

  const double c32 = pointwise_test(DiscreteMeasure::lebesgue(g)).constant;
  const double c64 = pointwise_test(DiscreteMeasure::lebesgue(Grid(3, 64))).constant;
  CHECK(c32 > 0.0);
  CHECK(std::abs(c64 - c32) <= 0.1 * c32);
}

TEST_CASE("Fefferman-Phong probe")
{
  const Grid g(3, 64);
  const auto radii = default_radii(g);
  CHECK(fefferman_phong_test(ScalarField(g), 0.5, radii).constant == 0.0);
  const double eps = 0.5;
  for (double r : radii)
  {
    if (r < 4 * g.spacing())
    {
      continue;
    }
    const std::vector<double> one{r};
    const double v = fefferman_phong_test(ScalarField::constant(g, 1.0), eps, one).constant;
    const double closed = 4 * pi / 3 * std::pow(r, 2 + 2 * eps);
    CHECK(std::abs(v - closed) <= 0.05 * closed);
  }
  const auto rho = formbound::testing::smooth_field(g, 3).abs();
  const double a = fefferman_phong_test(rho, eps, radii).constant;
  const double b = fefferman_phong_test(2.0 * rho, eps, radii).constant;
  CHECK(std::abs(b - std::pow(2.0, 1 + eps) * a) <= 1e-10 * b);
  CHECK_THROWS_AS(fefferman_phong_test(-1.0 * ScalarField::constant(g, 1.0), eps, radii),
                  std::invalid_argument);
  CHECK_THROWS_AS(fefferman_phong_test(rho, 0.0, radii), std::invalid_argument);
}

TEST_CASE("inhomogeneous variants")
{
  const Grid g(2, 32);
  const auto radii = default_radii(g);
  const auto zero = inhomogeneous_variants(DiscreteMeasure(g), radii);
  CHECK(zero.carleson.constant == 0.0);
  CHECK(zero.ball_energy.constant == 0.0);
  CHECK(zero.pointwise.constant == 0.0);

  const auto leb = inhomogeneous_variants(DiscreteMeasure::lebesgue(g), radii);
  CHECK(std::isfinite(leb.carleson.constant));
  CHECK(leb.carleson.constant > 0.0);
  // n = 2, unit torus: max over level-one cubes of sum_{l >= 1} 4^-l.
  CHECK(leb.carleson.constant ==
        doctest::Approx((1.0 - std::pow(4.0, -g.depth())) / 3.0).epsilon(1e-12));
  const auto leb3 = inhomogeneous_variants(DiscreteMeasure::lebesgue(g, 3.0), radii);
  CHECK(leb3.carleson.constant == doctest::Approx(3.0 * leb.carleson.constant).epsilon(1e-12));
  CHECK(leb3.pointwise.constant == doctest::Approx(3.0 * leb.pointwise.constant).epsilon(1e-10));
}
