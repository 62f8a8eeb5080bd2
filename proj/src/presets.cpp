// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/presets.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "formbound/fft.hpp"
#include "formbound/reduce.hpp"
#include "formbound/spectral.hpp"

namespace formbound
{

namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Point center_of(const Grid &g)
{
  const double c = 0.5 * g.period();
  return {c, c, g.dim() == 3 ? c : 0.0};
}

ScalarField gaussian(const Grid &g, const Point &c, double sigma)
{
  return ScalarField::sample(g, [&](const Point &x)
                             {
                               const double r = g.torus_distance(x, c);
                               return std::exp(-0.5 * r * r / (sigma * sigma));
                             });
}

// (d2 g, -d1 g, 0): the row divergence of the skew matrix with F12 = g.
VectorField stream_of(const ScalarField &g)
{
  const Grid &grid = g.grid();
  std::vector<ScalarField> comps(grid.dim(), ScalarField(grid));
  comps[0] = partial(g, 1);
  comps[1] = -1.0 * partial(g, 0);
  for (auto &c : comps)
  {
    c.make_real();
  }
  return VectorField(std::move(comps));
}

ScalarField smooth_potential(const Grid &g, double phase)
{
  const double L = g.period();
  return ScalarField::sample(g, [&](const Point &x)
                             {
                               double v = std::sin(kTwoPi * x[0] / L) *
                                              std::cos(kTwoPi * x[1] / L + phase) +
                                          0.5 * std::cos(2.0 * kTwoPi * x[1] / L + 0.3);
                               if (g.dim() == 3)
                               {
                                 v += 0.3 * std::sin(kTwoPi * (x[0] + x[2]) / L + phase);
                               }
                               return v;
                             });
}

DiscreteMeasure modulus_measure(const ScalarField &density)
{
  return DiscreteMeasure::from_density(density.abs());
}

}  // namespace

const std::vector<std::string> &preset_names()
{
  static const std::vector<std::string> names{
      "vortex",   "gradient",      "stream", "lebesgue",     "bump",
      "bumps",    "point_mass",    "coulomb_gauge", "random", "log_singular",
      "singular_gradient"};
  return names;
}

VectorField vortex_field(const Grid &g)
{
  const double h = g.spacing();
  const double c = 0.5 * g.period();
  const double cap = 0.5 / h;
  std::vector<ScalarField> comps(g.dim(), ScalarField(g));
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    const Point p = g.position(g.coords(x));
    const double x1 = g.periodic_offset(c, p[0]);
    const double x2 = g.periodic_offset(c, p[1]);
    const double rho2 = x1 * x1 + x2 * x2;
    if (rho2 == 0.0)
    {
      continue;
    }
    double s = 1.0 / rho2;
    const double modulus = std::sqrt(rho2) * s;
    if (modulus > cap)
    {
      s *= cap / modulus;
    }
    comps[0][x] = x2 * s;
    comps[1][x] = -x1 * s;
  }
  for (auto &comp : comps)
  {
    comp.make_real();
    comp -= ScalarField::constant(g, mean(comp));
    comp.make_real();
  }
  return VectorField(std::move(comps));
}

ScalarField log_singular_field(const Grid &g)
{
  const double L = g.period();
  const double h = g.spacing();
  return ScalarField::sample(g, [&](const Point &x)
                             {
                               const double s = std::abs(2.0 * std::sin(std::numbers::pi * x[0] / L));
                               if (s < 1e-300 || x[0] == 0.0)
                               {
                                 return std::log(std::numbers::pi * h / L) - 1.0;
                               }
                               return std::log(s);
                             });
}

ScalarField band_limited_field(const Grid &g, std::uint64_t seed, int band)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<Complex> hat(g.size(), 0.0);
  for (std::size_t k = 0; k < g.size(); ++k)
  {
    const Index f = g.coords(k);
    bool inside = true;
    bool zero = true;
    for (int a = 0; a < g.dim(); ++a)
    {
      const int fa = g.frequency(f[a]);
      inside = inside && std::abs(fa) <= band && fa != -g.points_per_axis() / 2;
      zero = zero && fa == 0;
    }
    const double re = nd(rng);
    const double im = nd(rng);
    if (inside && !zero)
    {
      hat[k] = Complex(re, im);
    }
  }
  fft::inverse(g, hat);
  std::vector<double> v(g.size());
  double ss = 0.0;
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    v[x] = hat[x].real();
    ss += v[x] * v[x];
  }
  const double rms = std::sqrt(ss / static_cast<double>(g.size()));
  for (double &x : v)
  {
    x /= rms;
  }
  return ScalarField(g, v);
}

Preset make_preset(const std::string &name, const Grid &g, const PresetOptions &options)
{
  Preset p{name,
           MatrixField(g),
           VectorField(g),
           ScalarField::constant(g, 0.0),
           ScalarField::constant(g, 0.0),
           DiscreteMeasure(g)};
  p.q.make_real();
  p.scalar.make_real();
  const double L = g.period();
  const double h = g.spacing();
  const double amp = options.amplitude;

  if (name == "vortex")
  {
    p.b = Complex(amp) * vortex_field(g);
    const Point c = center_of(g);
    p.scalar = ScalarField::sample(g, [&](const Point &x)
                                   {
                                     const double x1 = g.periodic_offset(c[0], x[0]);
                                     const double x2 = g.periodic_offset(c[1], x[1]);
                                     return amp * std::log(std::max(std::hypot(x1, x2), 0.5 * h));
                                   });
    p.measure = DiscreteMeasure::from_density(p.b.squared_modulus());
  }
  else if (name == "gradient")
  {
    p.scalar = ScalarField::sample(g, [&](const Point &x)
                                   { return amp * std::sin(kTwoPi * x[0] / L); });
    std::vector<ScalarField> comps(g.dim(), ScalarField::constant(g, 0.0));
    comps[0] = ScalarField::sample(g, [&](const Point &x)
                                   { return amp * kTwoPi / L * std::cos(kTwoPi * x[0] / L); });
    for (auto &c : comps)
    {
      c.make_real();
    }
    p.b = VectorField(std::move(comps));
    p.measure = DiscreteMeasure::from_density(p.b.squared_modulus());
  }
  else if (name == "stream")
  {
    p.scalar = amp * smooth_potential(g, 0.0);
    p.b = stream_of(p.scalar);
    p.measure = DiscreteMeasure::from_density(p.b.squared_modulus());
  }
  else if (name == "lebesgue")
  {
    p.q = ScalarField::constant(g, amp);
    p.q.make_real();
    p.scalar = p.q;
    p.measure = DiscreteMeasure::lebesgue(g, amp);
  }
  else if (name == "bump")
  {
    p.q = amp * gaussian(g, center_of(g), L / 16.0);
    p.scalar = p.q;
    p.measure = DiscreteMeasure::from_density(p.q);
  }
  else if (name == "bumps")
  {
    const Point c1{0.25 * L, 0.25 * L, g.dim() == 3 ? 0.25 * L : 0.0};
    const Point c2{0.7 * L, 0.4 * L, g.dim() == 3 ? 0.6 * L : 0.0};
    const Point c3{0.45 * L, 0.8 * L, g.dim() == 3 ? 0.3 * L : 0.0};
    p.q = amp * (gaussian(g, c1, L / 16.0) + 2.0 * gaussian(g, c2, L / 32.0) +
                 0.5 * gaussian(g, c3, L / 8.0));
    p.scalar = p.q;
    p.measure = DiscreteMeasure::from_density(p.q);
  }
  else if (name == "point_mass")
  {
    std::vector<double> masses(g.size(), 0.0);
    const int mid = g.points_per_axis() / 2;
    masses[g.flat({mid, mid, g.dim() == 3 ? mid : 0})] = amp;
    p.measure = DiscreteMeasure(g, std::move(masses));
    p.q = p.measure.density();
    p.scalar = p.q;
  }
  else if (name == "coulomb_gauge")
  {
    // a = Div F0 with F0 smooth and skew, so div a = 0; q = -|a|^2.
    MatrixField F0(g);
    const auto g12 = amp * smooth_potential(g, 0.0);
    F0(0, 1) = g12;
    F0(1, 0) = -1.0 * g12;
    if (g.dim() == 3)
    {
      const auto g13 = amp * smooth_potential(g, 1.1);
      const auto g23 = amp * smooth_potential(g, 2.3);
      F0(0, 2) = g13;
      F0(2, 0) = -1.0 * g13;
      F0(1, 2) = g23;
      F0(2, 1) = -1.0 * g23;
    }
    p.b = row_divergence(MatrixField::antisymmetrize(F0));
    for (int i = 0; i < g.dim(); ++i)
    {
      p.b[i].make_real();
    }
    p.q = -1.0 * p.b.squared_modulus();
    p.q.make_real();
    p.scalar = g12;
    p.measure = DiscreteMeasure::from_density(p.b.squared_modulus());
  }
  else if (name == "random")
  {
    std::vector<ScalarField> comps;
    for (int i = 0; i < g.dim(); ++i)
    {
      comps.push_back(amp * band_limited_field(g, options.seed * 1000 + i, options.band));
    }
    p.b = VectorField(std::move(comps));
    p.q = amp * band_limited_field(g, options.seed * 1000 + 99, options.band);
    p.scalar = p.q;
    p.measure = DiscreteMeasure::from_density(p.b.squared_modulus());
  }
  else if (name == "log_singular")
  {
    // b = Div F0 with F0_12 = f: a log-singular skew part and nothing else.
    p.scalar = amp * log_singular_field(g);
    p.b = stream_of(p.scalar);
    p.measure = modulus_measure(p.scalar);
  }
  else if (name == "singular_gradient")
  {
    // b = grad g with g = (L/4) / r near the center, capped at r = 2h.
    const Point c = center_of(g);
    p.scalar = ScalarField::sample(g, [&](const Point &x)
                                   {
                                     const double r = std::max(g.torus_distance(x, c), 2.0 * h);
                                     return amp * (L / 4.0) / r;
                                   });
    p.b = gradient(p.scalar);
    for (int i = 0; i < g.dim(); ++i)
    {
      p.b[i].make_real();
    }
    p.measure = DiscreteMeasure::from_density(p.b.squared_modulus());
  }
  else
  {
    throw std::invalid_argument("unknown preset: " + name);
  }
  return p;
}

}  // namespace formbound
