// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_TESTS_SUPPORT_HPP
#define FORMBOUND_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "formbound/field.hpp"
#include "formbound/reduce.hpp"

namespace formbound::testing
{

inline ScalarField random_field(const Grid &g, std::uint64_t seed, bool zero_mean = false)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(g.size());
  for (double &x : v)
  {
    x = nd(rng);
  }
  if (zero_mean)
  {
    double m = 0.0;
    for (double x : v)
    {
      m += x;
    }
    m /= static_cast<double>(v.size());
    for (double &x : v)
    {
      x -= m;
    }
  }
  return ScalarField(g, v);
}

inline VectorField random_vector(const Grid &g, std::uint64_t seed, bool zero_mean = false)
{
  std::vector<ScalarField> c;
  for (int i = 0; i < g.dim(); ++i)
  {
    c.push_back(random_field(g, seed * 31 + i, zero_mean));
  }
  return VectorField(std::move(c));
}

// Sum of a few low trigonometric modes with random amplitudes.
inline ScalarField smooth_field(const Grid &g, std::uint64_t seed, int band = 3)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ud(-1.0, 1.0);
  struct Mode
  {
    int k[3];
    double a, phase;
  };
  std::vector<Mode> modes;
  for (int t = 0; t < 8; ++t)
  {
    Mode m{};
    for (int a = 0; a < 3; ++a)
    {
      m.k[a] = a < g.dim() ? static_cast<int>(std::lround(ud(rng) * band)) : 0;
    }
    m.a = ud(rng);
    m.phase = 3.14159 * ud(rng);
    modes.push_back(m);
  }
  const double L = g.period();
  return ScalarField::sample(g, [&](const Point &x)
                             {
                               double s = 0.0;
                               for (const auto &m : modes)
                               {
                                 double arg = m.phase;
                                 for (int a = 0; a < 3; ++a)
                                 {
                                   arg += 2.0 * M_PI * m.k[a] * x[a] / L;
                                 }
                                 s += m.a * std::cos(arg);
                               }
                               return s;
                             });
}

inline double max_diff(const ScalarField &a, const ScalarField &b)
{
  return max_abs(a - b);
}

inline double max_diff(const VectorField &a, const VectorField &b)
{
  return max_abs(a - b);
}

}  // namespace formbound::testing

#endif  // FORMBOUND_TESTS_SUPPORT_HPP
