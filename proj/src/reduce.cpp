// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "formbound/spectral.hpp"

namespace formbound
{

namespace
{

void check_p(double p)
{
  if (!(p >= 1.0) || !std::isfinite(p))
  {
    throw std::invalid_argument("L^p exponent must lie in [1, inf)");
  }
}

double lp_from_moduli(const Grid &g, const std::vector<double> &mod, double p)
{
  double s = 0.0;
  if (p == 2.0)
  {
    for (double m : mod)
    {
      s += m * m;
    }
    return std::sqrt(s * g.cell_volume());
  }
  for (double m : mod)
  {
    s += std::pow(m, p);
  }
  return std::pow(s * g.cell_volume(), 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarField &f, double p)
{
  check_p(p);
  std::vector<double> mod(f.size());
  for (std::size_t i = 0; i < mod.size(); ++i)
  {
    mod[i] = std::abs(f[i]);
  }
  return lp_from_moduli(f.grid(), mod, p);
}

double lp_norm(const VectorField &v, double p)
{
  check_p(p);
  const ScalarField m2 = v.squared_modulus();
  std::vector<double> mod(m2.size());
  for (std::size_t i = 0; i < mod.size(); ++i)
  {
    mod[i] = std::sqrt(m2[i].real());
  }
  return lp_from_moduli(v.grid(), mod, p);
}

double l2_norm(const ScalarField &f)
{
  return lp_norm(f, 2.0);
}

Complex integral(const ScalarField &f)
{
  Complex s = 0.0;
  for (Complex z : f.values())
  {
    s += z;
  }
  return s * f.grid().cell_volume();
}

Complex mean(const ScalarField &f)
{
  Complex s = 0.0;
  for (Complex z : f.values())
  {
    s += z;
  }
  return s / static_cast<double>(f.size());
}

double max_abs(const ScalarField &f)
{
  double m = 0.0;
  for (Complex z : f.values())
  {
    m = std::max(m, std::abs(z));
  }
  return m;
}

double max_abs(const VectorField &v)
{
  const ScalarField m2 = v.squared_modulus();
  double m = 0.0;
  for (Complex z : m2.values())
  {
    m = std::max(m, z.real());
  }
  return std::sqrt(m);
}

double max_abs(const MatrixField &m)
{
  double r = 0.0;
  for (const auto &e : m.entries())
  {
    r = std::max(r, max_abs(e));
  }
  return r;
}

double dirichlet_norm(const ScalarField &f)
{
  const auto hat = spectrum(f);
  double s = 0.0;
  for_each_mode(f.grid(), [&](std::size_t idx, const std::array<double, 3> &, double k2)
                { s += k2 * std::norm(hat[idx]); });
  // Parseval: sum |f|^2 h^d = (h^d / N) sum |hat f|^2.
  return std::sqrt(s * f.grid().cell_volume() / static_cast<double>(f.size()));
}

double sobolev_norm(const ScalarField &f)
{
  return l2_norm(f) + dirichlet_norm(f);
}

Complex inner(const ScalarField &f, const ScalarField &g)
{
  require_same_grid(f.grid(), g.grid(), "inner product");
  Complex s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
  {
    s += f[i] * std::conj(g[i]);
  }
  return s * f.grid().cell_volume();
}

}  // namespace formbound
