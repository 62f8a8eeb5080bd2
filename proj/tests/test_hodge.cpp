// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "formbound/hodge.hpp"
#include "formbound/reduce.hpp"
#include "formbound/spectral.hpp"
#include "support.hpp"

using namespace formbound;
using formbound::testing::max_diff;
using formbound::testing::random_field;
using formbound::testing::random_vector;
using formbound::testing::smooth_field;

namespace
{

constexpr double pi = std::numbers::pi;

// Second-order centered difference along one axis.
ScalarField centered_difference(const ScalarField &f, int axis)
{
  const Grid &g = f.grid();
  ScalarField out(g);
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    Index p = g.coords(x);
    Index m = p;
    p[axis] += 1;
    m[axis] -= 1;
    out[x] = (f[g.flat(p)] - f[g.flat(m)]) / (2.0 * g.spacing());
  }
  return out;
}

VectorField periodized_vortex(const Grid &g)
{
  const double h = g.spacing();
  const double c = g.period() / 2.0;
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
    const double mod = std::sqrt(rho2) * s;
    if (mod > 0.5 / h)
    {
      s *= (0.5 / h) / mod;
    }
    comps[0][x] = x2 * s;
    comps[1][x] = -x1 * s;
  }
  for (auto &cmp : comps)
  {
    cmp.make_real();
    cmp -= ScalarField::constant(g, mean(cmp));
  }
  return VectorField(std::move(comps));
}

}  // namespace

TEST_CASE("a gradient field is its own irrotational part")
{
  const Grid g(3, 16);
  const auto b = gradient(smooth_field(g, 1));
  const auto d = hodge_decompose(b);
  CHECK(max_diff(d.c, b) <= 1e-10 * max_abs(b));
  CHECK(max_abs(d.F) <= 1e-10 * max_abs(b));
  CHECK(d.residual <= 1e-10 * max_abs(b));
}

TEST_CASE("a 2d stream field has no irrotational part")
{
  const Grid g(2, 64);
  const auto s = smooth_field(g, 2);
  const auto gs = gradient(s);
  const VectorField b({gs[1], -1.0 * gs[0]});
  const auto d = hodge_decompose(b);
  CHECK(max_abs(d.c) <= 1e-10 * max_abs(b));
  CHECK(max_diff(row_divergence(d.F), b) <= 1e-10 * max_abs(b));
  CHECK(d.F.skew_symmetric());
}

TEST_CASE("decomposition invariants on random fields")
{
  for (int dim : {2, 3})
  {
    const Grid g(dim, dim == 2 ? 64 : 32);
    const auto b = random_vector(g, 5);
    const auto d = hodge_decompose(b);
    const double scale = max_abs(b);
    CHECK(d.residual <= 1e-10 * scale);
    CHECK(max_abs(curl(d.c)) <= 1e-10 * scale * 2 * pi * g.points_per_axis());
    CHECK(max_abs(divergence(row_divergence(d.F))) <=
          1e-10 * scale * 2 * pi * g.points_per_axis());
    CHECK(d.F.skew_defect() == 0.0);
    for (int i = 0; i < dim; ++i)
    {
      CHECK(std::abs(d.mean_part[i] - mean(b[i])) <= 1e-14 * scale);
    }
  }
}

TEST_CASE("vortex field is nearly solenoidal and improves under refinement")
{
  double prev = 1.0;
  for (int n : {32, 64})
  {
    const Grid g(3, n);
    const auto b = periodized_vortex(g);
    const auto d = hodge_decompose(b);
    double c2 = 0.0;
    double b2 = 0.0;
    for (int i = 0; i < 3; ++i)
    {
      c2 += std::pow(l2_norm(d.c[i]), 2);
      b2 += std::pow(l2_norm(b[i]), 2);
    }
    const double ratio = std::sqrt(c2 / b2);
    CHECK(ratio <= 0.05);
    CHECK(ratio < prev);
    prev = ratio;

    // The direct finite-difference divergence is small compared with |b| / h away from the
    // core; what remains is the truncation error of the difference quotient.
    ScalarField fd(g);
    for (int i = 0; i < 3; ++i)
    {
      fd += centered_difference(b[i], i);
    }
    double far = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x)
    {
      const Point p = g.position(g.coords(x));
      const double r = std::hypot(p[0] - 0.5, p[1] - 0.5);
      if (r > 4 * g.spacing())
      {
        far = std::max(far, std::abs(fd[x]));
      }
    }
    CHECK(far <= 0.02 * max_abs(b) / g.spacing());
  }
}

TEST_CASE("projections")
{
  for (int dim : {2, 3})
  {
    const Grid g(dim, dim == 2 ? 128 : 64);
    const auto b = random_vector(g, 17);
    const double scale = max_abs(b);
    const auto pb = project(Projection::P, b);
    const auto qb = project(Projection::Q, b);
    CHECK(max_diff(project(Projection::P, pb), pb) <= 1e-10 * scale);
    CHECK(max_diff(project(Projection::Q, qb), qb) <= 1e-10 * scale);
    CHECK(max_abs(project(Projection::P, qb)) <= 1e-10 * scale);
    CHECK(max_abs(project(Projection::Q, pb)) <= 1e-10 * scale);
    VectorField zm = b;
    for (int i = 0; i < dim; ++i)
    {
      zm[i] -= ScalarField::constant(g, mean(b[i]));
    }
    CHECK(max_diff(pb + qb, zm) <= 1e-10 * scale);
    const auto grad = gradient(smooth_field(g, 3));
    CHECK(max_abs(project(Projection::Q, grad)) <= 1e-10 * max_abs(grad));
  }
}

TEST_CASE("principal part reduction")
{
  const Grid g(2, 128);
  const auto b = VectorField({smooth_field(g, 1), smooth_field(g, 2)});
  const auto a11 = smooth_field(g, 3);
  const auto a12 = smooth_field(g, 4);
  const MatrixField sym(2, {a11, a12, a12, a11});
  auto r = reduce_principal(sym, b);
  CHECK(max_diff(r.b1, b) == 0.0);

  const MatrixField skew_const(
    2, {ScalarField(g), ScalarField::constant(g, 2.0), ScalarField::constant(g, -2.0),
        ScalarField(g)});
  r = reduce_principal(skew_const, b);
  CHECK(max_diff(r.b1, b) <= 1e-13);

  const auto gfun = ScalarField::sample(
    g, [](const Point &x) { return std::sin(2 * pi * x[0]) * std::sin(2 * pi * x[1]); });
  const MatrixField A(2, {ScalarField(g), gfun, -1.0 * gfun, ScalarField(g)});
  r = reduce_principal(A, b);
  // Oracle: b1_i = b_i - sum_j d_j A_ij with A already skew.
  for (int i = 0; i < 2; ++i)
  {
    ScalarField div(g);
    for (int j = 0; j < 2; ++j)
    {
      div += centered_difference(A(i, j), j);
    }
    const auto expect = b[i] - div;
    CHECK(max_diff(r.b1[i], expect) <= 1e-3 * max_abs(div));
  }
  CHECK(r.sup_norm == 0.0);

  const MatrixField diag(2, {ScalarField::constant(g, 3.0), ScalarField(g), ScalarField(g),
                             ScalarField::constant(g, -5.0)});
  CHECK(reduce_principal(diag, b).sup_norm == doctest::Approx(5.0));
}

TEST_CASE("inhomogeneous decomposition")
{
  const Grid g(2, 32);
  auto d = inhomogeneous_decompose(VectorField(g), ScalarField::constant(g, 1.0));
  CHECK(max_abs(d.h) <= 1e-15);
  CHECK(max_diff(d.gamma, ScalarField::constant(g, 1.0)) <= 1e-15);

  const auto q = ScalarField::sample(g, [](const Point &x) { return std::cos(2 * pi * x[0]); });
  d = inhomogeneous_decompose(VectorField(g), q);
  CHECK(max_diff(d.gamma, (1.0 / (1 + 4 * pi * pi)) * q) <= 1e-15);

  const Grid g3(3, 16, 2.0);
  const auto b = random_vector(g3, 8);
  const auto q3 = random_field(g3, 9);
  d = inhomogeneous_decompose(b, q3);
  CHECK(d.residual <= 1e-10 * std::max(max_abs(b), max_abs(q3)));
  // Direct application of the Bessel symbols as an independent route.
  const auto divb = divergence(b);
  const auto c_direct = -1.0 * gradient(apply_spectral(SpectralKind::bessel_inv, divb));
  for (int i = 0; i < 3; ++i)
  {
    const auto expect = c_direct[i] + apply_spectral(SpectralKind::bessel_inv, b[i]);
    CHECK(max_diff(d.c[i], expect) <= 1e-10 * max_abs(b));
  }
}

TEST_CASE("homogeneous and Bessel splittings agree at high frequency")
{
  const Grid g(2, 64);
  const double L = g.period();
  std::vector<ScalarField> comps;
  for (int i = 0; i < 2; ++i)
  {
    comps.push_back(ScalarField::sample(g, [&, i](const Point &x)
                                        {
                                          return std::cos(2 * pi * (9 * x[0] + 4 * i * x[1]) / L) +
                                                 std::sin(2 * pi * (3 * x[0] + 11 * x[1]) / L);
                                        }));
  }
  const VectorField b(std::move(comps));
  const auto hom = hodge_decompose(b);
  const auto inh = inhomogeneous_decompose(b, ScalarField(g));
  double diff = 0.0;
  double ref = 0.0;
  for (int i = 0; i < 2; ++i)
  {
    diff += std::pow(l2_norm(hom.c[i] - inh.c[i]), 2);
    ref += std::pow(l2_norm(hom.c[i]), 2);
  }
  CHECK(std::sqrt(diff / ref) <= 0.02);
}
