// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <doctest.h>

#include "formbound/eigen_estimate.hpp"
#include "formbound/form_norm.hpp"
#include "formbound/hodge.hpp"
#include "formbound/reduce.hpp"
#include "formbound/spectral.hpp"
#include "support.hpp"

using namespace formbound;
using namespace formbound::testing;

namespace
{

constexpr double kPi = std::numbers::pi;

// Dense matrices of the compressed operator on a tiny grid, built from DFT matrices.
struct DenseCalculus
{
  explicit DenseCalculus(const Grid &g, Flavor flavor) : grid(g)
  {
    const int n = g.points_per_axis();
    const auto N = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXcd F(N, N);
    for (Eigen::Index a = 0; a < N; ++a)
    {
      const Index ka = g.coords(a);
      for (Eigen::Index b = 0; b < N; ++b)
      {
        const Index xb = g.coords(b);
        double phase = 0.0;
        for (int d = 0; d < g.dim(); ++d)
        {
          phase += static_cast<double>(ka[d]) * xb[d];
        }
        F(a, b) = std::polar(1.0, -2.0 * kPi * phase / n);
      }
    }
    const Eigen::MatrixXcd Finv = F.adjoint() / static_cast<double>(N);
    Eigen::VectorXcd sym(N);
    std::array<Eigen::VectorXcd, 3> deriv;
    for (auto &d : deriv)
    {
      d = Eigen::VectorXcd::Zero(N);
    }
    for (Eigen::Index a = 0; a < N; ++a)
    {
      const Index ka = g.coords(a);
      double k2 = 0.0;
      for (int d = 0; d < g.dim(); ++d)
      {
        const double kd = g.wavenumber(ka[d]);
        deriv[d](a) = std::complex<double>(0.0, kd);
        k2 += kd * kd;
      }
      if (flavor == Flavor::homogeneous)
      {
        sym(a) = k2 > 0.0 ? 1.0 / std::sqrt(k2) : 0.0;
      }
      else
      {
        sym(a) = 1.0 / std::sqrt(1.0 + k2);
      }
    }
    G = Finv * sym.asDiagonal() * F;
    for (int d = 0; d < g.dim(); ++d)
    {
      D[d] = Finv * deriv[d].asDiagonal() * F;
    }
  }

  static Eigen::MatrixXcd diag(const ScalarField &f)
  {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i)
    {
      v(static_cast<Eigen::Index>(i)) = f[i];
    }
    return v.asDiagonal();
  }

  static double top_singular(const Eigen::MatrixXcd &m)
  {
    return Eigen::BDCSVD<Eigen::MatrixXcd>(m).singularValues()(0);
  }

  Grid grid;
  Eigen::MatrixXcd G;
  std::array<Eigen::MatrixXcd, 3> D;
};

ScalarField complex_random(const Grid &g, std::uint64_t seed)
{
  const auto re = random_field(g, seed);
  const auto im = random_field(g, seed + 100);
  return re + Complex(0.0, 1.0) * im;
}

}  // namespace

TEST_CASE("both eigen methods find the top of a diagonal spectrum")
{
  const std::size_t n = 200;
  const LinearMap op = [&](const CVector &x, CVector &y)
  {
    y.resize(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      y[i] = (1.0 + 0.01 * static_cast<double>(i)) * x[i];
    }
  };
  CVector start(n, 1.0);
  for (auto method : {EigenMethod::power_iteration, EigenMethod::subspace_sweep})
  {
    EigenOptions o;
    o.method = method;
    o.max_iterations = 5000;
    const auto r = top_eigenpair(op, start, o);
    CHECK(r.converged);
    CHECK(r.monotone());
    CHECK(r.value == doctest::Approx(2.99).epsilon(1e-8));
    CHECK(r.residual <= 1e-6);
  }
  const LinearMap zero = [&](const CVector &x, CVector &y) { y.assign(x.size(), 0.0); };
  CHECK(top_eigenpair(zero, start).value == 0.0);
}

TEST_CASE("trace constant of scaled Lebesgue measure is the Poincare constant")
{
  const Grid g(3, 16);
  for (double alpha : {1.0, 3.5})
  {
    for (auto method : {EigenMethod::power_iteration, EigenMethod::subspace_sweep})
    {
      FormOptions o;
      o.eigen.method = method;
      const auto e = trace_constant(DiscreteMeasure::lebesgue(g, alpha), Flavor::homogeneous, o);
      CHECK(e.value == doctest::Approx(alpha / (4.0 * kPi * kPi)).epsilon(1e-6));
      CHECK(e.monotone);
      CHECK(e.converged);
    }
  }
  // Bessel compression: sup over all modes of alpha / (1 + k^2) is alpha at k = 0.
  const auto inh = trace_constant(DiscreteMeasure::lebesgue(g, 2.0), Flavor::inhomogeneous);
  CHECK(inh.value == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(trace_constant(DiscreteMeasure(g), Flavor::homogeneous).value == 0.0);
}

TEST_CASE("trace constant is linear in the measure")
{
  const Grid g(3, 16);
  const auto rho = smooth_field(g, 3).abs();
  const auto mu = DiscreteMeasure::from_density(rho);
  const double one = trace_constant(mu, Flavor::homogeneous).value;
  const double two = trace_constant(mu.scaled(2.0), Flavor::homogeneous).value;
  CHECK(std::abs(two - 2.0 * one) <= 1e-10 * two);
}

TEST_CASE("form norm of simple operators")
{
  const Grid g(3, 16);
  const VectorField zero_b(g);
  const MatrixField zero_A(g);
  const auto identity = form_norm(MatrixField::identity(g), zero_b, ScalarField(g),
                                  Flavor::homogeneous);
  CHECK(identity.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(identity.witness.size() == 2);

  const double alpha = 2.5;
  const auto potential =
      form_norm(zero_A, zero_b, ScalarField::constant(g, alpha), Flavor::homogeneous);
  const auto trace = trace_constant(DiscreteMeasure::lebesgue(g, alpha), Flavor::homogeneous);
  CHECK(potential.value == doctest::Approx(alpha / (4.0 * kPi * kPi)).epsilon(1e-6));
  CHECK(potential.value == doctest::Approx(trace.value).epsilon(1e-6));
  CHECK(form_norm(zero_A, zero_b, ScalarField(g), Flavor::homogeneous).value == 0.0);
}

TEST_CASE("form norm matches a dense singular value computation")
{
  const Grid g(2, 16);
  MatrixField A(g);
  for (int i = 0; i < 2; ++i)
  {
    for (int j = 0; j < 2; ++j)
    {
      A(i, j) = 0.3 * complex_random(g, 10 + 2 * i + j);
    }
  }
  VectorField b(std::vector<ScalarField>{complex_random(g, 20), complex_random(g, 21)});
  const ScalarField q = complex_random(g, 30);
  for (auto flavor : {Flavor::homogeneous, Flavor::inhomogeneous})
  {
    const DenseCalculus dc(g, flavor);
    Eigen::MatrixXcd L = DenseCalculus::diag(q);
    for (int i = 0; i < 2; ++i)
    {
      L += DenseCalculus::diag(b[i]) * dc.D[i];
      for (int j = 0; j < 2; ++j)
      {
        L += dc.D[i] * DenseCalculus::diag(A(i, j)) * dc.D[j];
      }
    }
    const Eigen::MatrixXcd R = dc.G * L * dc.G;
    FormOptions o;
    o.eigen.max_iterations = 5000;
    const auto e = form_norm(A, b, q, flavor, o);
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(DenseCalculus::top_singular(R)).epsilon(1e-10));

    const Eigen::MatrixXcd H = 0.5 * (R + R.adjoint());
    const Eigen::MatrixXcd S = 0.5 * (R - R.adjoint());
    CHECK(form_part_norm(A, b, q, flavor, FormPart::hermitian, o).value ==
          doctest::Approx(DenseCalculus::top_singular(H)).epsilon(1e-10));
    CHECK(form_part_norm(A, b, q, flavor, FormPart::skew, o).value ==
          doctest::Approx(DenseCalculus::top_singular(S)).epsilon(1e-10));
  }
}

TEST_CASE("commutator of a constant field against the dense oracle")
{
  const Grid g(2, 16);
  const VectorField b(std::vector<ScalarField>{ScalarField::constant(g, 0.7),
                                               ScalarField::constant(g, -1.3)});
  const DenseCalculus dc(g, Flavor::homogeneous);
  // K(u, v) = 1/2 sum b . (conj(v) grad u - u grad conj(v)) as a matrix acting on u.
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(256, 256);
  for (int j = 0; j < 2; ++j)
  {
    const Eigen::MatrixXcd Bj = DenseCalculus::diag(b[j]);
    K += 0.5 * (Bj * dc.D[j] - dc.D[j].adjoint() * Bj);
  }
  const double dense = DenseCalculus::top_singular(dc.G * K * dc.G);
  const auto e = commutator_norm(b, Flavor::homogeneous);
  CHECK(e.value == doctest::Approx(dense).epsilon(1e-10));
  // A constant field only sees the lowest modes: |b . kappa| / |kappa|^2 at |kappa| = 2 pi.
  CHECK(e.value == doctest::Approx(1.3 / (2.0 * kPi)).epsilon(1e-10));
  CHECK(commutator_norm(VectorField(g), Flavor::homogeneous).value == 0.0);
}

TEST_CASE("commutator assembled directly agrees with the skew part of b . grad")
{
  const Grid g(2, 32);
  const auto potential = 0.1 * smooth_field(g, 5);
  const auto b = gradient(potential);
  const auto direct = commutator_norm(b, Flavor::homogeneous);
  const auto skew = form_part_norm(MatrixField(g), b, ScalarField(g), Flavor::homogeneous,
                                   FormPart::skew);
  CHECK(direct.value > 0.0);
  CHECK(std::abs(direct.value - skew.value) <= 1e-8 * direct.value);
}

TEST_CASE("commutator form is purely imaginary on real fields")
{
  const Grid g(2, 32);
  const auto b = gradient(smooth_field(g, 6)) + random_vector(g, 7);
  for (std::uint64_t s = 0; s < 20; ++s)
  {
    const auto u = random_field(g, 100 + s);
    // K u = 1/2 b . grad u + 1/2 div(b u).
    const auto gu = gradient(u);
    std::vector<ScalarField> bu;
    for (int j = 0; j < 2; ++j)
    {
      bu.push_back(b[j] * u);
    }
    const auto Ku = 0.5 * (b.dot(gu) + divergence(VectorField(std::move(bu))));
    const Complex form = inner(Ku, u);
    const double scale = l2_norm(Ku) * l2_norm(u);
    CHECK(std::abs(form.real()) <= 1e-10 * scale);
  }
}

TEST_CASE("form norm sees identical fields after a Hodge reconstruction")
{
  const Grid g(3, 16);
  const auto b = random_vector(g, 11) + gradient(smooth_field(g, 12));
  const auto d = hodge_decompose(b);
  VectorField rebuilt = d.c + row_divergence(d.F);
  for (int i = 0; i < 3; ++i)
  {
    rebuilt[i] += ScalarField::constant(g, d.mean_part[i]);
  }
  const double direct = form_norm(MatrixField(g), b, ScalarField(g), Flavor::homogeneous).value;
  const double again =
      form_norm(MatrixField(g), rebuilt, ScalarField(g), Flavor::homogeneous).value;
  CHECK(std::abs(direct - again) <= 1e-8 * direct);
}

TEST_CASE("form splits into its symmetric part and the commutator")
{
  const Grid g(3, 16);
  const auto b = gradient(smooth_field(g, 21)) + random_vector(g, 22);
  const auto q = smooth_field(g, 23);
  const MatrixField A(g);
  const double full = form_norm(A, b, q, Flavor::homogeneous).value;
  const double sym = form_part_norm(A, b, q, Flavor::homogeneous, FormPart::hermitian).value;
  const double com = commutator_norm(b, Flavor::homogeneous).value;
  CHECK(full <= sym + com + 1e-8);
  CHECK(full >= std::max(sym, com) - 1e-8);

  // For smooth b the symmetric part is the potential q - div(b)/2.
  const auto smooth_b = gradient(smooth_field(g, 24));
  const auto shifted = q - 0.5 * divergence(smooth_b);
  const double herm =
      form_part_norm(A, smooth_b, q, Flavor::homogeneous, FormPart::hermitian).value;
  const double potential = form_norm(A, VectorField(g), shifted, Flavor::homogeneous).value;
  CHECK(herm == doctest::Approx(potential).epsilon(1e-6));
}

TEST_CASE("nonlinear constant sandwich")
{
  const Grid g(3, 32);
  const auto zero = nonlinear_form_constant(VectorField(g));
  CHECK(zero.lower.value == 0.0);
  CHECK(zero.trace_root.value == 0.0);
  CHECK(zero.sandwich_ok);

  const auto b = VectorField(std::vector<ScalarField>{
      ScalarField::sample(g, [](const Point &x) { return std::sin(2.0 * kPi * x[1]); }),
      ScalarField(g), ScalarField(g)});
  const auto r = nonlinear_form_constant(b);
  CHECK(r.sandwich_ok);
  CHECK(r.lower.value <= r.trace_root.value * (1.0 + 1e-6));
  CHECK(r.restarts == 21);
  MESSAGE("C = " << r.lower.value << ", c = " << r.trace_root.value);
}

TEST_CASE("nonlinear constant is homogeneous of degree one")
{
  const Grid g(2, 32);
  const auto b = gradient(smooth_field(g, 31));
  AscentOptions o;
  o.restarts = 4;
  const auto one = nonlinear_form_constant(b, o);
  const auto three = nonlinear_form_constant(Complex(3.0) * b, o);
  CHECK(three.trace_root.value == doctest::Approx(3.0 * one.trace_root.value).epsilon(1e-8));
  CHECK(three.lower.value == doctest::Approx(3.0 * one.lower.value).epsilon(1e-3));
}

TEST_CASE("local trace constant of Lebesgue measure is the Dirichlet Poincare constant")
{
  const Grid g(3, 32);
  const auto mu = DiscreteMeasure::lebesgue(g, 2.0);
  for (int side : {2, 4, 8})
  {
    const double s = side * g.spacing();
    const auto e = local_trace_constant(mu, Cube{{4, 8, 12}, side});
    CHECK(e.value == doctest::Approx(2.0 * s * s / (3.0 * kPi * kPi)).epsilon(1e-8));
  }
  CHECK(local_trace_constant(DiscreteMeasure(g), Cube{{0, 0, 0}, 4}).value == 0.0);
}
