// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/hodge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "formbound/reduce.hpp"
#include "formbound/spectral.hpp"

namespace formbound
{

namespace
{

constexpr Complex I(0.0, 1.0);

struct Spectra
{
  std::vector<std::vector<Complex>> hat;
  std::vector<bool> real;
};

Spectra spectra_of(const VectorField &b)
{
  Spectra s;
  for (const auto &comp : b.components())
  {
    s.hat.push_back(spectrum(comp));
    s.real.push_back(comp.is_real());
  }
  return s;
}

bool all_real(const Spectra &s)
{
  return std::all_of(s.real.begin(), s.real.end(), [](bool r) { return r; });
}

void require_finite(const VectorField &b)
{
  if (!b.all_finite())
  {
    throw std::invalid_argument("decomposition input contains non-finite samples");
  }
}

// weight(k2) is the scalar inverse symbol: 1/k^2 (zero mode dropped) or 1/(1 + k^2).
template <typename Weight>
VectorField gradient_part(const Grid &g, const Spectra &s, double identity_weight,
                          Weight weight)
{
  const int n = g.dim();
  std::vector<ScalarField> comps;
  for (int i = 0; i < n; ++i)
  {
    std::vector<Complex> out(g.size());
    for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &k, double k2)
                  {
                    Complex kb = 0.0;
                    for (int j = 0; j < n; ++j)
                    {
                      kb += k[j] * s.hat[j][idx];
                    }
                    out[idx] = weight(k2) * (k[i] * kb + identity_weight * s.hat[i][idx]);
                  });
    comps.push_back(from_spectrum(g, std::move(out), s.real[i]));
  }
  return VectorField(std::move(comps));
}

// F_ij = sign * weight * i (k_j b_i - k_i b_j), antisymmetrized.
template <typename Weight>
MatrixField stream_part(const Grid &g, const Spectra &s, double sign, Weight weight)
{
  const int n = g.dim();
  std::vector<ScalarField> entries(n * n, ScalarField(g));
  const bool real = all_real(s);
  for (int i = 0; i < n; ++i)
  {
    for (int j = i + 1; j < n; ++j)
    {
      std::vector<Complex> out(g.size());
      for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &k, double k2)
                    {
                      out[idx] =
                        sign * weight(k2) * I * (k[j] * s.hat[i][idx] - k[i] * s.hat[j][idx]);
                    });
      entries[i * n + j] = from_spectrum(g, std::move(out), real);
      entries[j * n + i] = -1.0 * entries[i * n + j];
    }
  }
  return MatrixField::antisymmetrize(MatrixField(n, std::move(entries)));
}

double vector_residual(const VectorField &b, const std::array<Complex, 3> &mean,
                       const VectorField &c, const MatrixField &F)
{
  VectorField r = b - c - row_divergence(F);
  for (int i = 0; i < r.dim(); ++i)
  {
    for (Complex &z : r[i].values())
    {
      z -= mean[i];
    }
  }
  return max_abs(r);
}

double inverse_laplacian_weight(double k2)
{
  return k2 > 0.0 ? 1.0 / k2 : 0.0;
}

double bessel_weight(double k2)
{
  return 1.0 / (1.0 + k2);
}

template <int N>
double sup_operator_norm(const MatrixField &m)
{
  using Mat = Eigen::Matrix<Complex, N, N>;
  double sup = 0.0;
  Mat a;
  for (std::size_t x = 0; x < m.grid().size(); ++x)
  {
    for (int i = 0; i < N; ++i)
    {
      for (int j = 0; j < N; ++j)
      {
        a(i, j) = m(i, j)[x];
      }
    }
    const Mat gram = a.adjoint() * a;
    const Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
    sup = std::max(sup, std::sqrt(std::max(0.0, es.eigenvalues()(N - 1))));
  }
  return sup;
}

}  // namespace

DecompositionResult hodge_decompose(const VectorField &b)
{
  return hodge_decompose(b, ScalarField(b.grid()));
}

DecompositionResult hodge_decompose(const VectorField &b, const ScalarField &q)
{
  require_finite(b);
  if (!q.all_finite())
  {
    throw std::invalid_argument("decomposition input contains non-finite samples");
  }
  const Grid &g = b.grid();
  require_same_grid(g, q.grid(), "hodge_decompose");
  const Spectra s = spectra_of(b);

  std::array<Complex, 3> mean{};
  for (int i = 0; i < g.dim(); ++i)
  {
    mean[i] = s.hat[i][0] / static_cast<double>(g.size());
  }
  // grad lap^-1 div b has symbol k_i k_j / k^2; lap^-1 curl b has -i (k_j b_i - k_i b_j)/k^2.
  VectorField c = gradient_part(g, s, 0.0, inverse_laplacian_weight);
  MatrixField F = stream_part(g, s, -1.0, inverse_laplacian_weight);

  auto qhat = spectrum(q);
  const Complex q_mean = qhat[0] / static_cast<double>(g.size());
  std::vector<ScalarField> hcomps;
  for (int i = 0; i < g.dim(); ++i)
  {
    std::vector<Complex> out(g.size());
    for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &k, double k2)
                  { out[idx] = -I * k[i] * inverse_laplacian_weight(k2) * qhat[idx]; });
    hcomps.push_back(from_spectrum(g, std::move(out), q.is_real()));
  }

  DecompositionResult r{mean, q_mean, std::move(c), std::move(F),
                        VectorField(std::move(hcomps)), ScalarField(g), 0.0};
  r.residual = vector_residual(b, r.mean_part, r.c, r.F);
  return r;
}

DecompositionResult inhomogeneous_decompose(const VectorField &b, const ScalarField &q)
{
  require_finite(b);
  if (!q.all_finite())
  {
    throw std::invalid_argument("decomposition input contains non-finite samples");
  }
  const Grid &g = b.grid();
  require_same_grid(g, q.grid(), "inhomogeneous_decompose");
  const Spectra s = spectra_of(b);

  VectorField c = gradient_part(g, s, 1.0, bessel_weight);
  MatrixField F = stream_part(g, s, -1.0, bessel_weight);

  const auto qhat = spectrum(q);
  std::vector<ScalarField> hcomps;
  for (int i = 0; i < g.dim(); ++i)
  {
    std::vector<Complex> out(g.size());
    for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &k, double k2)
                  { out[idx] = -I * k[i] * bessel_weight(k2) * qhat[idx]; });
    hcomps.push_back(from_spectrum(g, std::move(out), q.is_real()));
  }
  ScalarField gamma = apply_spectral(SpectralKind::bessel_inv, q);

  DecompositionResult r{{}, 0.0, std::move(c), std::move(F), VectorField(std::move(hcomps)),
                        std::move(gamma), 0.0};
  const double rb = vector_residual(b, r.mean_part, r.c, r.F);
  const double rq = max_abs(q - divergence(r.h) - r.gamma);
  r.residual = std::max(rb, rq);
  return r;
}

VectorField project(Projection which, const VectorField &b)
{
  require_finite(b);
  const Grid &g = b.grid();
  const Spectra s = spectra_of(b);
  const int n = g.dim();
  std::vector<ScalarField> comps;
  for (int i = 0; i < n; ++i)
  {
    std::vector<Complex> out(g.size());
    for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &k, double k2)
                  {
                    if (k2 == 0.0)
                    {
                      return;
                    }
                    Complex kb = 0.0;
                    for (int j = 0; j < n; ++j)
                    {
                      kb += k[j] * s.hat[j][idx];
                    }
                    const Complex grad_part = k[i] * kb / k2;
                    out[idx] = which == Projection::P ? grad_part : s.hat[i][idx] - grad_part;
                  });
    comps.push_back(from_spectrum(g, std::move(out), all_real(s)));
  }
  return VectorField(std::move(comps));
}

PrincipalReduction reduce_principal(const MatrixField &A, const VectorField &b)
{
  require_same_grid(A.grid(), b.grid(), "reduce_principal");
  const int n = A.dim();
  MatrixField sym = A.symmetric_part();
  const MatrixField skew = MatrixField::antisymmetrize(A);
  VectorField b1 = b - row_divergence(skew);

  const double sup = n == 2 ? sup_operator_norm<2>(sym) : sup_operator_norm<3>(sym);
  return {std::move(sym), std::move(b1), sup};
}

}  // namespace formbound
