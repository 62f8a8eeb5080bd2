// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/eigen_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace formbound
{

namespace
{

using Complex = std::complex<double>;

void axpy(Complex a, const CVector &x, CVector &y)
{
  for (std::size_t i = 0; i < y.size(); ++i)
  {
    y[i] += a * x[i];
  }
}

void scale(CVector &x, double s)
{
  for (auto &z : x)
  {
    z *= s;
  }
}

double rayleigh(const CVector &x, const CVector &ax)
{
  return dot(x, ax).real() / dot(x, x).real();
}

double residual_of(const CVector &x, const CVector &ax, double lambda)
{
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    r += std::norm(ax[i] - lambda * x[i]);
  }
  const double denom = std::abs(lambda) * norm(x);
  return denom > 0.0 ? std::sqrt(r) / denom : 0.0;
}

bool converged_now(const EigenResult &r, double prev, const EigenOptions &o)
{
  const double change = std::abs(r.value - prev) / std::max(std::abs(r.value), 1e-300);
  return change <= o.value_tolerance && r.residual <= o.residual_tolerance;
}

EigenResult power(const LinearMap &op, CVector x, const EigenOptions &o)
{
  EigenResult res;
  res.method = EigenMethod::power_iteration;
  CVector ax(x.size());
  scale(x, 1.0 / norm(x));
  op(x, ax);
  res.value = rayleigh(x, ax);
  double prev = res.value;
  for (int it = 1; it <= o.max_iterations; ++it)
  {
    const double n = norm(ax);
    if (n == 0.0)
    {
      res.value = 0.0;
      res.converged = true;
      break;
    }
    x = ax;
    scale(x, 1.0 / n);
    op(x, ax);
    res.value = rayleigh(x, ax);
    res.history.push_back(res.value);
    res.residual = residual_of(x, ax, res.value);
    res.iterations = it;
    if (converged_now(res, prev, o))
    {
      res.converged = true;
      break;
    }
    prev = res.value;
  }
  res.vector = std::move(x);
  return res;
}

// Rayleigh-Ritz over span{x, r, p} each iteration, with explicit orthonormalization.
EigenResult sweep(const LinearMap &op, CVector x, const EigenOptions &o)
{
  EigenResult res;
  res.method = EigenMethod::subspace_sweep;
  const std::size_t n = x.size();
  scale(x, 1.0 / norm(x));
  CVector ax(n);
  op(x, ax);
  res.value = rayleigh(x, ax);
  double prev = res.value;
  CVector p;
  CVector ap;

  for (int it = 1; it <= o.max_iterations; ++it)
  {
    CVector r(ax);
    axpy(-res.value, x, r);
    if (norm(r) == 0.0)
    {
      res.residual = 0.0;
      res.converged = true;
      res.history.push_back(res.value);
      res.iterations = it;
      break;
    }
    CVector ar(n);
    op(r, ar);

    std::vector<CVector *> basis{&x, &r};
    std::vector<CVector *> images{&ax, &ar};
    if (!p.empty())
    {
      basis.push_back(&p);
      images.push_back(&ap);
    }
    // Modified Gram-Schmidt, carrying the images along; nearly dependent directions are
    // dropped.
    std::vector<CVector> q;
    std::vector<CVector> aq;
    for (std::size_t k = 0; k < basis.size(); ++k)
    {
      CVector v = *basis[k];
      CVector av = *images[k];
      const double before = norm(v);
      for (int pass = 0; pass < 2; ++pass)
      {
        for (std::size_t j = 0; j < q.size(); ++j)
        {
          const Complex c = dot(q[j], v);
          axpy(-c, q[j], v);
          axpy(-c, aq[j], av);
        }
      }
      const double after = norm(v);
      if (after <= 1e-10 * before || after == 0.0)
      {
        continue;
      }
      scale(v, 1.0 / after);
      scale(av, 1.0 / after);
      q.push_back(std::move(v));
      aq.push_back(std::move(av));
    }

    const int m = static_cast<int>(q.size());
    Eigen::MatrixXcd h(m, m);
    for (int i = 0; i < m; ++i)
    {
      for (int j = 0; j < m; ++j)
      {
        h(i, j) = dot(q[i], aq[j]);
      }
    }
    h = 0.5 * (h + h.adjoint()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXcd c = es.eigenvectors().col(m - 1);

    CVector xn(n);
    CVector axn(n);
    CVector pn(n);
    CVector apn(n);
    for (int j = 0; j < m; ++j)
    {
      axpy(c(j), q[j], xn);
      axpy(c(j), aq[j], axn);
      if (j > 0)
      {
        axpy(c(j), q[j], pn);
        axpy(c(j), aq[j], apn);
      }
    }
    const double nx = norm(xn);
    scale(xn, 1.0 / nx);
    scale(axn, 1.0 / nx);
    x = std::move(xn);
    ax = std::move(axn);
    // Refresh the image every few steps so rounding in the recurrences cannot accumulate.
    if (it % 16 == 0)
    {
      op(x, ax);
    }
    p = std::move(pn);
    ap = std::move(apn);

    res.value = rayleigh(x, ax);
    res.history.push_back(res.value);
    res.residual = residual_of(x, ax, res.value);
    res.iterations = it;
    if (converged_now(res, prev, o))
    {
      op(x, ax);
      res.value = rayleigh(x, ax);
      res.residual = residual_of(x, ax, res.value);
      if (res.residual <= o.residual_tolerance)
      {
        res.converged = true;
        break;
      }
    }
    prev = res.value;
  }
  res.vector = std::move(x);
  return res;
}

}  // namespace

double norm(const CVector &v)
{
  double s = 0.0;
  for (const auto &z : v)
  {
    s += std::norm(z);
  }
  return std::sqrt(s);
}

std::complex<double> dot(const CVector &a, const CVector &b)
{
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    s += std::conj(a[i]) * b[i];
  }
  return s;
}

bool EigenResult::monotone(double slack) const
{
  for (std::size_t i = 1; i < history.size(); ++i)
  {
    if (history[i] < history[i - 1] - slack * std::abs(history[i - 1]))
    {
      return false;
    }
  }
  return true;
}

EigenResult top_eigenpair(const LinearMap &op, CVector start, const EigenOptions &options)
{
  if (start.empty())
  {
    throw std::invalid_argument("empty start vector");
  }
  if (norm(start) == 0.0)
  {
    throw std::invalid_argument("zero start vector");
  }
  CVector probe(start.size());
  op(start, probe);
  if (norm(probe) == 0.0)
  {
    EigenResult r;
    r.method = options.method;
    r.converged = true;
    r.vector = std::move(start);
    return r;
  }
  return options.method == EigenMethod::power_iteration ? power(op, std::move(start), options)
                                                        : sweep(op, std::move(start), options);
}

}  // namespace formbound
