// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/form_norm.hpp"

#include <algorithm>
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

constexpr Complex I(0.0, 1.0);

// Energy compression and derivative symbols for one grid.
struct Compression
{
  Compression(const Grid &g, Flavor flavor) : grid(g), symbol(g.size())
  {
    for (auto &k : kappa)
    {
      k.assign(g.size(), 0.0);
    }
    for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &k, double k2)
                  {
                    for (int a = 0; a < g.dim(); ++a)
                    {
                      kappa[a][idx] = k[a];
                    }
                    if (flavor == Flavor::homogeneous)
                    {
                      symbol[idx] = k2 > 0.0 ? 1.0 / std::sqrt(k2) : 0.0;
                    }
                    else
                    {
                      symbol[idx] = 1.0 / std::sqrt(1.0 + k2);
                    }
                  });
  }

  CVector compress(const CVector &x) const
  {
    CVector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      y[i] = symbol[i] * x[i];
    }
    return y;
  }

  CVector derivative(const CVector &hat, int axis) const
  {
    CVector y(hat.size());
    for (std::size_t i = 0; i < hat.size(); ++i)
    {
      y[i] = I * kappa[axis][i] * hat[i];
    }
    return y;
  }

  void to_physical(CVector &v) const { fft::inverse(grid, v); }
  void to_spectral(CVector &v) const { fft::forward(grid, v); }

  CVector start(std::uint64_t seed) const
  {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    CVector x(grid.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
      const double re = nd(rng);
      const double im = nd(rng);
      x[i] = symbol[i] * Complex(re, im);
    }
    return x;
  }

  /// Physical field G x scaled to unit energy when ||x|| = 1.
  ScalarField field(const CVector &x) const
  {
    CVector u = compress(x);
    to_physical(u);
    const double s = std::sqrt(static_cast<double>(grid.size()) / grid.cell_volume());
    for (auto &z : u)
    {
      z *= s;
    }
    return ScalarField(grid, std::move(u), false);
  }

  Grid grid;
  std::vector<double> symbol;
  std::array<std::vector<double>, 3> kappa;
};

CVector buffer_of(const ScalarField &f)
{
  for (const Complex &z : f.values())
  {
    if (z != 0.0)
    {
      return CVector(f.values().begin(), f.values().end());
    }
  }
  return {};
}

void multiply_into(const CVector &coef, const CVector &v, CVector &acc, bool conjugate)
{
  for (std::size_t i = 0; i < acc.size(); ++i)
  {
    acc[i] += (conjugate ? std::conj(coef[i]) : coef[i]) * v[i];
  }
}

// G L G in spectral coordinates, L u = div(A grad u) + b . grad u + q u, and its adjoint.
class FormOperator
{
public:
  FormOperator(const Compression &c, const MatrixField &A, const VectorField &b,
               const ScalarField &q)
      : c_(c), dim_(c.grid.dim()), q_(buffer_of(q))
  {
    require_same_grid(c.grid, A.grid(), "form_norm");
    require_same_grid(c.grid, b.grid(), "form_norm");
    require_same_grid(c.grid, q.grid(), "form_norm");
    for (int i = 0; i < dim_; ++i)
    {
      b_.push_back(buffer_of(b[i]));
      for (int j = 0; j < dim_; ++j)
      {
        A_.push_back(buffer_of(A(i, j)));
      }
    }
  }

  bool zero() const
  {
    if (!q_.empty())
    {
      return false;
    }
    for (const auto &v : b_)
    {
      if (!v.empty())
      {
        return false;
      }
    }
    for (const auto &v : A_)
    {
      if (!v.empty())
      {
        return false;
      }
    }
    return true;
  }

  void apply(const CVector &x, CVector &out) const
  {
    const std::size_t n = x.size();
    const CVector w = c_.compress(x);
    std::vector<CVector> dw(dim_);
    for (int j = 0; j < dim_; ++j)
    {
      if (!b_[j].empty() || column_used(j))
      {
        dw[j] = c_.derivative(w, j);
        c_.to_physical(dw[j]);
      }
    }
    CVector s(n, 0.0);
    if (!q_.empty())
    {
      CVector wp(w);
      c_.to_physical(wp);
      multiply_into(q_, wp, s, false);
    }
    for (int j = 0; j < dim_; ++j)
    {
      if (!b_[j].empty())
      {
        multiply_into(b_[j], dw[j], s, false);
      }
    }
    c_.to_spectral(s);
    for (int i = 0; i < dim_; ++i)
    {
      if (!row_used(i))
      {
        continue;
      }
      CVector t(n, 0.0);
      for (int j = 0; j < dim_; ++j)
      {
        if (!A_[i * dim_ + j].empty())
        {
          multiply_into(A_[i * dim_ + j], dw[j], t, false);
        }
      }
      c_.to_spectral(t);
      for (std::size_t k = 0; k < n; ++k)
      {
        s[k] += I * c_.kappa[i][k] * t[k];
      }
    }
    out = c_.compress(s);
  }

  void apply_adjoint(const CVector &y, CVector &out) const
  {
    const std::size_t n = y.size();
    const CVector zh = c_.compress(y);
    CVector s(n, 0.0);
    bool need_z = !q_.empty();
    for (const auto &v : b_)
    {
      need_z = need_z || !v.empty();
    }
    if (need_z)
    {
      CVector z(zh);
      c_.to_physical(z);
      if (!q_.empty())
      {
        CVector t(n, 0.0);
        multiply_into(q_, z, t, true);
        c_.to_spectral(t);
        for (std::size_t k = 0; k < n; ++k)
        {
          s[k] += t[k];
        }
      }
      for (int j = 0; j < dim_; ++j)
      {
        if (b_[j].empty())
        {
          continue;
        }
        CVector t(n, 0.0);
        multiply_into(b_[j], z, t, true);
        c_.to_spectral(t);
        for (std::size_t k = 0; k < n; ++k)
        {
          s[k] -= I * c_.kappa[j][k] * t[k];
        }
      }
    }
    std::vector<CVector> dz(dim_);
    for (int i = 0; i < dim_; ++i)
    {
      if (row_used(i))
      {
        dz[i] = c_.derivative(zh, i);
        c_.to_physical(dz[i]);
      }
    }
    for (int j = 0; j < dim_; ++j)
    {
      if (!column_used(j))
      {
        continue;
      }
      CVector t(n, 0.0);
      for (int i = 0; i < dim_; ++i)
      {
        if (!A_[i * dim_ + j].empty())
        {
          multiply_into(A_[i * dim_ + j], dz[i], t, true);
        }
      }
      c_.to_spectral(t);
      for (std::size_t k = 0; k < n; ++k)
      {
        s[k] += I * c_.kappa[j][k] * t[k];
      }
    }
    out = c_.compress(s);
  }

private:
  bool column_used(int j) const
  {
    for (int i = 0; i < dim_; ++i)
    {
      if (!A_[i * dim_ + j].empty())
      {
        return true;
      }
    }
    return false;
  }
  bool row_used(int i) const
  {
    for (int j = 0; j < dim_; ++j)
    {
      if (!A_[i * dim_ + j].empty())
      {
        return true;
      }
    }
    return false;
  }

  const Compression &c_;
  int dim_;
  std::vector<CVector> A_;
  std::vector<CVector> b_;
  CVector q_;
};

// K u = 1/2 b . grad u + 1/2 div(b u), compressed.
class CommutatorOperator
{
public:
  CommutatorOperator(const Compression &c, const VectorField &b) : c_(c)
  {
    require_same_grid(c.grid, b.grid(), "commutator_norm");
    for (int j = 0; j < c.grid.dim(); ++j)
    {
      b_.push_back(buffer_of(b[j]));
    }
  }

  bool zero() const
  {
    return std::all_of(b_.begin(), b_.end(), [](const CVector &v) { return v.empty(); });
  }

  void apply(const CVector &x, CVector &out) const { half_sum(x, out, false); }
  void apply_adjoint(const CVector &y, CVector &out) const
  {
    half_sum(y, out, true);
    for (auto &z : out)
    {
      z = -z;
    }
  }

private:
  // 1/2 (b' . grad + div(b' .)) with b' = b or conj(b); the adjoint is minus the conjugate
  // version.
  void half_sum(const CVector &x, CVector &out, bool conjugate) const
  {
    const std::size_t n = x.size();
    const CVector w = c_.compress(x);
    CVector wp(w);
    c_.to_physical(wp);
    CVector s(n, 0.0);
    CVector flux(n, 0.0);
    for (std::size_t j = 0; j < b_.size(); ++j)
    {
      if (b_[j].empty())
      {
        continue;
      }
      CVector dw = c_.derivative(w, static_cast<int>(j));
      c_.to_physical(dw);
      multiply_into(b_[j], dw, s, conjugate);
      CVector t(n, 0.0);
      multiply_into(b_[j], wp, t, conjugate);
      c_.to_spectral(t);
      for (std::size_t k = 0; k < n; ++k)
      {
        flux[k] += I * c_.kappa[j][k] * t[k];
      }
    }
    c_.to_spectral(s);
    for (std::size_t k = 0; k < n; ++k)
    {
      s[k] = 0.5 * (s[k] + flux[k]);
    }
    out = c_.compress(s);
  }

  const Compression &c_;
  std::vector<CVector> b_;
};

FormEstimate estimate_from(const EigenResult &r, bool square_root)
{
  FormEstimate e;
  e.value = square_root ? std::sqrt(std::max(r.value, 0.0)) : r.value;
  e.method = r.method;
  e.iterations = r.iterations;
  e.residual = r.residual;
  e.converged = r.converged;
  e.monotone = r.monotone();
  return e;
}

void add_scaled(CVector &acc, const CVector &v, double s)
{
  for (std::size_t i = 0; i < acc.size(); ++i)
  {
    acc[i] += s * v[i];
  }
}

template <typename Op>
FormEstimate bilinear_norm(const Compression &c, const Op &op, FormPart part,
                           const FormOptions &options)
{
  // The applied map M (R, its Hermitian part, or its skew part) and the PSD square M* M.
  auto apply_part = [&](const CVector &x, CVector &out)
  {
    if (part == FormPart::full)
    {
      op.apply(x, out);
      return;
    }
    CVector a;
    CVector b;
    op.apply(x, a);
    op.apply_adjoint(x, b);
    const double sign = part == FormPart::hermitian ? 1.0 : -1.0;
    out.assign(x.size(), 0.0);
    add_scaled(out, a, 0.5);
    add_scaled(out, b, 0.5 * sign);
  };
  auto apply_part_adjoint = [&](const CVector &y, CVector &out)
  {
    if (part == FormPart::full)
    {
      op.apply_adjoint(y, out);
      return;
    }
    apply_part(y, out);
    if (part == FormPart::skew)
    {
      for (auto &z : out)
      {
        z = -z;
      }
    }
  };

  FormEstimate e;
  e.method = options.eigen.method;
  if (op.zero())
  {
    e.witness = {c.field(c.start(options.seed)), c.field(c.start(options.seed + 1))};
    return e;
  }
  const LinearMap square = [&](const CVector &x, CVector &out)
  {
    CVector y;
    apply_part(x, y);
    apply_part_adjoint(y, out);
  };
  const EigenResult r = top_eigenpair(square, c.start(options.seed), options.eigen);
  e = estimate_from(r, true);
  CVector image;
  apply_part(r.vector, image);
  const double ni = norm(image);
  if (ni > 0.0)
  {
    for (auto &z : image)
    {
      z /= ni;
    }
  }
  e.witness = {c.field(r.vector), c.field(ni > 0.0 ? image : r.vector)};
  return e;
}

}  // namespace

FormEstimate trace_constant(const DiscreteMeasure &mu, Flavor flavor, const FormOptions &options)
{
  const Grid &g = mu.grid();
  const Compression c(g, flavor);
  const std::vector<double> rho = mu.density().real_values();
  FormEstimate e;
  e.method = options.eigen.method;
  if (mu.is_zero())
  {
    e.witness = {c.field(c.start(options.seed))};
    return e;
  }
  const LinearMap op = [&](const CVector &x, CVector &out)
  {
    CVector w = c.compress(x);
    c.to_physical(w);
    for (std::size_t i = 0; i < w.size(); ++i)
    {
      w[i] *= rho[i];
    }
    c.to_spectral(w);
    out = c.compress(w);
  };
  const EigenResult r = top_eigenpair(op, c.start(options.seed), options.eigen);
  e = estimate_from(r, false);
  e.witness = {c.field(r.vector)};
  return e;
}

FormEstimate form_norm(const MatrixField &A, const VectorField &b, const ScalarField &q,
                       Flavor flavor, const FormOptions &options)
{
  return form_part_norm(A, b, q, flavor, FormPart::full, options);
}

FormEstimate form_part_norm(const MatrixField &A, const VectorField &b, const ScalarField &q,
                            Flavor flavor, FormPart part, const FormOptions &options)
{
  const Compression c(q.grid(), flavor);
  const FormOperator op(c, A, b, q);
  return bilinear_norm(c, op, part, options);
}

FormEstimate commutator_norm(const VectorField &b, Flavor flavor, const FormOptions &options)
{
  const Compression c(b.grid(), flavor);
  const CommutatorOperator op(c, b);
  return bilinear_norm(c, op, FormPart::full, options);
}

namespace
{

struct AscentState
{
  CVector x;
  double value = 0.0;
  CVector gradient;
};

// f(x) = int |b . grad u| |u| / ||grad u||^2 for u = G x, and its gradient on the unit sphere.
class NonlinearFunctional
{
public:
  NonlinearFunctional(const Compression &c, const VectorField &b, double smoothing)
      : c_(c), eps2_(smoothing * smoothing)
  {
    for (int j = 0; j < c.grid.dim(); ++j)
    {
      b_.push_back(buffer_of(b[j]));
    }
  }

  void evaluate(AscentState &s, bool with_gradient) const
  {
    const std::size_t n = s.x.size();
    const double nx2 = std::real(dot(s.x, s.x));
    const CVector w = c_.compress(s.x);
    CVector u(w);
    c_.to_physical(u);
    std::vector<CVector> du(b_.size());
    CVector beta(n, 0.0);
    for (std::size_t j = 0; j < b_.size(); ++j)
    {
      if (b_[j].empty())
      {
        continue;
      }
      du[j] = c_.derivative(w, static_cast<int>(j));
      c_.to_physical(du[j]);
      multiply_into(b_[j], du[j], beta, false);
    }
    std::vector<double> phi(n);
    std::vector<double> amp(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
      phi[i] = std::sqrt(std::norm(beta[i]) + eps2_);
      amp[i] = std::sqrt(std::norm(u[i]) + eps2_);
      sum += phi[i] * amp[i];
    }
    const double total = static_cast<double>(n);
    s.value = total * sum / nx2;
    if (!with_gradient)
    {
      return;
    }
    CVector grad(n, 0.0);
    for (std::size_t j = 0; j < b_.size(); ++j)
    {
      if (b_[j].empty())
      {
        continue;
      }
      CVector t(n);
      for (std::size_t i = 0; i < n; ++i)
      {
        t[i] = std::conj(b_[j][i]) * (amp[i] / phi[i]) * beta[i];
      }
      c_.to_spectral(t);
      for (std::size_t k = 0; k < n; ++k)
      {
        grad[k] -= I * c_.kappa[j][k] * t[k];
      }
    }
    CVector t(n);
    for (std::size_t i = 0; i < n; ++i)
    {
      t[i] = (phi[i] / amp[i]) * u[i];
    }
    c_.to_spectral(t);
    for (std::size_t k = 0; k < n; ++k)
    {
      grad[k] += t[k];
    }
    // d sum = Re <grad/N, dx>; f = N sum / |x|^2.
    s.gradient = c_.compress(grad);
    for (std::size_t k = 0; k < n; ++k)
    {
      s.gradient[k] = (s.gradient[k] - 2.0 * s.value * s.x[k]) / nx2;
    }
  }

private:
  const Compression &c_;
  double eps2_;
  std::vector<CVector> b_;
};

CVector band_limited_start(const Compression &c, int band, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const Grid &g = c.grid;
  CVector x(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i)
  {
    const Index k = g.coords(i);
    bool inside = true;
    for (int a = 0; a < g.dim(); ++a)
    {
      inside = inside && std::abs(g.frequency(k[a])) <= band;
    }
    const double re = nd(rng);
    const double im = nd(rng);
    if (inside)
    {
      x[i] = c.symbol[i] * Complex(re, im);
    }
  }
  return x;
}

void normalize(CVector &x)
{
  const double n = norm(x);
  for (auto &z : x)
  {
    z /= n;
  }
}

// Projected ascent on the unit sphere with an adaptive step.
AscentState ascend(const NonlinearFunctional &f, CVector x, int max_iterations, bool &exhausted)
{
  AscentState s;
  normalize(x);
  s.x = std::move(x);
  f.evaluate(s, true);
  double step = 0.5;
  int quiet = 0;
  exhausted = true;
  for (int it = 0; it < max_iterations; ++it)
  {
    const double gn = norm(s.gradient);
    if (gn == 0.0)
    {
      exhausted = false;
      break;
    }
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries)
    {
      AscentState t;
      t.x = s.x;
      add_scaled(t.x, s.gradient, step / gn);
      normalize(t.x);
      f.evaluate(t, false);
      if (t.value > s.value)
      {
        const double gain = (t.value - s.value) / s.value;
        quiet = gain < 1e-7 ? quiet + 1 : 0;
        s.x = std::move(t.x);
        f.evaluate(s, true);
        step = std::min(step * 1.5, 2.0);
        improved = true;
        break;
      }
      step *= 0.3;
    }
    if (!improved || quiet >= 5)
    {
      exhausted = false;
      break;
    }
  }
  return s;
}

}  // namespace

NonlinearConstant nonlinear_form_constant(const VectorField &b, const AscentOptions &options)
{
  const Grid &g = b.grid();
  NonlinearConstant out;
  const ScalarField b2 = b.squared_modulus();
  const FormEstimate trace = trace_constant(DiscreteMeasure::from_density(b2),
                                            Flavor::homogeneous, {.seed = options.seed});
  out.trace_root = trace;
  out.trace_root.value = std::sqrt(trace.value);
  out.lower.method = EigenMethod::subspace_sweep;
  if (trace.value == 0.0)
  {
    out.lower.witness = trace.witness;
    return out;
  }

  const Compression c(g, Flavor::homogeneous);
  const NonlinearFunctional f(c, b, options.smoothing);
  // Starts: the trace extremal, then band-limited random fields.
  std::vector<CVector> starts;
  {
    CVector x = spectrum(trace.witness.front());
    for (std::size_t k = 0; k < x.size(); ++k)
    {
      x[k] = c.symbol[k] > 0.0 ? x[k] / c.symbol[k] : 0.0;
    }
    starts.push_back(std::move(x));
  }
  for (int r = 0; r < options.restarts; ++r)
  {
    starts.push_back(band_limited_start(c, options.band, options.seed * 7919 + r));
  }
  AscentState best;
  best.value = -1.0;
  int total_iterations = 0;
  for (auto &x : starts)
  {
    if (norm(x) == 0.0)
    {
      continue;
    }
    bool exhausted = false;
    AscentState s = ascend(f, std::move(x), options.max_iterations, exhausted);
    total_iterations += options.max_iterations;
    ++out.restarts;
    if (s.value > best.value)
    {
      best = std::move(s);
      out.budget_exhausted = exhausted;
    }
  }
  out.lower.value = std::max(best.value, 0.0);
  out.lower.iterations = total_iterations;
  out.lower.converged = !out.budget_exhausted;
  out.lower.residual = norm(best.gradient) / std::max(best.value, 1e-300);
  out.lower.witness = {c.field(best.x)};
  const double n = g.dim();
  out.sandwich_ok = out.lower.value <= out.trace_root.value * 1.05 &&
                    out.trace_root.value <= 2.0 * std::sqrt(n) * out.lower.value * 1.25;
  return out;
}

FormEstimate local_trace_constant(const DiscreteMeasure &mu, const Cube &cube,
                                  const FormOptions &options)
{
  const Grid &g = mu.grid();
  const int d = g.dim();
  const int m = cube.side;
  if (m < 1 || m > g.points_per_axis())
  {
    throw std::invalid_argument("cube side out of range");
  }
  std::size_t count = 1;
  for (int a = 0; a < d; ++a)
  {
    count *= static_cast<std::size_t>(m);
  }
  // Density on the cube cells and the inverse square root of the Dirichlet eigenvalues.
  std::vector<double> rho(count);
  std::vector<double> weight(count);
  const double side = m * g.spacing();
  const double hd = g.cell_volume();
  bool any = false;
  for (std::size_t i = 0; i < count; ++i)
  {
    Index local{0, 0, 0};
    std::size_t r = i;
    for (int a = d - 1; a >= 0; --a)
    {
      local[a] = static_cast<int>(r % m);
      r /= m;
    }
    Index global = cube.corner;
    double lam = 0.0;
    for (int a = 0; a < d; ++a)
    {
      global[a] += local[a];
      const double k = std::numbers::pi * (local[a] + 1) / side;
      lam += k * k;
    }
    rho[i] = mu[g.flat(global)] / hd;
    any = any || rho[i] > 0.0;
    weight[i] = 1.0 / std::sqrt(lam);
  }
  FormEstimate e;
  e.method = options.eigen.method;
  if (!any)
  {
    return e;
  }
  auto smooth = [&](std::vector<double> &v)
  {
    fft::dst2(d, m, v);
    for (std::size_t i = 0; i < count; ++i)
    {
      v[i] *= weight[i];
    }
    fft::dst3_normalized(d, m, v);
  };
  const LinearMap op = [&](const CVector &x, CVector &out)
  {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i)
    {
      v[i] = x[i].real();
    }
    smooth(v);
    for (std::size_t i = 0; i < count; ++i)
    {
      v[i] *= rho[i];
    }
    smooth(v);
    out.assign(count, 0.0);
    for (std::size_t i = 0; i < count; ++i)
    {
      out[i] = v[i];
    }
  };
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> ud(0.5, 1.5);
  CVector start(count);
  for (auto &z : start)
  {
    z = ud(rng);
  }
  const EigenResult r = top_eigenpair(op, std::move(start), options.eigen);
  e = estimate_from(r, false);
  // Witness: G x embedded in the torus, zero outside the cube.
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i)
  {
    v[i] = r.vector[i].real();
  }
  smooth(v);
  std::vector<double> full(g.size(), 0.0);
  for (std::size_t i = 0; i < count; ++i)
  {
    Index global = cube.corner;
    std::size_t rr = i;
    for (int a = d - 1; a >= 0; --a)
    {
      global[a] += static_cast<int>(rr % m);
      rr /= m;
    }
    full[g.flat(global)] = v[i];
  }
  e.witness = {ScalarField(g, full)};
  return e;
}

}  // namespace formbound
