// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "formbound/fft.hpp"
#include "formbound/lattice_sums.hpp"
#include "formbound/reduce.hpp"
#include "formbound/spectral.hpp"

namespace formbound
{

namespace
{

void finish(MeasureReport &rep)
{
  rep.pass = rep.constant <= rep.threshold;
}

std::vector<Complex> ball_indicator_spectrum(const Grid &g, double r)
{
  std::vector<Complex> k(g.size());
  const Point origin{0.0, 0.0, 0.0};
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    if (g.torus_distance(g.position(g.coords(x)), origin) <= r)
    {
      k[x] = 1.0;
    }
  }
  fft::forward(g, k);
  return k;
}

std::vector<double> convolve_with_ball(const Grid &g, const std::vector<Complex> &weights_hat,
                                       double r)
{
  auto k = ball_indicator_spectrum(g, r);
  for (std::size_t i = 0; i < k.size(); ++i)
  {
    k[i] *= weights_hat[i];
  }
  fft::inverse(g, k);
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < out.size(); ++i)
  {
    out[i] = k[i].real();
  }
  return out;
}

std::vector<Complex> spectrum_of(const Grid &g, std::span<const double> w)
{
  std::vector<Complex> hat(w.begin(), w.end());
  fft::forward(g, hat);
  return hat;
}

void check_radii(std::span<const double> radii)
{
  if (radii.empty())
  {
    throw std::invalid_argument("empty radius list");
  }
  for (double r : radii)
  {
    if (!(r > 0.0))
    {
      throw std::invalid_argument("radii must be positive");
    }
  }
}

// Ball-sum sup of scale(r) * int_{B_r(x)} weights over all centers.
template <typename Scale>
MeasureReport ball_sup(const Grid &g, std::span<const double> weights,
                       std::span<const double> radii, Scale scale)
{
  check_radii(radii);
  MeasureReport rep;
  const auto hat = spectrum_of(g, weights);
  for (double r : radii)
  {
    const auto sums = convolve_with_ball(g, hat, r);
    const auto it = std::max_element(sums.begin(), sums.end());
    const double value = std::max(0.0, *it) * scale(r);
    if (value > rep.constant || rep.witness.kind == Witness::Kind::none)
    {
      rep.constant = value;
      rep.witness = {Witness::Kind::ball,
                     g.coords(static_cast<std::size_t>(it - sums.begin())), 0, r};
    }
  }
  return rep;
}

enum class PotentialKind
{
  riesz,
  bessel
};

// Spectrum of the order-one potential of a density, with the matched zero mode for riesz.
std::vector<Complex> potential_spectrum(const Grid &g, std::vector<Complex> density_hat,
                                        PotentialKind kind)
{
  const double zero_mode =
    kind == PotentialKind::riesz ? matched_zero_mode(g, 1) * g.volume() : 1.0;
  for_each_mode(g, [&](std::size_t idx, const std::array<double, 3> &, double k2)
                {
                  if (k2 == 0.0)
                  {
                    density_hat[idx] *= zero_mode;
                    return;
                  }
                  density_hat[idx] *= kind == PotentialKind::riesz
                                        ? 1.0 / std::sqrt(k2)
                                        : 1.0 / std::sqrt(1.0 + k2);
                });
  return density_hat;
}

ScalarField potential(const ScalarField &density, PotentialKind kind)
{
  if (kind == PotentialKind::riesz)
  {
    return matched_riesz_potential(density, 1);
  }
  return apply_spectral(SpectralKind::bessel_riesz_half, density);
}

MeasureReport ball_energy(const DiscreteMeasure &mu, std::span<const double> radii,
                          double threshold, PotentialKind kind, const char *name)
{
  check_radii(radii);
  const Grid &g = mu.grid();
  MeasureReport rep;
  rep.test = name;
  rep.threshold = threshold;
  rep.sampled = true;
  const double hd = g.cell_volume();
  const auto n = static_cast<double>(g.size());
  for (const Index &center : ball_centers(g))
  {
    const Point c = g.position(center);
    std::vector<double> dist(g.size());
    for (std::size_t x = 0; x < g.size(); ++x)
    {
      dist[x] = g.torus_distance(g.position(g.coords(x)), c);
    }
    for (double r : radii)
    {
      std::vector<Complex> restricted(g.size());
      double mass = 0.0;
      for (std::size_t x = 0; x < g.size(); ++x)
      {
        if (mu[x] > 0.0 && dist[x] <= r)
        {
          restricted[x] = mu[x] / hd;
          mass += mu[x];
        }
      }
      if (mass <= 0.0)
      {
        continue;
      }
      fft::forward(g, restricted);
      const auto pot = potential_spectrum(g, std::move(restricted), kind);
      double s = 0.0;
      for (const Complex &z : pot)
      {
        s += std::norm(z);
      }
      // Parseval: int |P|^2 = (h^d / N) sum |P_hat|^2.
      const double value = s * hd / n / mass;
      if (value > rep.constant || rep.witness.kind == Witness::Kind::none)
      {
        rep.constant = value;
        rep.witness = {Witness::Kind::ball, center, 0, r};
      }
    }
  }
  finish(rep);
  return rep;
}

MeasureReport pointwise(const DiscreteMeasure &mu, double threshold, PotentialKind kind,
                        const char *name)
{
  MeasureReport rep;
  rep.test = name;
  rep.threshold = threshold;
  if (mu.is_zero())
  {
    finish(rep);
    return rep;
  }
  const ScalarField p = potential(mu.density(), kind);
  ScalarField p2 = p;
  for (Complex &z : p2.values())
  {
    z = std::norm(z);
  }
  p2.make_real();
  const ScalarField num = potential(p2, kind);
  double peak = 0.0;
  for (Complex z : p.values())
  {
    peak = std::max(peak, z.real());
  }
  const double tol = 1e-12 * peak;
  for (std::size_t x = 0; x < p.size(); ++x)
  {
    const double d = p[x].real();
    if (d > tol)
    {
      const double v = num[x].real() / d;
      if (v > rep.constant || rep.witness.kind == Witness::Kind::none)
      {
        rep.constant = v;
        rep.witness = {Witness::Kind::point, p.grid().coords(x), 0, 0.0};
      }
    }
  }
  finish(rep);
  return rep;
}

MeasureReport carleson(const DiscreteMeasure &mu, double threshold, int min_level,
                       const char *name)
{
  MeasureReport rep;
  rep.test = name;
  rep.threshold = threshold;
  const DyadicTree tree(mu);
  for (int level = min_level; level <= tree.depth(); ++level)
  {
    for (std::size_t node = 0; node < tree.nodes(level); ++node)
    {
      const double m = tree.mass(level, node);
      if (m <= 0.0)
      {
        continue;
      }
      const double v = tree.energy(level, node) / m;
      if (v > rep.constant || rep.witness.kind == Witness::Kind::none)
      {
        rep.constant = v;
        const Cube q = tree.cube(level, node);
        rep.witness = {Witness::Kind::cube, q.corner, q.side, 0.0};
      }
    }
  }
  finish(rep);
  return rep;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(const Grid &grid) : grid_(grid), mass_(grid.size(), 0.0) {}

DiscreteMeasure::DiscreteMeasure(const Grid &grid, std::vector<double> masses)
    : grid_(grid), mass_(std::move(masses))
{
  if (mass_.size() != grid_.size())
  {
    throw std::invalid_argument("measure size does not match grid");
  }
  for (double m : mass_)
  {
    if (!std::isfinite(m) || m < 0.0)
    {
      throw std::invalid_argument("cell masses must be finite and nonnegative");
    }
  }
}

DiscreteMeasure DiscreteMeasure::from_density(const ScalarField &rho)
{
  const Grid &g = rho.grid();
  const double peak = max_abs(rho);
  std::vector<double> m(g.size());
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    const double v = rho[x].real();
    if (!std::isfinite(v) || v < -1e-12 * peak)
    {
      throw std::invalid_argument("density has negative or non-finite samples");
    }
    m[x] = std::max(0.0, v) * g.cell_volume();
  }
  return DiscreteMeasure(g, std::move(m));
}

DiscreteMeasure DiscreteMeasure::lebesgue(const Grid &grid, double scale)
{
  return DiscreteMeasure(grid, std::vector<double>(grid.size(), scale * grid.cell_volume()));
}

double DiscreteMeasure::total_mass() const noexcept
{
  return std::accumulate(mass_.begin(), mass_.end(), 0.0);
}

bool DiscreteMeasure::is_zero() const noexcept
{
  return std::all_of(mass_.begin(), mass_.end(), [](double m) { return m == 0.0; });
}

ScalarField DiscreteMeasure::density() const
{
  std::vector<double> d(mass_.size());
  const double inv = 1.0 / grid_.cell_volume();
  std::transform(mass_.begin(), mass_.end(), d.begin(), [inv](double m) { return m * inv; });
  return ScalarField(grid_, d);
}

DiscreteMeasure DiscreteMeasure::scaled(double a) const
{
  if (!(a >= 0.0))
  {
    throw std::invalid_argument("measures scale by nonnegative factors");
  }
  std::vector<double> m(mass_);
  for (double &v : m)
  {
    v *= a;
  }
  return DiscreteMeasure(grid_, std::move(m));
}

DiscreteMeasure DiscreteMeasure::operator+(const DiscreteMeasure &o) const
{
  require_same_grid(grid_, o.grid_, "measure sum");
  std::vector<double> m(mass_);
  for (std::size_t i = 0; i < m.size(); ++i)
  {
    m[i] += o.mass_[i];
  }
  return DiscreteMeasure(grid_, std::move(m));
}

DyadicTree::DyadicTree(const DiscreteMeasure &mu) : grid_(mu.grid()), depth_(grid_.depth())
{
  const int d = grid_.dim();
  mass_.resize(depth_ + 1);
  energy_.resize(depth_ + 1);
  mass_[depth_].assign(mu.masses().begin(), mu.masses().end());
  energy_[depth_].resize(mass_[depth_].size());
  for (std::size_t i = 0; i < mass_[depth_].size(); ++i)
  {
    energy_[depth_][i] = own_term(depth_, i);
  }
  for (int level = depth_ - 1; level >= 0; --level)
  {
    const std::size_t per = std::size_t{1} << level;
    const std::size_t child_per = per * 2;
    std::size_t count = 1;
    for (int a = 0; a < d; ++a)
    {
      count *= per;
    }
    mass_[level].assign(count, 0.0);
    energy_[level].assign(count, 0.0);
    const auto &cm = mass_[level + 1];
    const auto &ce = energy_[level + 1];
    for (std::size_t child = 0; child < cm.size(); ++child)
    {
      std::size_t rest = child;
      std::size_t parent = 0;
      std::size_t stride = 1;
      for (int a = 0; a < d; ++a)
      {
        parent += ((rest % child_per) / 2) * stride;
        rest /= child_per;
        stride *= per;
      }
      mass_[level][parent] += cm[child];
      energy_[level][parent] += ce[child];
    }
    for (std::size_t node = 0; node < count; ++node)
    {
      energy_[level][node] += own_term(level, node);
    }
  }
}

double DyadicTree::own_term(int level, std::size_t node) const
{
  const double side = grid_.period() / static_cast<double>(std::size_t{1} << level);
  const double vol = std::pow(side, grid_.dim());
  const double m = mass_[level][node];
  return m * m * std::pow(vol, 2.0 / grid_.dim() - 1.0);
}

Cube DyadicTree::cube(int level, std::size_t node) const
{
  const std::size_t per = std::size_t{1} << level;
  const int side = grid_.points_per_axis() / static_cast<int>(per);
  Cube c;
  c.side = side;
  for (int a = grid_.dim() - 1; a >= 0; --a)
  {
    c.corner[a] = static_cast<int>(node % per) * side;
    node /= per;
  }
  return c;
}

MeasureReport carleson_test(const DiscreteMeasure &mu, double threshold)
{
  return carleson(mu, threshold, 0, "carleson");
}

MeasureReport truncated_carleson_test(const DiscreteMeasure &mu, double threshold)
{
  return carleson(mu, threshold, 1, "carleson_truncated");
}

std::vector<double> default_radii(const Grid &grid)
{
  std::vector<double> r;
  const double h = grid.spacing();
  const double top = grid.period() / 4.0;
  for (int k = 0;; ++k)
  {
    const double v = 2.0 * h * std::pow(std::sqrt(2.0), k);
    if (v > top * (1.0 + 1e-12))
    {
      break;
    }
    r.push_back(std::min(v, top));
  }
  return r;
}

std::vector<double> ball_sums(const Grid &grid, std::span<const double> weights, double r)
{
  if (weights.size() != grid.size())
  {
    throw std::invalid_argument("weights do not match grid");
  }
  return convolve_with_ball(grid, spectrum_of(grid, weights), r);
}

MeasureReport ball_growth_test(const DiscreteMeasure &mu, std::span<const double> radii,
                               double threshold)
{
  const Grid &g = mu.grid();
  const int n = g.dim();
  MeasureReport rep = ball_sup(g, mu.masses(), radii,
                               [n](double r) { return n == 2 ? 1.0 : std::pow(r, 2 - n); });
  rep.test = "ball_growth";
  rep.threshold = threshold;
  rep.forces_zero = n == 2;
  finish(rep);
  if (n == 2)
  {
    rep.pass = rep.constant == 0.0;
  }
  return rep;
}

std::vector<Index> ball_centers(const Grid &grid)
{
  const int stride = grid.points_per_axis() / 8;
  std::vector<Index> out;
  for (int a = 0; a < grid.points_per_axis(); a += stride)
  {
    for (int b = 0; b < grid.points_per_axis(); b += stride)
    {
      if (grid.dim() == 2)
      {
        out.push_back({a, b, 0});
        continue;
      }
      for (int c = 0; c < grid.points_per_axis(); c += stride)
      {
        out.push_back({a, b, c});
      }
    }
  }
  return out;
}

MeasureReport ball_energy_test(const DiscreteMeasure &mu, std::span<const double> radii,
                               double threshold)
{
  if (mu.grid().dim() != 3)
  {
    throw std::invalid_argument("the homogeneous ball energy test needs n = 3");
  }
  return ball_energy(mu, radii, threshold, PotentialKind::riesz, "ball_energy");
}

MeasureReport pointwise_test(const DiscreteMeasure &mu, double threshold)
{
  if (mu.grid().dim() != 3)
  {
    throw std::invalid_argument("the homogeneous pointwise test needs n = 3");
  }
  return pointwise(mu, threshold, PotentialKind::riesz, "pointwise");
}

MeasureReport fefferman_phong_test(const ScalarField &rho, double eps,
                                   std::span<const double> radii, double threshold)
{
  if (!(eps > 0.0 && eps <= 1.0))
  {
    throw std::invalid_argument("epsilon must lie in (0, 1]");
  }
  const Grid &g = rho.grid();
  const double peak = max_abs(rho);
  std::vector<double> w(g.size());
  for (std::size_t x = 0; x < g.size(); ++x)
  {
    const double v = rho[x].real();
    if (!std::isfinite(v) || v < -1e-12 * std::max(1.0, peak))
    {
      throw std::invalid_argument("Fefferman-Phong density must be nonnegative");
    }
    w[x] = std::pow(std::max(0.0, v), 1.0 + eps) * g.cell_volume();
  }
  const double expo = 2.0 * (1.0 + eps) - g.dim();
  MeasureReport rep = ball_sup(g, w, radii, [expo](double r) { return std::pow(r, expo); });
  rep.test = "fefferman_phong";
  rep.threshold = threshold;
  finish(rep);
  return rep;
}

InhomogeneousMeasureReport inhomogeneous_variants(const DiscreteMeasure &mu,
                                                  std::span<const double> radii,
                                                  double threshold)
{
  return {carleson(mu, threshold, 1, "carleson_truncated"),
          ball_energy(mu, radii, threshold, PotentialKind::bessel, "ball_energy_bessel"),
          pointwise(mu, threshold, PotentialKind::bessel, "pointwise_bessel")};
}

}  // namespace formbound
