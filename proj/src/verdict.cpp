// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/verdict.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <numbers>
#include <stdexcept>

#include "formbound/fft.hpp"
#include "formbound/hodge.hpp"
#include "formbound/oscillation.hpp"
#include "formbound/reduce.hpp"
#include "formbound/spectral.hpp"

namespace formbound
{

namespace
{

constexpr double kInf = std::numeric_limits<double>::infinity();

using Task = std::function<std::vector<ConditionRecord>()>;

// Independent sub-assessments. Results keep the task order whatever the scheduling.
std::vector<ConditionRecord> run_tasks(const std::vector<Task> &tasks)
{
  std::vector<std::vector<ConditionRecord>> parts(tasks.size());
  if (fft::thread_count() > 1 && tasks.size() > 1)
  {
    std::vector<std::future<std::vector<ConditionRecord>>> futures;
    futures.reserve(tasks.size());
    for (const auto &t : tasks)
    {
      futures.push_back(std::async(std::launch::async, t));
    }
    for (std::size_t i = 0; i < tasks.size(); ++i)
    {
      parts[i] = futures[i].get();
    }
  }
  else
  {
    for (std::size_t i = 0; i < tasks.size(); ++i)
    {
      parts[i] = tasks[i]();
    }
  }
  std::vector<ConditionRecord> out;
  for (auto &p : parts)
  {
    out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
  }
  return out;
}

ConditionRecord thresholded(std::string id, Role role, double constant, double threshold)
{
  ConditionRecord r;
  r.id = std::move(id);
  r.role = role;
  r.constant = constant;
  r.threshold = threshold;
  r.pass = std::isfinite(constant) && constant <= threshold;
  return r;
}

ConditionRecord from_measure(std::string id, Role role, const MeasureReport &m)
{
  auto r = thresholded(std::move(id), role, m.constant, m.threshold);
  r.witness = m.witness;
  return r;
}

ConditionRecord from_estimate(std::string id, Role role, const FormEstimate &e, double threshold)
{
  auto r = thresholded(std::move(id), role, e.value, threshold);
  r.converged = e.converged;
  return r;
}

ConditionRecord bmo_record(const MatrixField &F, BmoFlavor flavor, const VerdictConfig &config)
{
  const CubeFamily family(F.grid(), CubeFlavor::dyadic_plus_half_shifts);
  const auto rep = bmo_norm(F, flavor, config.bmo_exponent, family);
  auto r = thresholded("bmo_F", Role::necessary, rep.norm, config.bmo_threshold);
  r.witness.kind = Witness::Kind::cube;
  r.witness.location = rep.worst_cube.corner;
  r.witness.side = rep.worst_cube.side;
  return r;
}

ScalarField admissibility_density(const DecompositionResult &d, bool with_gamma)
{
  ScalarField rho = d.c.squared_modulus() + d.h.squared_modulus();
  if (with_gamma)
  {
    rho += d.gamma.abs();
  }
  rho.make_real();
  return rho;
}

std::vector<double> radii_of(const Grid &g, const VerdictConfig &config)
{
  return config.radii.empty() ? default_radii(g) : config.radii;
}

bool is_zero(const MatrixField &A)
{
  return max_abs(A) == 0.0;
}

void check_grids(const MatrixField &A, const VectorField &b, const ScalarField &q)
{
  require_same_grid(A.grid(), b.grid(), "verdict");
  require_same_grid(A.grid(), q.grid(), "verdict");
}

// Unconverged estimates make the verdict inconclusive before anything else is read.
Outcome conclude(const std::vector<ConditionRecord> &records, bool degenerate)
{
  const bool converged = std::ranges::all_of(records, &ConditionRecord::converged);
  if (!converged)
  {
    return Outcome::inconclusive;
  }
  if (degenerate)
  {
    return Outcome::certified_unbounded_n2;
  }
  for (const auto &r : records)
  {
    if (r.role != Role::diagnostic && !r.pass)
    {
      return Outcome::inconclusive;
    }
  }
  return Outcome::certified_bounded;
}

// Decay per halving of delta between consecutive profile entries.
DecayProfile make_profile(std::vector<double> delta, std::vector<double> value, double factor)
{
  DecayProfile p;
  p.delta = std::move(delta);
  p.value = std::move(value);
  const double peak = *std::ranges::max_element(p.value);
  for (std::size_t i = 0; i + 1 < p.value.size(); ++i)
  {
    const double halvings = std::log2(p.delta[i] / p.delta[i + 1]);
    double d = kInf;
    if (p.value[i + 1] > 0.0)
    {
      d = std::pow(p.value[i] / p.value[i + 1], 1.0 / halvings);
    }
    else if (p.value[i] > 0.0)
    {
      d = kInf;
    }
    p.decay.push_back(d);
    p.decays = p.decays && (peak == 0.0 || d >= factor);
  }
  return p;
}

ConditionRecord decay_record(std::string id, const DecayProfile &p, double factor)
{
  double slowest = kInf;
  for (double d : p.decay)
  {
    slowest = std::min(slowest, d);
  }
  ConditionRecord r;
  r.id = std::move(id);
  r.role = Role::necessary;
  r.constant = slowest;
  r.threshold = factor;
  r.pass = p.decays;
  return r;
}

Verdict homogeneous_pipeline(Pipeline id, const MatrixField &A, const VectorField &b,
                             const ScalarField &q, const VerdictConfig &config)
{
  check_grids(A, b, q);
  const Grid &g = b.grid();
  Verdict v;
  v.pipeline = id;
  v.grid = g;
  v.config = config;

  const auto red = reduce_principal(A, b);
  const VectorField &b1 = red.b1;
  std::vector<ConditionRecord> head;
  head.push_back(thresholded("principal_symbol", Role::necessary, red.sup_norm, kInf));

  std::vector<Task> tasks;
  bool degenerate = false;
  if (g.dim() == 2)
  {
    // The only forms bounded against the Dirichlet energy in the plane have div b1 = q = 0.
    const double kmax = std::numbers::pi * g.points_per_axis() / g.period();
    double b_norm = 0.0;
    for (int i = 0; i < 2; ++i)
    {
      b_norm += std::pow(l2_norm(b1[i]), 2);
    }
    b_norm = std::sqrt(b_norm);
    const double div_rel = b_norm > 0.0 ? l2_norm(divergence(b1)) / (kmax * b_norm) : 0.0;
    head.push_back(thresholded("divergence_free", Role::necessary, div_rel, config.n2_tolerance));
    head.push_back(
        thresholded("potential_zero", Role::necessary, lp_norm(q, 1.0), config.n2_tolerance));
    degenerate = !head[1].pass || !head[2].pass;

    tasks.push_back([&] { return std::vector{bmo_record(hodge_decompose(b1).F, BmoFlavor::BMO,
                                                        config)}; });
    if (!degenerate && is_zero(A))
    {
      tasks.push_back([&]
                      {
                        return std::vector{from_estimate(
                            "commutator", Role::diagnostic,
                            commutator_norm(b1, Flavor::homogeneous, config.form), kInf)};
                      });
    }
  }
  else
  {
    tasks.push_back(
        [&]
        {
          const auto d = hodge_decompose(b1, q);
          const ScalarField rho = admissibility_density(d, false);
          const auto mu = DiscreteMeasure::from_density(rho);
          const auto radii = radii_of(g, config);
          std::vector<ConditionRecord> out;
          out.push_back(bmo_record(d.F, BmoFlavor::BMO, config));
          out.push_back(from_measure("carleson", Role::necessary,
                                     carleson_test(mu, config.carleson_threshold)));
          out.push_back(from_measure("ball_growth", Role::necessary,
                                     ball_growth_test(mu, radii, config.ball_threshold)));
          out.push_back(from_measure(
              "fefferman_phong", Role::sufficient,
              fefferman_phong_test(rho, config.fefferman_phong_eps, radii,
                                   config.fefferman_phong_threshold)));
          return out;
        });
  }
  tasks.push_back([&]
                  {
                    return std::vector{from_estimate(
                        "direct_form_norm", Role::diagnostic,
                        form_norm(A, b, q, Flavor::homogeneous, config.form),
                        config.form_threshold)};
                  });

  v.records = std::move(head);
  auto rest = run_tasks(tasks);
  v.records.insert(v.records.end(), rest.begin(), rest.end());
  const auto *comm = v.find("commutator");
  v.form_constant = comm != nullptr ? comm->constant : v.find("direct_form_norm")->constant;
  v.overall = conclude(v.records, degenerate);
  return v;
}

}  // namespace

const char *to_string(Pipeline p) noexcept
{
  switch (p)
  {
  case Pipeline::homogeneous:
    return "homogeneous";
  case Pipeline::inhomogeneous:
    return "inhomogeneous";
  case Pipeline::magnetic:
    return "magnetic";
  case Pipeline::infinitesimal:
    return "infinitesimal";
  }
  return "";
}

const char *to_string(Outcome o) noexcept
{
  switch (o)
  {
  case Outcome::certified_bounded:
    return "certified_bounded";
  case Outcome::certified_unbounded_n2:
    return "certified_unbounded_n2";
  case Outcome::inconclusive:
    return "inconclusive";
  }
  return "";
}

const char *to_string(Role r) noexcept
{
  switch (r)
  {
  case Role::necessary:
    return "necessary";
  case Role::sufficient:
    return "sufficient";
  case Role::diagnostic:
    return "diagnostic";
  }
  return "";
}

const ConditionRecord *Verdict::find(const std::string &id) const
{
  const auto it = std::ranges::find(records, id, &ConditionRecord::id);
  return it == records.end() ? nullptr : &*it;
}

bool Verdict::necessary_failed() const
{
  return std::ranges::any_of(records, [](const ConditionRecord &r)
                             { return r.role == Role::necessary && !r.pass; });
}

int exit_status(const Verdict &v) noexcept
{
  return (v.overall == Outcome::certified_unbounded_n2 || v.necessary_failed()) ? 2 : 0;
}

Verdict assess_homogeneous(const MatrixField &A, const VectorField &b, const ScalarField &q,
                           const VerdictConfig &config)
{
  return homogeneous_pipeline(Pipeline::homogeneous, A, b, q, config);
}

Verdict assess_inhomogeneous(const MatrixField &A, const VectorField &b, const ScalarField &q,
                             const VerdictConfig &config)
{
  check_grids(A, b, q);
  const Grid &g = b.grid();
  Verdict v;
  v.pipeline = Pipeline::inhomogeneous;
  v.grid = g;
  v.config = config;

  const auto red = reduce_principal(A, b);
  const VectorField &b1 = red.b1;
  v.records.push_back(thresholded("principal_symbol", Role::necessary, red.sup_norm, kInf));

  std::vector<Task> tasks;
  tasks.push_back(
      [&]
      {
        const auto d = inhomogeneous_decompose(b1, q);
        const auto mu = DiscreteMeasure::from_density(admissibility_density(d, true));
        const auto radii = radii_of(g, config);
        const auto variants = inhomogeneous_variants(mu, radii, config.carleson_threshold);
        std::vector<ConditionRecord> out;
        out.push_back(bmo_record(d.F, BmoFlavor::BMO_sharp, config));
        out.push_back(from_measure("truncated_carleson", Role::necessary, variants.carleson));
        out.push_back(from_measure("ball_energy", Role::necessary, variants.ball_energy));
        out.push_back(from_measure("pointwise", Role::necessary, variants.pointwise));
        out.push_back(from_estimate("trace", Role::necessary,
                                    trace_constant(mu, Flavor::inhomogeneous, config.form),
                                    config.trace_threshold));
        return out;
      });
  tasks.push_back(
      [&]
      {
        // |(1-lap)^-1 div b1|^2 + |(1-lap)^-1 b1|^2 in place of |c|^2.
        VectorField smoothed = b1;
        for (int i = 0; i < g.dim(); ++i)
        {
          smoothed[i] = apply_spectral(SpectralKind::bessel_inv, b1[i]);
        }
        const ScalarField div_part = apply_spectral(SpectralKind::bessel_inv, divergence(b1)).abs();
        DecompositionResult d = inhomogeneous_decompose(b1, q);
        d.c = std::move(smoothed);
        ScalarField rho = admissibility_density(d, true) + div_part * div_part;
        rho.make_real();
        const auto mu = DiscreteMeasure::from_density(rho);
        return std::vector{from_estimate("strengthened_trace", Role::necessary,
                                         trace_constant(mu, Flavor::inhomogeneous, config.form),
                                         config.trace_threshold)};
      });
  tasks.push_back([&]
                  {
                    return std::vector{from_estimate(
                        "direct_form_norm", Role::diagnostic,
                        form_norm(A, b, q, Flavor::inhomogeneous, config.form),
                        config.form_threshold)};
                  });
  auto rest = run_tasks(tasks);
  v.records.insert(v.records.end(), rest.begin(), rest.end());
  v.form_constant = v.find("direct_form_norm")->constant;
  v.overall = conclude(v.records, false);
  return v;
}

Verdict assess_magnetic(const VectorField &a, const ScalarField &q, const VerdictConfig &config)
{
  const Grid &g = a.grid();
  require_same_grid(g, q.grid(), "assess_magnetic");
  for (int i = 0; i < g.dim(); ++i)
  {
    for (std::size_t x = 0; x < g.size(); ++x)
    {
      if (a[i][x].imag() != 0.0)
      {
        throw std::invalid_argument("magnetic potential must be real");
      }
    }
  }
  ScalarField q_eff = q + a.squared_modulus();
  if (q.is_real())
  {
    q_eff.make_real();
  }
  return homogeneous_pipeline(Pipeline::magnetic, MatrixField(g), a, q_eff, config);
}

int cube_side_for(const Grid &grid, double delta)
{
  const double h = grid.spacing();
  if (!(delta >= 2.0 * h) || delta > grid.period() * (1.0 + 1e-12))
  {
    throw std::invalid_argument("delta must lie between two cells and the period");
  }
  int side = 1;
  while (2 * side <= grid.points_per_axis() && 2 * side * h <= delta * (1.0 + 1e-12))
  {
    side *= 2;
  }
  return side;
}

Verdict assess_infinitesimal(const VectorField &b, const ScalarField &q,
                             std::span<const double> deltas, const VerdictConfig &config)
{
  const Grid &g = b.grid();
  require_same_grid(g, q.grid(), "assess_infinitesimal");
  if (deltas.size() < 2)
  {
    throw std::invalid_argument("at least two deltas are needed for a profile");
  }
  std::vector<double> ds(deltas.begin(), deltas.end());
  std::ranges::sort(ds, std::greater<>());
  if (std::ranges::adjacent_find(ds) != ds.end())
  {
    throw std::invalid_argument("deltas must be distinct");
  }
  std::vector<int> sides;
  for (double d : ds)
  {
    sides.push_back(cube_side_for(g, d));
  }

  Verdict v;
  v.pipeline = Pipeline::infinitesimal;
  v.grid = g;
  v.config = config;

  const auto d = inhomogeneous_decompose(b, q);
  const auto mu = DiscreteMeasure::from_density(admissibility_density(d, true));

  // VMO profile of F; the family sides are capped by delta itself.
  const std::vector<double> increasing(ds.rbegin(), ds.rend());
  const auto vmo = vmo_profile(d.F, increasing, config.bmo_exponent);
  v.vmo = make_profile(ds, {vmo.value.rbegin(), vmo.value.rend()}, config.decay_factor);

  // Local trace constants over the dyadic tiling by cubes of the side matched to each delta.
  // The constant of a cube is at most its peak density over the lowest Dirichlet eigenvalue,
  // so cubes are visited by decreasing bound and the sweep stops once no bound can win.
  std::vector<double> local(ds.size(), 0.0);
  bool converged = true;
  const int n = g.points_per_axis();
  const double hd = g.cell_volume();
  for (std::size_t i = 0; i < ds.size(); ++i)
  {
    const int s = sides[i];
    const int tiles = n / s;
    const int count = g.dim() == 3 ? tiles * tiles * tiles : tiles * tiles;
    const double side = s * g.spacing();
    const double lowest = g.dim() * std::pow(std::numbers::pi / side, 2);
    std::vector<std::pair<double, Cube>> queue;
    queue.reserve(count);
    for (int t = 0; t < count; ++t)
    {
      Cube cube;
      cube.side = s;
      cube.corner = {(t % tiles) * s, ((t / tiles) % tiles) * s,
                     g.dim() == 3 ? (t / (tiles * tiles)) * s : 0};
      double peak = 0.0;
      const int depth = g.dim() == 3 ? s : 1;
      for (int a = 0; a < s; ++a)
      {
        for (int b2 = 0; b2 < s; ++b2)
        {
          for (int c = 0; c < depth; ++c)
          {
            const Index x{cube.corner[0] + a, cube.corner[1] + b2, cube.corner[2] + c};
            peak = std::max(peak, mu[g.flat(x)]);
          }
        }
      }
      queue.emplace_back(peak / hd / lowest, cube);
    }
    std::ranges::stable_sort(queue, std::greater<>(), &std::pair<double, Cube>::first);
    for (const auto &[bound, cube] : queue)
    {
      if (bound <= local[i])
      {
        break;
      }
      const auto e = local_trace_constant(mu, cube, config.form);
      converged = converged && e.converged;
      local[i] = std::max(local[i], e.value);
    }
  }
  v.local_trace = make_profile(ds, std::move(local), config.decay_factor);

  v.records.push_back(decay_record("vmo_decay", *v.vmo, config.decay_factor));
  v.records.push_back(decay_record("local_trace_decay", *v.local_trace, config.decay_factor));
  v.records.back().converged = converged;
  v.form_constant = 0.0;
  v.overall = conclude(v.records, false);
  return v;
}

}  // namespace formbound
