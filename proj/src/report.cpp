// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/report.hpp"

#include <cmath>
#include <cstdio>

#include "formbound/reduce.hpp"

namespace formbound
{

namespace
{

const char *kind_name(Witness::Kind k)
{
  switch (k)
  {
  case Witness::Kind::none:
    return "none";
  case Witness::Kind::cube:
    return "cube";
  case Witness::Kind::ball:
    return "ball";
  case Witness::Kind::point:
    return "point";
  }
  return "none";
}

const char *flavor_name(BmoFlavor f)
{
  switch (f)
  {
  case BmoFlavor::BMO:
    return "BMO";
  case BmoFlavor::bmo:
    return "bmo";
  case BmoFlavor::BMO_sharp:
    return "BMO_sharp";
  }
  return "";
}

Json numbers(const std::vector<double> &v)
{
  Json out = Json::array();
  for (double x : v)
  {
    out.push_back(number(x));
  }
  return out;
}

void write(const Json &j, std::string &out, int indent)
{
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type())
  {
  case Json::value_t::number_float:
  {
    const double x = j.get<double>();
    if (!std::isfinite(x))
    {
      out += "null";
      return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    out += buf;
    // Keep floats recognizable as such after a round trip.
    if (std::string_view(buf).find_first_of(".eEn") == std::string_view::npos)
    {
      out += ".0";
    }
    return;
  }
  case Json::value_t::array:
  {
    if (j.empty())
    {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i)
    {
      out += inner;
      write(j[i], out, indent + 1);
      out += i + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
    return;
  }
  case Json::value_t::object:
  {
    if (j.empty())
    {
      out += "{}";
      return;
    }
    out += "{\n";
    std::size_t i = 0;
    for (const auto &[key, value] : j.items())
    {
      out += inner + Json(key).dump() + ": ";
      write(value, out, indent + 1);
      out += ++i < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
    return;
  }
  default:
    out += j.dump();
  }
}

}  // namespace

Json number(double x)
{
  return std::isfinite(x) ? Json(x) : Json(nullptr);
}

Json to_json(const Grid &g)
{
  return {{"dim", g.dim()}, {"points_per_axis", g.points_per_axis()}, {"period", g.period()}};
}

Json to_json(const Witness &w)
{
  Json out = {{"kind", kind_name(w.kind)}};
  if (w.kind != Witness::Kind::none)
  {
    out["index"] = Json::array({w.location[0], w.location[1], w.location[2]});
  }
  if (w.kind == Witness::Kind::cube)
  {
    out["side"] = w.side;
  }
  if (w.kind == Witness::Kind::ball)
  {
    out["radius"] = number(w.radius);
  }
  return out;
}

Json to_json(const Cube &c)
{
  return {{"kind", "cube"},
          {"index", Json::array({c.corner[0], c.corner[1], c.corner[2]})},
          {"side", c.side}};
}

Json to_json(const MeasureReport &r)
{
  Json out = {{"id", r.test},
              {"constant", number(r.constant)},
              {"threshold", number(r.threshold)},
              {"pass", r.pass},
              {"witness", to_json(r.witness)}};
  out["sampled"] = r.sampled;
  out["forces_zero"] = r.forces_zero;
  return out;
}

Json to_json(const BmoReport &r)
{
  return {{"id", flavor_name(r.flavor)},
          {"constant", number(r.norm)},
          {"r_exponent", r.r_exponent},
          {"oscillation_part", number(r.oscillation_part)},
          {"large_part", number(r.large_part)},
          {"witness", to_json(r.worst_cube)}};
}

Json to_json(const FormEstimate &e)
{
  return {{"constant", number(e.value)},
          {"method", e.method == EigenMethod::power_iteration ? "power_iteration"
                                                               : "subspace_sweep"},
          {"iterations", e.iterations},
          {"residual", number(e.residual)},
          {"converged", e.converged},
          {"monotone", e.monotone}};
}

Json to_json(const NonlinearConstant &c)
{
  return {{"lower", to_json(c.lower)},
          {"trace_root", to_json(c.trace_root)},
          {"sandwich_ok", c.sandwich_ok},
          {"budget_exhausted", c.budget_exhausted},
          {"restarts", c.restarts}};
}

Json to_json(const CapacityResult &r)
{
  return {{"constant", number(r.value)},
          {"flavor", to_string(r.flavor)},
          {"kkt_residual", number(r.kkt_residual)},
          {"sweeps", r.sweeps},
          {"cg_iterations", r.cg_iterations},
          {"energy", number(r.energy)},
          {"mass", number(r.mass)},
          {"clipped_mass", number(r.clipped_mass)}};
}

Json to_json(const GaugeCheck &g)
{
  const double ratio = g.energy_rhs > 0.0 ? g.energy_lhs / g.energy_rhs : 0.0;
  return {{"energy_lhs", number(g.energy_lhs)},
          {"energy_rhs", number(g.energy_rhs)},
          {"energy_ratio", number(ratio)},
          {"capacity", number(g.capacity)},
          {"gauge_ratio_max", number(g.gauge_ratio)},
          {"gauge_ratio_min", number(g.gauge_ratio_min)},
          {"samples", g.samples}};
}

Json to_json(const DecayProfile &p)
{
  return {{"delta", numbers(p.delta)},
          {"value", numbers(p.value)},
          {"decay", numbers(p.decay)},
          {"decays", p.decays}};
}

Json to_json(const VerdictConfig &c)
{
  return {{"carleson_threshold", number(c.carleson_threshold)},
          {"ball_threshold", number(c.ball_threshold)},
          {"bmo_threshold", number(c.bmo_threshold)},
          {"fefferman_phong_threshold", number(c.fefferman_phong_threshold)},
          {"fefferman_phong_eps", number(c.fefferman_phong_eps)},
          {"trace_threshold", number(c.trace_threshold)},
          {"form_threshold", number(c.form_threshold)},
          {"n2_tolerance", number(c.n2_tolerance)},
          {"decay_factor", number(c.decay_factor)},
          {"bmo_exponent", c.bmo_exponent},
          {"radii", numbers(c.radii)},
          {"eigen_value_tolerance", number(c.form.eigen.value_tolerance)},
          {"eigen_residual_tolerance", number(c.form.eigen.residual_tolerance)},
          {"eigen_max_iterations", c.form.eigen.max_iterations},
          {"seed", c.form.seed}};
}

Json to_json(const Verdict &v)
{
  Json records = Json::array();
  for (const auto &r : v.records)
  {
    Json j = {{"id", r.id},
              {"role", to_string(r.role)},
              {"constant", number(r.constant)},
              {"threshold", number(r.threshold)},
              {"pass", r.pass},
              {"converged", r.converged},
              {"witness", to_json(r.witness)}};
    records.push_back(std::move(j));
  }
  Json out = {{"pipeline", to_string(v.pipeline)},
              {"overall", to_string(v.overall)},
              {"form_constant", number(v.form_constant)},
              {"records", std::move(records)}};
  Json profiles = Json::object();
  if (v.vmo)
  {
    profiles["vmo"] = to_json(*v.vmo);
  }
  if (v.local_trace)
  {
    profiles["local_trace"] = to_json(*v.local_trace);
  }
  out["profiles"] = std::move(profiles);
  out["provenance"] = {{"grid", to_json(v.grid)}, {"config", to_json(v.config)}};
  return out;
}

Json to_json(const DecompositionResult &d)
{
  const Grid &g = d.c.grid();
  Json mean = Json::array();
  for (int a = 0; a < g.dim(); ++a)
  {
    mean.push_back({number(d.mean_part[a].real()), number(d.mean_part[a].imag())});
  }
  double skew = 0.0;
  for (int i = 0; i < g.dim(); ++i)
  {
    for (int j = 0; j < g.dim(); ++j)
    {
      skew = std::max(skew, max_abs(d.F(i, j) + d.F(j, i)));
    }
  }
  return {{"mean_part", std::move(mean)},
          {"q_mean", {number(d.q_mean.real()), number(d.q_mean.imag())}},
          {"c_max_abs", number(max_abs(d.c))},
          {"F_max_abs", number(max_abs(d.F))},
          {"F_skew_defect", number(skew)},
          {"h_max_abs", number(max_abs(d.h))},
          {"gamma_max_abs", number(max_abs(d.gamma))},
          {"residual", number(d.residual)}};
}

std::string serialize(const Json &j)
{
  std::string out;
  write(j, out, 0);
  out += '\n';
  return out;
}

}  // namespace formbound
