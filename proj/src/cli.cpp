// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "formbound/capacity.hpp"
#include "formbound/fbf.hpp"
#include "formbound/form_norm.hpp"
#include "formbound/hodge.hpp"
#include "formbound/measure.hpp"
#include "formbound/oscillation.hpp"
#include "formbound/presets.hpp"
#include "formbound/report.hpp"
#include "formbound/verdict.hpp"

namespace formbound::cli
{

namespace
{

struct RunConfig
{
  std::string subcommand;
  int dim = 3;
  int points = 32;
  double period = 1.0;
  std::string preset;
  std::string input;
  std::string A_file;
  std::string b_file;
  std::string q_file;
  std::string out;
  std::string csv;
  std::string write_dir;
  std::uint64_t seed = 7;
  int band = 3;
  double amplitude = 1.0;
  std::string flavor = "homogeneous";
  std::string bmo_flavor = "BMO";
  std::string cubes = "shifted";
  std::string part = "full";
  std::string method = "sweep";
  std::string set = "ball";
  std::vector<double> center;
  double radius = 0.125;
  std::vector<int> corner;
  int side = 4;
  std::vector<double> deltas;
  std::vector<double> taus;
  bool all = false;
  bool timing = false;
  bool explicit_grid = false;
  VerdictConfig verdict;
};

struct Fields
{
  Grid grid{3, 16};
  MatrixField A{Grid(3, 16)};
  VectorField b{Grid(3, 16)};
  ScalarField q{Grid(3, 16)};
  ScalarField scalar{Grid(3, 16)};
  std::optional<MatrixField> matrix;
  DiscreteMeasure measure{Grid(3, 16)};
};

Flavor parse_flavor(const std::string &s)
{
  return s == "inhomogeneous" ? Flavor::inhomogeneous : Flavor::homogeneous;
}

BmoFlavor parse_bmo(const std::string &s)
{
  if (s == "bmo")
  {
    return BmoFlavor::bmo;
  }
  return s == "BMO_sharp" ? BmoFlavor::BMO_sharp : BmoFlavor::BMO;
}

FbfContents load(const std::string &path, const RunConfig &cfg)
{
  auto contents = read_fbf(path, cfg.period);
  if (cfg.explicit_grid &&
      (contents.grid.dim() != cfg.dim || contents.grid.points_per_axis() != cfg.points))
  {
    throw std::invalid_argument(path + ": grid does not match --dim/--grid");
  }
  return contents;
}

// Fields come from a preset or from FBF1 files; files override the preset piecewise.
Fields gather(const RunConfig &cfg)
{
  std::optional<Grid> grid;
  std::optional<FbfContents> input;
  std::optional<FbfContents> a_in;
  std::optional<FbfContents> b_in;
  std::optional<FbfContents> q_in;
  auto take = [&](const std::string &path, std::optional<FbfContents> &slot)
  {
    if (path.empty())
    {
      return;
    }
    slot = load(path, cfg);
    if (grid && !(*grid == slot->grid))
    {
      throw std::invalid_argument("input files live on different grids");
    }
    grid = slot->grid;
  };
  take(cfg.input, input);
  take(cfg.A_file, a_in);
  take(cfg.b_file, b_in);
  take(cfg.q_file, q_in);
  if (!grid)
  {
    if (cfg.preset.empty())
    {
      throw std::invalid_argument("give --preset or an input file");
    }
    grid = Grid(cfg.dim, cfg.points, cfg.period);
  }
  const Grid &g = *grid;

  Fields f;
  f.grid = g;
  if (!cfg.preset.empty())
  {
    PresetOptions po;
    po.seed = cfg.seed;
    po.band = cfg.band;
    po.amplitude = cfg.amplitude;
    auto p = make_preset(cfg.preset, g, po);
    f.A = std::move(p.A);
    f.b = std::move(p.b);
    f.q = std::move(p.q);
    f.scalar = std::move(p.scalar);
    f.measure = std::move(p.measure);
  }
  else
  {
    f.A = MatrixField(g);
    f.b = VectorField(g);
    f.q = ScalarField(g);
    f.scalar = ScalarField(g);
    f.measure = DiscreteMeasure(g);
  }
  if (input)
  {
    // The primary input is read according to its component count.
    const std::size_t n = input->components.size();
    if (n == 1)
    {
      f.scalar = input->scalar();
      f.q = f.scalar;
      if (cfg.subcommand == "carleson" || cfg.subcommand == "trace")
      {
        f.measure = DiscreteMeasure::from_density(f.scalar);
      }
    }
    else if (n == static_cast<std::size_t>(g.dim()))
    {
      f.b = input->vector();
    }
    else
    {
      f.matrix = input->matrix();
      f.A = *f.matrix;
    }
  }
  if (a_in)
  {
    f.A = a_in->matrix();
  }
  if (b_in)
  {
    f.b = b_in->vector();
  }
  if (q_in)
  {
    f.q = q_in->scalar();
  }
  return f;
}

void require_choice(const std::string &value, std::initializer_list<const char *> allowed,
                    const char *what)
{
  for (const char *a : allowed)
  {
    if (value == a)
    {
      return;
    }
  }
  throw std::invalid_argument(std::string("invalid ") + what + ": " + value);
}

Json config_echo(const RunConfig &cfg, const Grid &g)
{
  Json inputs = Json::object();
  inputs["input"] = cfg.input.empty() ? Json(nullptr) : Json(cfg.input);
  inputs["A"] = cfg.A_file.empty() ? Json(nullptr) : Json(cfg.A_file);
  inputs["b"] = cfg.b_file.empty() ? Json(nullptr) : Json(cfg.b_file);
  inputs["q"] = cfg.q_file.empty() ? Json(nullptr) : Json(cfg.q_file);
  Json out = {{"subcommand", cfg.subcommand},
              {"dim", g.dim()},
              {"points_per_axis", g.points_per_axis()},
              {"period", g.period()},
              {"preset", cfg.preset.empty() ? Json(nullptr) : Json(cfg.preset)},
              {"inputs", std::move(inputs)},
              {"seed", cfg.seed},
              {"band", cfg.band},
              {"amplitude", number(cfg.amplitude)},
              {"flavor", cfg.flavor}};
  Json deltas = Json::array();
  for (double d : cfg.deltas)
  {
    deltas.push_back(number(d));
  }
  Json taus = Json::array();
  for (double t : cfg.taus)
  {
    taus.push_back(number(t));
  }
  out["deltas"] = std::move(deltas);
  out["taus"] = std::move(taus);
  out["bmo_flavor"] = cfg.bmo_flavor;
  out["cubes"] = cfg.cubes;
  out["part"] = cfg.part;
  out["method"] = cfg.method;
  out["thresholds"] = to_json(cfg.verdict);
  return out;
}

std::vector<double> default_deltas(const Grid &g)
{
  std::vector<double> out;
  for (double d = g.period() / 4.0; d >= 2.0 * g.spacing() * (1.0 - 1e-12) && out.size() < 3;
       d /= 2.0)
  {
    out.push_back(d);
  }
  return out;
}

void write_csv(const std::string &path, const std::vector<std::string> &header,
               const std::vector<std::vector<double>> &columns)
{
  std::ofstream os(path);
  if (!os)
  {
    throw std::runtime_error("cannot write " + path);
  }
  for (std::size_t i = 0; i < header.size(); ++i)
  {
    os << header[i] << (i + 1 < header.size() ? "," : "\n");
  }
  char buf[32];
  for (std::size_t r = 0; r < columns.front().size(); ++r)
  {
    for (std::size_t c = 0; c < columns.size(); ++c)
    {
      std::snprintf(buf, sizeof buf, "%.17g", columns[c][r]);
      os << buf << (c + 1 < columns.size() ? "," : "\n");
    }
  }
}

struct RunResult
{
  Json result;
  int status = 0;
};

RunResult run_decompose(const RunConfig &cfg, const Fields &f)
{
  const auto d = parse_flavor(cfg.flavor) == Flavor::homogeneous
                     ? hodge_decompose(f.b, f.q)
                     : inhomogeneous_decompose(f.b, f.q);
  if (!cfg.write_dir.empty())
  {
    const std::filesystem::path dir(cfg.write_dir);
    std::filesystem::create_directories(dir);
    write_fbf(dir / "c.fbf", d.c);
    write_fbf(dir / "F.fbf", d.F);
    write_fbf(dir / "h.fbf", d.h);
    write_fbf(dir / "gamma.fbf", d.gamma);
  }
  return {to_json(d)};
}

RunResult run_bmo(const RunConfig &cfg, const Fields &f)
{
  const CubeFamily family(f.grid, cfg.cubes == "dyadic" ? CubeFlavor::dyadic
                                                        : CubeFlavor::dyadic_plus_half_shifts);
  const auto flavor = parse_bmo(cfg.bmo_flavor);
  const int r = cfg.verdict.bmo_exponent;
  Json result = f.matrix ? to_json(bmo_norm(*f.matrix, flavor, r, family))
                         : to_json(bmo_norm(f.scalar, flavor, r, family));
  result["threshold"] = number(cfg.verdict.bmo_threshold);
  result["pass"] = result["constant"].is_number() &&
                   result["constant"].get<double>() <= cfg.verdict.bmo_threshold;
  if (!cfg.deltas.empty())
  {
    std::vector<double> ds = cfg.deltas;
    std::ranges::sort(ds);
    const auto flav =
        cfg.cubes == "dyadic" ? CubeFlavor::dyadic : CubeFlavor::dyadic_plus_half_shifts;
    const auto prof = f.matrix ? vmo_profile(*f.matrix, ds, r, flav)
                               : vmo_profile(f.scalar, ds, r, flav);
    Json delta = Json::array();
    Json value = Json::array();
    for (std::size_t i = 0; i < prof.delta.size(); ++i)
    {
      delta.push_back(number(prof.delta[i]));
      value.push_back(number(prof.value[i]));
    }
    result["vmo_profile"] = {{"delta", delta}, {"value", value}};
    if (!cfg.csv.empty())
    {
      write_csv(cfg.csv, {"delta", "vmo"}, {prof.delta, prof.value});
    }
  }
  return {result};
}

RunResult run_carleson(const RunConfig &cfg, const Fields &f)
{
  const auto &v = cfg.verdict;
  Json records = Json::array();
  records.push_back(to_json(carleson_test(f.measure, v.carleson_threshold)));
  records.push_back(to_json(truncated_carleson_test(f.measure, v.carleson_threshold)));
  if (cfg.all)
  {
    const auto radii = v.radii.empty() ? default_radii(f.grid) : v.radii;
    records.push_back(to_json(ball_growth_test(f.measure, radii, v.ball_threshold)));
    records.push_back(to_json(fefferman_phong_test(f.measure.density(), v.fefferman_phong_eps,
                                                   radii, v.fefferman_phong_threshold)));
    if (parse_flavor(cfg.flavor) == Flavor::inhomogeneous)
    {
      const auto rep = inhomogeneous_variants(f.measure, radii, v.carleson_threshold);
      records.push_back(to_json(rep.ball_energy));
      records.push_back(to_json(rep.pointwise));
    }
    else if (f.grid.dim() == 3)
    {
      records.push_back(to_json(ball_energy_test(f.measure, radii, v.carleson_threshold)));
      records.push_back(to_json(pointwise_test(f.measure, v.carleson_threshold)));
    }
  }
  Json result = {{"constant", records[0]["constant"]}, {"records", std::move(records)}};
  return {result};
}

CompactSet make_set(const RunConfig &cfg, const Grid &g)
{
  if (cfg.set == "cube")
  {
    Index corner{0, 0, 0};
    if (cfg.corner.empty())
    {
      for (int a = 0; a < g.dim(); ++a)
      {
        corner[a] = (g.points_per_axis() - cfg.side) / 2;
      }
    }
    else
    {
      if (static_cast<int>(cfg.corner.size()) != g.dim())
      {
        throw std::invalid_argument("--corner needs one index per axis");
      }
      for (int a = 0; a < g.dim(); ++a)
      {
        corner[a] = cfg.corner[a];
      }
    }
    return CompactSet::cube(g, corner, cfg.side);
  }
  Point center{0.0, 0.0, 0.0};
  if (cfg.center.empty())
  {
    for (int a = 0; a < g.dim(); ++a)
    {
      center[a] = 0.5 * g.period();
    }
  }
  else
  {
    if (static_cast<int>(cfg.center.size()) != g.dim())
    {
      throw std::invalid_argument("--center needs one coordinate per axis");
    }
    for (int a = 0; a < g.dim(); ++a)
    {
      center[a] = cfg.center[a];
    }
  }
  return CompactSet::ball(g, center, cfg.radius * g.period());
}

RunResult run_capacity(const RunConfig &cfg, const Grid &g)
{
  const auto e = make_set(cfg, g);
  const auto flavor = parse_flavor(cfg.flavor);
  const auto cap = capacity(e, flavor);
  Json result = to_json(cap);
  result["set_cells"] = e.count();
  Json gauges = Json::array();
  for (double tau : cfg.taus)
  {
    if (flavor != Flavor::homogeneous)
    {
      throw std::invalid_argument("the gauge check uses the homogeneous capacity");
    }
    GaugeOptions go;
    go.seed = cfg.seed;
    auto j = to_json(gauge_check(e, cap, tau, go));
    j["tau"] = number(tau);
    gauges.push_back(std::move(j));
  }
  result["gauge"] = std::move(gauges);
  return {result};
}

RunResult run_trace(const RunConfig &cfg, const Fields &f)
{
  const FormOptions &fo = cfg.verdict.form;
  if (!cfg.corner.empty())
  {
    Cube cube;
    cube.side = cfg.side;
    for (std::size_t a = 0; a < cfg.corner.size() && a < 3; ++a)
    {
      cube.corner[a] = cfg.corner[a];
    }
    Json result = to_json(local_trace_constant(f.measure, cube, fo));
    result["cube"] = to_json(cube);
    return {result};
  }
  Json result = to_json(trace_constant(f.measure, parse_flavor(cfg.flavor), fo));
  result["threshold"] = number(cfg.verdict.trace_threshold);
  return {result};
}

RunResult run_formnorm(const RunConfig &cfg, const Fields &f)
{
  const auto flavor = parse_flavor(cfg.flavor);
  const FormOptions &fo = cfg.verdict.form;
  if (cfg.part == "commutator")
  {
    return {to_json(commutator_norm(f.b, flavor, fo))};
  }
  if (cfg.part == "nonlinear")
  {
    AscentOptions ao;
    ao.seed = cfg.seed;
    return {to_json(nonlinear_form_constant(f.b, ao))};
  }
  const FormPart part = cfg.part == "hermitian" ? FormPart::hermitian
                        : cfg.part == "skew"    ? FormPart::skew
                                                : FormPart::full;
  return {to_json(form_part_norm(f.A, f.b, f.q, flavor, part, fo))};
}

RunResult verdict_outcome(const Verdict &v)
{
  return {to_json(v), exit_status(v)};
}

RunResult run_infinitesimal(const RunConfig &cfg, const Fields &f)
{
  const auto ds = cfg.deltas.empty() ? default_deltas(f.grid) : cfg.deltas;
  const auto v = assess_infinitesimal(f.b, f.q, ds, cfg.verdict);
  if (!cfg.csv.empty())
  {
    write_csv(cfg.csv, {"delta", "vmo", "local_trace"},
              {v.vmo->delta, v.vmo->value, v.local_trace->value});
  }
  return verdict_outcome(v);
}

void add_common(CLI::App *sub, RunConfig &cfg)
{
  sub->add_option("--dim", cfg.dim, "spatial dimension")->check(CLI::IsMember({2, 3}));
  sub->add_option("--grid", cfg.points, "points per axis (power of two, >= 16)");
  sub->add_option("--period", cfg.period, "torus period L")->check(CLI::PositiveNumber);
  sub->add_option("--preset", cfg.preset, "analytic preset")
      ->check(CLI::IsMember(preset_names()));
  sub->add_option("--input", cfg.input, "FBF1 field file")->check(CLI::ExistingFile);
  sub->add_option("--out", cfg.out, "report path (default: standard output)");
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--band", cfg.band, "band limit of random presets")
      ->check(CLI::Range(1, 1 << 20));
  sub->add_option("--amplitude", cfg.amplitude, "preset amplitude");
  sub->add_option("--flavor", cfg.flavor, "homogeneous or inhomogeneous")
      ->check(CLI::IsMember({"homogeneous", "inhomogeneous"}));
  sub->add_flag("--timing", cfg.timing, "include wall-clock timing in the report");
  auto &v = cfg.verdict;
  sub->add_option("--carleson-threshold", v.carleson_threshold)->check(CLI::PositiveNumber);
  sub->add_option("--ball-threshold", v.ball_threshold)->check(CLI::PositiveNumber);
  sub->add_option("--bmo-threshold", v.bmo_threshold)->check(CLI::PositiveNumber);
  sub->add_option("--fp-threshold", v.fefferman_phong_threshold)->check(CLI::PositiveNumber);
  sub->add_option("--eps", v.fefferman_phong_eps, "Fefferman-Phong exponent excess")
      ->check(CLI::PositiveNumber);
  sub->add_option("--trace-threshold", v.trace_threshold)->check(CLI::PositiveNumber);
  sub->add_option("--form-threshold", v.form_threshold)->check(CLI::PositiveNumber);
  sub->add_option("--n2-tolerance", v.n2_tolerance)->check(CLI::PositiveNumber);
  sub->add_option("--decay-factor", v.decay_factor)->check(CLI::Range(1.0, 1e6));
  sub->add_option("--r", v.bmo_exponent, "mean oscillation exponent")->check(CLI::Range(1, 16));
  sub->add_option("--radii", v.radii, "ball radii")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char *const *argv)
{
  RunConfig cfg;
  CLI::App app{"Form-boundedness certifier on the periodic torus", "formbound"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::vector<CLI::App *> subs;
  auto add = [&](const char *name, const char *help)
  {
    auto *s = app.add_subcommand(name, help);
    add_common(s, cfg);
    subs.push_back(s);
    return s;
  };
  auto *decompose = add("decompose", "Hodge splitting of b (and q)");
  decompose->add_option("--b", cfg.b_file)->check(CLI::ExistingFile);
  decompose->add_option("--q", cfg.q_file)->check(CLI::ExistingFile);
  decompose->add_option("--write-dir", cfg.write_dir, "write c, F, h, gamma as FBF1 files");
  auto *bmo = add("bmo", "BMO norm of a scalar or matrix field");
  bmo->add_option("--bmo-flavor", cfg.bmo_flavor)
      ->check(CLI::IsMember({"BMO", "bmo", "BMO_sharp"}));
  bmo->add_option("--cubes", cfg.cubes)->check(CLI::IsMember({"dyadic", "shifted"}));
  bmo->add_option("--delta", cfg.deltas, "VMO profile scales")->check(CLI::PositiveNumber);
  bmo->add_option("--csv", cfg.csv, "profile CSV path");
  auto *carleson = add("carleson", "dyadic Carleson test of a measure");
  carleson->add_flag("--all", cfg.all, "also run the ball, energy and pointwise tests");
  auto *cap = add("capacity", "capacity of a cube or ball, with optional gauge checks");
  cap->add_option("--set", cfg.set)->check(CLI::IsMember({"ball", "cube"}));
  cap->add_option("--center", cfg.center, "ball center");
  cap->add_option("--radius", cfg.radius, "ball radius in units of L")
      ->check(CLI::Range(0.0, 0.5));
  cap->add_option("--corner", cfg.corner, "cube corner cell");
  cap->add_option("--side", cfg.side, "cube side in cells")->check(CLI::PositiveNumber);
  cap->add_option("--tau", cfg.taus, "gauge exponents in (1/2, 3/2)");
  auto *trace = add("trace", "trace constant of a measure");
  trace->add_option("--method", cfg.method)->check(CLI::IsMember({"power", "sweep"}));
  trace->add_option("--corner", cfg.corner, "local Dirichlet cube corner");
  trace->add_option("--side", cfg.side, "local Dirichlet cube side")->check(CLI::PositiveNumber);
  auto *formnorm = add("formnorm", "norm of the form of (A, b, q)");
  formnorm->add_option("--A", cfg.A_file)->check(CLI::ExistingFile);
  formnorm->add_option("--b", cfg.b_file)->check(CLI::ExistingFile);
  formnorm->add_option("--q", cfg.q_file)->check(CLI::ExistingFile);
  formnorm->add_option("--part", cfg.part)
      ->check(CLI::IsMember({"full", "hermitian", "skew", "commutator", "nonlinear"}));
  formnorm->add_option("--method", cfg.method)->check(CLI::IsMember({"power", "sweep"}));
  auto *verdict = add("verdict", "homogeneous or inhomogeneous pipeline");
  verdict->add_option("--A", cfg.A_file)->check(CLI::ExistingFile);
  verdict->add_option("--b", cfg.b_file)->check(CLI::ExistingFile);
  verdict->add_option("--q", cfg.q_file)->check(CLI::ExistingFile);
  auto *magnetic = add("magnetic", "magnetic pipeline with a = b");
  magnetic->add_option("--b", cfg.b_file)->check(CLI::ExistingFile);
  magnetic->add_option("--q", cfg.q_file)->check(CLI::ExistingFile);
  auto *infinitesimal = add("infinitesimal", "small-scale profiles");
  infinitesimal->add_option("--b", cfg.b_file)->check(CLI::ExistingFile);
  infinitesimal->add_option("--q", cfg.q_file)->check(CLI::ExistingFile);
  infinitesimal->add_option("--delta", cfg.deltas, "cube scales")->check(CLI::PositiveNumber);
  infinitesimal->add_option("--csv", cfg.csv, "profile CSV path");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e) == 0 ? 0 : 1;
  }
  catch (const CLI::CallForAllHelp &e)
  {
    return app.exit(e) == 0 ? 0 : 1;
  }
  catch (const CLI::ParseError &e)
  {
    std::cerr << "formbound: " << e.what() << '\n';
    return 1;
  }

  try
  {
    CLI::App *chosen = app.get_subcommands().front();
    cfg.subcommand = chosen->get_name();
    cfg.explicit_grid = chosen->count("--dim") > 0 || chosen->count("--grid") > 0;
    cfg.verdict.form.eigen.method =
        cfg.method == "power" ? EigenMethod::power_iteration : EigenMethod::subspace_sweep;
    cfg.verdict.form.seed = cfg.seed;
    require_choice(cfg.flavor, {"homogeneous", "inhomogeneous"}, "flavor");

    const auto start = std::chrono::steady_clock::now();
    RunResult outcome;
    std::optional<Grid> grid;
    if (cfg.subcommand == "capacity")
    {
      grid = Grid(cfg.dim, cfg.points, cfg.period);
      outcome = run_capacity(cfg, *grid);
    }
    else
    {
      const Fields f = gather(cfg);
      grid = f.grid;
      const auto &s = cfg.subcommand;
      if (s == "decompose")
      {
        outcome = run_decompose(cfg, f);
      }
      else if (s == "bmo")
      {
        outcome = run_bmo(cfg, f);
      }
      else if (s == "carleson")
      {
        outcome = run_carleson(cfg, f);
      }
      else if (s == "trace")
      {
        outcome = run_trace(cfg, f);
      }
      else if (s == "formnorm")
      {
        outcome = run_formnorm(cfg, f);
      }
      else if (s == "verdict")
      {
        outcome = verdict_outcome(parse_flavor(cfg.flavor) == Flavor::homogeneous
                                      ? assess_homogeneous(f.A, f.b, f.q, cfg.verdict)
                                      : assess_inhomogeneous(f.A, f.b, f.q, cfg.verdict));
      }
      else if (s == "magnetic")
      {
        outcome = verdict_outcome(assess_magnetic(f.b, f.q, cfg.verdict));
      }
      else
      {
        outcome = run_infinitesimal(cfg, f);
      }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    Json report = {{"schema_version", kSchemaVersion},
                   {"subcommand", cfg.subcommand},
                   {"config", config_echo(cfg, *grid)},
                   {"result", std::move(outcome.result)},
                   {"exit_code", outcome.status}};
    report["timing"] = cfg.timing ? Json{{"seconds", seconds}} : Json(nullptr);
    const std::string text = serialize(report);
    if (cfg.out.empty())
    {
      std::cout << text;
    }
    else
    {
      std::ofstream os(cfg.out, std::ios::binary);
      if (!os)
      {
        throw std::runtime_error("cannot write " + cfg.out);
      }
      os << text;
    }
    return outcome.status;
  }
  catch (const std::exception &e)
  {
    std::cerr << "formbound: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace formbound::cli
