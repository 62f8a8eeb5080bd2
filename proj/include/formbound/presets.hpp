// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_PRESETS_HPP
#define FORMBOUND_PRESETS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "formbound/field.hpp"
#include "formbound/measure.hpp"

namespace formbound
{

struct PresetOptions
{
  std::uint64_t seed = 7;
  int band = 3;
  double amplitude = 1.0;
};

//
// Analytic test configurations. Each carries operator coefficients (A, b, q), a scalar field
// for the oscillation commands and a measure for the trace-type commands.
//
struct Preset
{
  std::string name;
  MatrixField A;
  VectorField b;
  ScalarField q;
  ScalarField scalar;
  DiscreteMeasure measure;
};

/// Names accepted by make_preset.
const std::vector<std::string> &preset_names();

/// Throws std::invalid_argument for unknown names.
Preset make_preset(const std::string &name, const Grid &grid, const PresetOptions &options = {});

/// b = (x2, -x1, 0) / rho^2 about the axis through (L/2, L/2), |b| capped at 1/(2h), mean removed.
VectorField vortex_field(const Grid &grid);
/// log|2 sin(pi x1 / L)|, with the singular cells set to their cell average log(pi h / L) - 1.
ScalarField log_singular_field(const Grid &grid);
/// Real band-limited field: random coefficients on |k_a| <= band, unit root-mean-square.
ScalarField band_limited_field(const Grid &grid, std::uint64_t seed, int band);

}  // namespace formbound

#endif  // FORMBOUND_PRESETS_HPP
