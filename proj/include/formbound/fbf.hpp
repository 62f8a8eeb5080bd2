// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_FBF_HPP
#define FORMBOUND_FBF_HPP

#include <cstdint>
#include <filesystem>
#include <vector>

#include "formbound/field.hpp"

namespace formbound
{

//
// FBF1 field files:
//   bytes 0-3   magic "FBF1"
//   u32 LE      version (= 1)
//   u32 LE      dim
//   u32 LE x dim points per axis
//   u32 LE      component count (1, dim or dim^2)
//   u32 LE      dtype (0 = real64, 1 = complex128)
//   samples     component-major, C-order within a component, IEEE-754 little endian
// The torus period is not stored; callers supply it.
//
enum class FbfDtype : std::uint32_t
{
  real64 = 0,
  complex128 = 1
};

struct FbfContents
{
  Grid grid;
  FbfDtype dtype;
  std::vector<ScalarField> components;

  ScalarField scalar() const;
  VectorField vector() const;
  MatrixField matrix() const;
};

void write_fbf(const std::filesystem::path &path, const std::vector<ScalarField> &components,
               FbfDtype dtype);
void write_fbf(const std::filesystem::path &path, const ScalarField &f);
void write_fbf(const std::filesystem::path &path, const VectorField &v);
void write_fbf(const std::filesystem::path &path, const MatrixField &m);

FbfContents read_fbf(const std::filesystem::path &path, double period);

}  // namespace formbound

#endif  // FORMBOUND_FBF_HPP
