// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_FLAVOR_HPP
#define FORMBOUND_FLAVOR_HPP

namespace formbound
{

/// Homogeneous: energy ||grad u||^2 on zero-mean fields (or grounded fields for capacity).
/// Inhomogeneous: energy ||u||^2 + ||grad u||^2 on all fields.
enum class Flavor
{
  homogeneous,
  inhomogeneous
};

inline const char *to_string(Flavor f) noexcept
{
  return f == Flavor::homogeneous ? "homogeneous" : "inhomogeneous";
}

}  // namespace formbound

#endif  // FORMBOUND_FLAVOR_HPP
