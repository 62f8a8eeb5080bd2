// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/fbf.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace formbound
{

namespace
{

static_assert(std::endian::native == std::endian::little,
              "FBF1 I/O assumes a little-endian host");

constexpr std::array<char, 4> kMagic{'F', 'B', 'F', '1'};

void put_u32(std::ostream &os, std::uint32_t v)
{
  os.write(reinterpret_cast<const char *>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream &is)
{
  std::uint32_t v = 0;
  if (!is.read(reinterpret_cast<char *>(&v), sizeof v))
  {
    throw std::runtime_error("FBF1: truncated header");
  }
  return v;
}

void put_f64(std::ostream &os, double v)
{
  os.write(reinterpret_cast<const char *>(&v), sizeof v);
}

}  // namespace

ScalarField FbfContents::scalar() const
{
  if (components.size() != 1)
  {
    throw std::invalid_argument("FBF1: expected a scalar field");
  }
  return components.front();
}

VectorField FbfContents::vector() const
{
  if (static_cast<int>(components.size()) != grid.dim())
  {
    throw std::invalid_argument("FBF1: expected a vector field");
  }
  return VectorField(components);
}

MatrixField FbfContents::matrix() const
{
  if (static_cast<int>(components.size()) != grid.dim() * grid.dim())
  {
    throw std::invalid_argument("FBF1: expected a matrix field");
  }
  return MatrixField(grid.dim(), components);
}

void write_fbf(const std::filesystem::path &path, const std::vector<ScalarField> &components,
               FbfDtype dtype)
{
  if (components.empty())
  {
    throw std::invalid_argument("FBF1: nothing to write");
  }
  const Grid &g = components.front().grid();
  const std::size_t count = components.size();
  const auto d = static_cast<std::size_t>(g.dim());
  if (count != 1 && count != d && count != d * d)
  {
    throw std::invalid_argument("FBF1: component count must be 1, dim or dim^2");
  }
  std::ofstream os(path, std::ios::binary);
  if (!os)
  {
    throw std::runtime_error("FBF1: cannot open " + path.string() + " for writing");
  }
  os.write(kMagic.data(), kMagic.size());
  put_u32(os, 1);
  put_u32(os, static_cast<std::uint32_t>(g.dim()));
  for (int i = 0; i < g.dim(); ++i)
  {
    put_u32(os, static_cast<std::uint32_t>(g.points_per_axis()));
  }
  put_u32(os, static_cast<std::uint32_t>(count));
  put_u32(os, static_cast<std::uint32_t>(dtype));
  for (const auto &c : components)
  {
    require_same_grid(g, c.grid(), "FBF1 components");
    for (Complex z : c.values())
    {
      put_f64(os, z.real());
      if (dtype == FbfDtype::complex128)
      {
        put_f64(os, z.imag());
      }
    }
  }
  if (!os)
  {
    throw std::runtime_error("FBF1: write failed for " + path.string());
  }
}

void write_fbf(const std::filesystem::path &path, const ScalarField &f)
{
  write_fbf(path, std::vector<ScalarField>{f},
            f.is_real() ? FbfDtype::real64 : FbfDtype::complex128);
}

void write_fbf(const std::filesystem::path &path, const VectorField &v)
{
  const bool real = std::all_of(v.components().begin(), v.components().end(),
                                [](const ScalarField &c) { return c.is_real(); });
  write_fbf(path, v.components(), real ? FbfDtype::real64 : FbfDtype::complex128);
}

void write_fbf(const std::filesystem::path &path, const MatrixField &m)
{
  const bool real = std::all_of(m.entries().begin(), m.entries().end(),
                                [](const ScalarField &c) { return c.is_real(); });
  write_fbf(path, m.entries(), real ? FbfDtype::real64 : FbfDtype::complex128);
}

FbfContents read_fbf(const std::filesystem::path &path, double period)
{
  std::ifstream is(path, std::ios::binary);
  if (!is)
  {
    throw std::runtime_error("FBF1: cannot open " + path.string());
  }
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic)
  {
    throw std::runtime_error("FBF1: bad magic in " + path.string());
  }
  if (const auto version = get_u32(is); version != 1)
  {
    throw std::runtime_error("FBF1: unsupported version " + std::to_string(version));
  }
  const auto dim = static_cast<int>(get_u32(is));
  if (dim < 2 || dim > 3)
  {
    throw std::runtime_error("FBF1: unsupported dimension " + std::to_string(dim));
  }
  std::vector<std::uint32_t> axes(dim);
  for (auto &a : axes)
  {
    a = get_u32(is);
  }
  if (!std::all_of(axes.begin(), axes.end(), [&](std::uint32_t a) { return a == axes[0]; }))
  {
    throw std::runtime_error("FBF1: anisotropic grids are not supported");
  }
  const Grid grid(dim, static_cast<int>(axes[0]), period);
  const std::uint32_t count = get_u32(is);
  if (count != 1 && count != static_cast<std::uint32_t>(dim) &&
      count != static_cast<std::uint32_t>(dim * dim))
  {
    throw std::runtime_error("FBF1: invalid component count " + std::to_string(count));
  }
  const std::uint32_t dt = get_u32(is);
  if (dt > 1)
  {
    throw std::runtime_error("FBF1: invalid dtype code " + std::to_string(dt));
  }
  const auto dtype = static_cast<FbfDtype>(dt);
  const std::size_t per = dtype == FbfDtype::complex128 ? 2 : 1;

  FbfContents out{grid, dtype, {}};
  out.components.reserve(count);
  std::vector<double> raw(grid.size() * per);
  for (std::uint32_t c = 0; c < count; ++c)
  {
    if (!is.read(reinterpret_cast<char *>(raw.data()),
                 static_cast<std::streamsize>(raw.size() * sizeof(double))))
    {
      throw std::runtime_error("FBF1: truncated sample data in " + path.string());
    }
    std::vector<Complex> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      v[i] = per == 2 ? Complex(raw[2 * i], raw[2 * i + 1]) : Complex(raw[i], 0.0);
    }
    out.components.emplace_back(grid, std::move(v), dtype == FbfDtype::real64);
  }
  return out;
}

}  // namespace formbound
