// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace formbound
{

ScalarField::ScalarField(const Grid &grid) : grid_(grid), values_(grid.size()), real_(true) {}

ScalarField::ScalarField(const Grid &grid, std::vector<Complex> values, bool real)
  : grid_(grid), values_(std::move(values)), real_(real)
{
  if (values_.size() != grid_.size())
  {
    throw std::invalid_argument("field sample count " + std::to_string(values_.size()) +
                                " does not match grid size " + std::to_string(grid_.size()));
  }
  if (real_)
  {
    make_real();
  }
}

ScalarField::ScalarField(const Grid &grid, const std::vector<double> &values)
  : grid_(grid), values_(values.begin(), values.end()), real_(true)
{
  if (values_.size() != grid_.size())
  {
    throw std::invalid_argument("field sample count does not match grid size");
  }
}

ScalarField ScalarField::constant(const Grid &grid, Complex value)
{
  return ScalarField(grid, std::vector<Complex>(grid.size(), value), value.imag() == 0.0);
}

ScalarField ScalarField::sample(const Grid &grid, const std::function<double(const Point &)> &f)
{
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    v[i] = f(grid.position(grid.coords(i)));
  }
  return ScalarField(grid, std::move(v), true);
}

ScalarField ScalarField::sample_complex(const Grid &grid,
                                        const std::function<Complex(const Point &)> &f)
{
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    v[i] = f(grid.position(grid.coords(i)));
  }
  return ScalarField(grid, std::move(v), false);
}

ScalarField &ScalarField::make_real()
{
  for (auto &z : values_)
  {
    z.imag(0.0);
  }
  real_ = true;
  return *this;
}

std::vector<double> ScalarField::real_values() const
{
  std::vector<double> r(values_.size());
  std::transform(values_.begin(), values_.end(), r.begin(), [](Complex z) { return z.real(); });
  return r;
}

ScalarField ScalarField::conj() const
{
  ScalarField out(*this);
  for (auto &z : out.values_)
  {
    z = std::conj(z);
  }
  return out;
}

ScalarField ScalarField::abs() const
{
  ScalarField out(grid_);
  for (std::size_t i = 0; i < values_.size(); ++i)
  {
    out.values_[i] = std::abs(values_[i]);
  }
  return out;
}

ScalarField &ScalarField::operator+=(const ScalarField &o)
{
  require_same_grid(grid_, o.grid_, "field addition");
  for (std::size_t i = 0; i < values_.size(); ++i)
  {
    values_[i] += o.values_[i];
  }
  real_ = real_ && o.real_;
  return *this;
}

ScalarField &ScalarField::operator-=(const ScalarField &o)
{
  require_same_grid(grid_, o.grid_, "field subtraction");
  for (std::size_t i = 0; i < values_.size(); ++i)
  {
    values_[i] -= o.values_[i];
  }
  real_ = real_ && o.real_;
  return *this;
}

ScalarField &ScalarField::operator*=(const ScalarField &o)
{
  require_same_grid(grid_, o.grid_, "field product");
  for (std::size_t i = 0; i < values_.size(); ++i)
  {
    values_[i] *= o.values_[i];
  }
  real_ = real_ && o.real_;
  return *this;
}

ScalarField &ScalarField::operator*=(Complex a)
{
  for (auto &z : values_)
  {
    z *= a;
  }
  real_ = real_ && a.imag() == 0.0;
  return *this;
}

ScalarField &ScalarField::operator*=(double a)
{
  for (auto &z : values_)
  {
    z *= a;
  }
  return *this;
}

bool ScalarField::all_finite() const noexcept
{
  return std::all_of(values_.begin(), values_.end(), [](Complex z)
                     { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

VectorField::VectorField(const Grid &grid)
{
  components_.reserve(grid.dim());
  for (int i = 0; i < grid.dim(); ++i)
  {
    components_.emplace_back(grid);
  }
}

VectorField::VectorField(std::vector<ScalarField> components) : components_(std::move(components))
{
  if (components_.empty())
  {
    throw std::invalid_argument("vector field needs at least one component");
  }
  const Grid &g = components_.front().grid();
  if (static_cast<int>(components_.size()) != g.dim())
  {
    throw std::invalid_argument("vector field component count must equal the grid dimension");
  }
  for (const auto &c : components_)
  {
    require_same_grid(g, c.grid(), "vector field components");
  }
}

VectorField &VectorField::operator+=(const VectorField &o)
{
  for (int i = 0; i < dim(); ++i)
  {
    components_[i] += o.components_.at(i);
  }
  return *this;
}

VectorField &VectorField::operator-=(const VectorField &o)
{
  for (int i = 0; i < dim(); ++i)
  {
    components_[i] -= o.components_.at(i);
  }
  return *this;
}

VectorField &VectorField::operator*=(Complex a)
{
  for (auto &c : components_)
  {
    c *= a;
  }
  return *this;
}

ScalarField VectorField::squared_modulus() const
{
  ScalarField out(grid());
  auto o = out.values();
  for (const auto &c : components_)
  {
    auto v = c.values();
    for (std::size_t i = 0; i < o.size(); ++i)
    {
      o[i] += std::norm(v[i]);
    }
  }
  return out;
}

ScalarField VectorField::dot(const VectorField &w) const
{
  require_same_grid(grid(), w.grid(), "vector dot product");
  ScalarField out(grid());
  bool real = true;
  auto o = out.values();
  for (int d = 0; d < dim(); ++d)
  {
    auto a = components_[d].values();
    auto b = w[d].values();
    for (std::size_t i = 0; i < o.size(); ++i)
    {
      o[i] += a[i] * b[i];
    }
    real = real && components_[d].is_real() && w[d].is_real();
  }
  if (!real)
  {
    out.make_complex();
  }
  return out;
}

bool VectorField::all_finite() const noexcept
{
  return std::all_of(components_.begin(), components_.end(),
                     [](const ScalarField &c) { return c.all_finite(); });
}

MatrixField::MatrixField(const Grid &grid) : dim_(grid.dim()), skew_(false)
{
  entries_.reserve(dim_ * dim_);
  for (int i = 0; i < dim_ * dim_; ++i)
  {
    entries_.emplace_back(grid);
  }
}

MatrixField::MatrixField(int dim, std::vector<ScalarField> entries, bool skew_symmetric)
  : dim_(dim), entries_(std::move(entries)), skew_(false)
{
  if (static_cast<int>(entries_.size()) != dim * dim || entries_.empty())
  {
    throw std::invalid_argument("matrix field needs dim*dim entries");
  }
  const Grid &g = entries_.front().grid();
  if (g.dim() != dim)
  {
    throw std::invalid_argument("matrix field dimension must equal the grid dimension");
  }
  for (const auto &e : entries_)
  {
    require_same_grid(g, e.grid(), "matrix field entries");
  }
  if (skew_symmetric)
  {
    if (skew_defect() > 1e-12)
    {
      throw std::invalid_argument("matrix field flagged skew-symmetric is not skew-symmetric");
    }
    skew_ = true;
  }
}

MatrixField MatrixField::identity(const Grid &grid)
{
  MatrixField m(grid);
  for (int i = 0; i < grid.dim(); ++i)
  {
    m(i, i) = ScalarField::constant(grid, 1.0);
  }
  return m;
}

MatrixField MatrixField::antisymmetrize(const MatrixField &m)
{
  MatrixField out(m.grid());
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
  {
    for (int j = i + 1; j < n; ++j)
    {
      ScalarField a = 0.5 * (m(i, j) - m(j, i));
      out(j, i) = -1.0 * a;
      out(i, j) = std::move(a);
    }
  }
  out.skew_ = true;
  return out;
}

MatrixField MatrixField::transpose() const
{
  MatrixField out(grid());
  for (int i = 0; i < dim_; ++i)
  {
    for (int j = 0; j < dim_; ++j)
    {
      out(i, j) = (*this)(j, i);
    }
  }
  return out;
}

MatrixField MatrixField::symmetric_part() const
{
  MatrixField out(grid());
  for (int i = 0; i < dim_; ++i)
  {
    for (int j = 0; j < dim_; ++j)
    {
      out(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    }
  }
  return out;
}

MatrixField &MatrixField::operator+=(const MatrixField &o)
{
  for (std::size_t k = 0; k < entries_.size(); ++k)
  {
    entries_[k] += o.entries_.at(k);
  }
  skew_ = skew_ && o.skew_;
  return *this;
}

MatrixField &MatrixField::operator-=(const MatrixField &o)
{
  for (std::size_t k = 0; k < entries_.size(); ++k)
  {
    entries_[k] -= o.entries_.at(k);
  }
  skew_ = skew_ && o.skew_;
  return *this;
}

MatrixField &MatrixField::operator*=(Complex a)
{
  for (auto &e : entries_)
  {
    e *= a;
  }
  return *this;
}

VectorField MatrixField::apply(const VectorField &v) const
{
  require_same_grid(grid(), v.grid(), "matrix-vector product");
  VectorField out(grid());
  for (int i = 0; i < dim_; ++i)
  {
    ScalarField acc(grid());
    for (int j = 0; j < dim_; ++j)
    {
      acc += (*this)(i, j) * v[j];
    }
    out[i] = std::move(acc);
  }
  return out;
}

double MatrixField::skew_defect() const
{
  double scale = 0.0;
  for (const auto &e : entries_)
  {
    for (Complex z : e.values())
    {
      scale = std::max(scale, std::abs(z));
    }
  }
  if (scale == 0.0)
  {
    return 0.0;
  }
  double defect = 0.0;
  for (int i = 0; i < dim_; ++i)
  {
    for (int j = i; j < dim_; ++j)
    {
      auto a = (*this)(i, j).values();
      auto b = (*this)(j, i).values();
      for (std::size_t k = 0; k < a.size(); ++k)
      {
        defect = std::max(defect, std::abs(a[k] + b[k]));
      }
    }
  }
  return defect / scale;
}

bool MatrixField::all_finite() const noexcept
{
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const ScalarField &e) { return e.all_finite(); });
}

}  // namespace formbound
