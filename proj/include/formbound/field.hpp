// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_FIELD_HPP
#define FORMBOUND_FIELD_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "formbound/grid.hpp"

namespace formbound
{

using Complex = std::complex<double>;

//
// Complex samples of a function on a Grid, C-order. A field flagged real carries exactly
// zero imaginary parts; the flag is dropped by operations that can create imaginary content
// (e.g. odd-order spectral derivatives, whose Nyquist bin is not self-conjugate).
//
class ScalarField
{
public:
  explicit ScalarField(const Grid &grid);
  ScalarField(const Grid &grid, std::vector<Complex> values, bool real = false);
  ScalarField(const Grid &grid, const std::vector<double> &values);

  static ScalarField constant(const Grid &grid, Complex value);
  static ScalarField sample(const Grid &grid, const std::function<double(const Point &)> &f);
  static ScalarField sample_complex(const Grid &grid,
                                    const std::function<Complex(const Point &)> &f);

  const Grid &grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool is_real() const noexcept { return real_; }

  std::span<const Complex> values() const noexcept { return values_; }
  std::span<Complex> values() noexcept { return values_; }
  const Complex &operator[](std::size_t i) const noexcept { return values_[i]; }
  Complex &operator[](std::size_t i) noexcept { return values_[i]; }

  /// Zero the imaginary parts and flag the field real.
  ScalarField &make_real();
  /// Flag as complex (after in-place edits that may add imaginary parts).
  ScalarField &make_complex() noexcept
  {
    real_ = false;
    return *this;
  }

  std::vector<double> real_values() const;
  ScalarField conj() const;
  ScalarField abs() const;

  ScalarField &operator+=(const ScalarField &o);
  ScalarField &operator-=(const ScalarField &o);
  /// Pointwise product.
  ScalarField &operator*=(const ScalarField &o);
  ScalarField &operator*=(Complex a);
  ScalarField &operator*=(double a);

  friend ScalarField operator+(ScalarField a, const ScalarField &b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField &b) { return a -= b; }
  friend ScalarField operator*(ScalarField a, const ScalarField &b) { return a *= b; }
  friend ScalarField operator*(Complex s, ScalarField a) { return a *= s; }
  friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

  bool all_finite() const noexcept;

private:
  Grid grid_;
  std::vector<Complex> values_;
  bool real_;
};

/// dim components on a shared grid.
class VectorField
{
public:
  explicit VectorField(const Grid &grid);
  explicit VectorField(std::vector<ScalarField> components);

  const Grid &grid() const noexcept { return components_.front().grid(); }
  int dim() const noexcept { return static_cast<int>(components_.size()); }
  const ScalarField &operator[](int i) const { return components_[i]; }
  ScalarField &operator[](int i) { return components_[i]; }
  const std::vector<ScalarField> &components() const noexcept { return components_; }

  VectorField &operator+=(const VectorField &o);
  VectorField &operator-=(const VectorField &o);
  VectorField &operator*=(Complex a);
  friend VectorField operator+(VectorField a, const VectorField &b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField &b) { return a -= b; }
  friend VectorField operator*(Complex s, VectorField a) { return a *= s; }

  /// Pointwise |v|^2 = sum_i |v_i|^2 (real).
  ScalarField squared_modulus() const;
  /// Pointwise v . w without conjugation.
  ScalarField dot(const VectorField &w) const;
  bool all_finite() const noexcept;

private:
  std::vector<ScalarField> components_;
};

/// dim x dim entries on a shared grid, row-major.
class MatrixField
{
public:
  explicit MatrixField(const Grid &grid);
  MatrixField(int dim, std::vector<ScalarField> entries, bool skew_symmetric = false);

  static MatrixField identity(const Grid &grid);
  /// Returns 1/2 (M - M^t) flagged skew-symmetric (exact antisymmetry, zero diagonal).
  static MatrixField antisymmetrize(const MatrixField &m);

  const Grid &grid() const noexcept { return entries_.front().grid(); }
  int dim() const noexcept { return dim_; }
  bool skew_symmetric() const noexcept { return skew_; }

  const ScalarField &operator()(int i, int j) const { return entries_[i * dim_ + j]; }
  ScalarField &operator()(int i, int j) { return entries_[i * dim_ + j]; }
  const std::vector<ScalarField> &entries() const noexcept { return entries_; }

  MatrixField transpose() const;
  /// 1/2 (M + M^t).
  MatrixField symmetric_part() const;
  MatrixField &operator+=(const MatrixField &o);
  MatrixField &operator-=(const MatrixField &o);
  MatrixField &operator*=(Complex a);
  friend MatrixField operator+(MatrixField a, const MatrixField &b) { return a += b; }
  friend MatrixField operator-(MatrixField a, const MatrixField &b) { return a -= b; }

  /// M v pointwise.
  VectorField apply(const VectorField &v) const;
  /// Largest |m_ij - (-m_ji)| relative to the largest entry; 0 for exact skew fields.
  double skew_defect() const;
  bool all_finite() const noexcept;

private:
  int dim_;
  std::vector<ScalarField> entries_;
  bool skew_;
};

}  // namespace formbound

#endif  // FORMBOUND_FIELD_HPP
