// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_FFT_HPP
#define FORMBOUND_FFT_HPP

#include <complex>
#include <span>
#include <vector>

#include "formbound/grid.hpp"

// Thin wrapper over FFTW. Plans are cached per shape and reused; execution is reentrant.
namespace formbound::fft
{

/// Unnormalized forward DFT over the grid (sign -1).
void forward(const Grid &grid, std::span<std::complex<double>> data);
/// Inverse DFT including the 1/N normalization.
void inverse(const Grid &grid, std::span<std::complex<double>> data);

/// Type-II discrete sine transform (FFTW RODFT10) on a dim-dimensional cube of m^dim points.
void dst2(int dim, int m, std::span<double> data);
/// Inverse of dst2 including the (2m)^-dim normalization (FFTW RODFT01).
void dst3_normalized(int dim, int m, std::span<double> data);

/// Worker threads FFTW may use; taken from FORMBOUND_THREADS at first use (default 1).
int thread_count();

}  // namespace formbound::fft

#endif  // FORMBOUND_FFT_HPP
