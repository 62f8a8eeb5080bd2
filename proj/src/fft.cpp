// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#include "formbound/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace formbound::fft
{

namespace
{

enum class Kind
{
  c2c_forward,
  c2c_backward,
  r2r_dst2,
  r2r_dst3
};

struct FftwFree
{
  void operator()(void *p) const noexcept { fftw_free(p); }
};

struct PlanCache
{
  std::mutex mutex;
  std::map<std::tuple<Kind, int, int>, fftw_plan> plans;
  bool threads_ready = false;
  int threads = 1;

  ~PlanCache()
  {
    for (auto &[key, plan] : plans)
    {
      fftw_destroy_plan(plan);
    }
  }
};

PlanCache &cache()
{
  static PlanCache c;
  return c;
}

void init_threads_locked(PlanCache &c)
{
  if (c.threads_ready)
  {
    return;
  }
  c.threads_ready = true;
  if (const char *env = std::getenv("FORMBOUND_THREADS"))
  {
    c.threads = std::max(1, std::atoi(env));
  }
  if (c.threads > 1 && fftw_init_threads() != 0)
  {
    fftw_plan_with_nthreads(c.threads);
  }
  else
  {
    c.threads = 1;
  }
}

// Plans are created in place on an aligned scratch buffer; executions copy through an
// aligned buffer of the same size so the new-array interface stays valid.
fftw_plan get_plan(Kind kind, int dim, int n)
{
  PlanCache &c = cache();
  std::lock_guard lock(c.mutex);
  init_threads_locked(c);
  const auto key = std::make_tuple(kind, dim, n);
  if (auto it = c.plans.find(key); it != c.plans.end())
  {
    return it->second;
  }
  int dims[3] = {n, n, n};
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d)
  {
    total *= static_cast<std::size_t>(n);
  }
  fftw_plan plan = nullptr;
  if (kind == Kind::c2c_forward || kind == Kind::c2c_backward)
  {
    std::unique_ptr<fftw_complex, FftwFree> buf(fftw_alloc_complex(total));
    plan = fftw_plan_dft(dim, dims, buf.get(), buf.get(),
                         kind == Kind::c2c_forward ? FFTW_FORWARD : FFTW_BACKWARD,
                         FFTW_ESTIMATE);
  }
  else
  {
    std::unique_ptr<double, FftwFree> buf(fftw_alloc_real(total));
    fftw_r2r_kind kinds[3];
    std::fill(kinds, kinds + 3, kind == Kind::r2r_dst2 ? FFTW_RODFT10 : FFTW_RODFT01);
    plan = fftw_plan_r2r(dim, dims, buf.get(), buf.get(), kinds, FFTW_ESTIMATE);
  }
  if (plan == nullptr)
  {
    throw std::runtime_error("FFTW plan creation failed");
  }
  c.plans.emplace(key, plan);
  return plan;
}

void run_c2c(Kind kind, const Grid &grid, std::span<std::complex<double>> data)
{
  if (data.size() != grid.size())
  {
    throw std::invalid_argument("FFT buffer size does not match grid");
  }
  fftw_plan plan = get_plan(kind, grid.dim(), grid.points_per_axis());
  std::unique_ptr<fftw_complex, FftwFree> buf(fftw_alloc_complex(data.size()));
  std::memcpy(buf.get(), data.data(), data.size() * sizeof(fftw_complex));
  fftw_execute_dft(plan, buf.get(), buf.get());
  std::memcpy(static_cast<void *>(data.data()), buf.get(), data.size() * sizeof(fftw_complex));
}

void run_r2r(Kind kind, int dim, int m, std::span<double> data)
{
  fftw_plan plan = get_plan(kind, dim, m);
  std::unique_ptr<double, FftwFree> buf(fftw_alloc_real(data.size()));
  std::memcpy(buf.get(), data.data(), data.size() * sizeof(double));
  fftw_execute_r2r(plan, buf.get(), buf.get());
  std::memcpy(data.data(), buf.get(), data.size() * sizeof(double));
}

}  // namespace

void forward(const Grid &grid, std::span<std::complex<double>> data)
{
  run_c2c(Kind::c2c_forward, grid, data);
}

void inverse(const Grid &grid, std::span<std::complex<double>> data)
{
  run_c2c(Kind::c2c_backward, grid, data);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto &z : data)
  {
    z *= scale;
  }
}

void dst2(int dim, int m, std::span<double> data)
{
  run_r2r(Kind::r2r_dst2, dim, m, data);
}

void dst3_normalized(int dim, int m, std::span<double> data)
{
  run_r2r(Kind::r2r_dst3, dim, m, data);
  const double scale = 1.0 / std::pow(2.0 * m, dim);
  for (auto &x : data)
  {
    x *= scale;
  }
}

int thread_count()
{
  PlanCache &c = cache();
  std::lock_guard lock(c.mutex);
  init_threads_locked(c);
  return c.threads;
}

}  // namespace formbound::fft
