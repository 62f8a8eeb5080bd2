// Copyright (c) formbound contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FORMBOUND_VERDICT_HPP
#define FORMBOUND_VERDICT_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "formbound/field.hpp"
#include "formbound/form_norm.hpp"
#include "formbound/measure.hpp"

namespace formbound
{

enum class Pipeline
{
  homogeneous,
  inhomogeneous,
  magnetic,
  infinitesimal
};

enum class Outcome
{
  certified_bounded,
  certified_unbounded_n2,
  inconclusive
};

enum class Role
{
  necessary,   ///< failure rules out a bounded form
  sufficient,  ///< passing, with every necessary record, certifies a bounded form
  diagnostic   ///< reported only
};

const char *to_string(Pipeline p) noexcept;
const char *to_string(Outcome o) noexcept;
const char *to_string(Role r) noexcept;

//
// Envelopes for the pass flags. The characterizations are qualitative, so every threshold here
// is a configuration choice. An infinite threshold means the record only checks finiteness.
//
struct VerdictConfig
{
  double carleson_threshold = 10.0;
  double ball_threshold = 10.0;
  double bmo_threshold = 10.0;
  double fefferman_phong_threshold = 10.0;
  double fefferman_phong_eps = 0.5;
  /// Trace constants of the admissibility measures.
  double trace_threshold = 10.0;
  /// Direct form norm; the square root of trace_threshold, since ||b . grad|| ~ sqrt(trace |b|^2).
  double form_threshold = std::sqrt(10.0);
  /// Two dimensions: relative size of div b1 and absolute L1 size of q that count as zero.
  double n2_tolerance = 1e-8;
  /// Infinitesimal profiles: minimum decay factor per halving of delta.
  double decay_factor = 1.5;
  int bmo_exponent = 1;
  /// Ball radii; empty means default_radii(grid).
  std::vector<double> radii;
  FormOptions form{};
};

struct ConditionRecord
{
  std::string id;
  Role role = Role::necessary;
  double constant = 0.0;
  double threshold = std::numeric_limits<double>::infinity();
  bool pass = true;
  bool converged = true;
  Witness witness;
};

struct DecayProfile
{
  std::vector<double> delta;  ///< decreasing
  std::vector<double> value;
  /// Decay factor per halving between consecutive entries.
  std::vector<double> decay;
  bool decays = true;
};

struct Verdict
{
  Pipeline pipeline = Pipeline::homogeneous;
  Grid grid{3, 16};
  std::vector<ConditionRecord> records;
  Outcome overall = Outcome::inconclusive;
  /// Norm of the form itself: the direct estimate, or the commutator in the two-dimensional
  /// divergence-free branch with A = 0.
  double form_constant = 0.0;
  std::optional<DecayProfile> vmo;
  std::optional<DecayProfile> local_trace;
  VerdictConfig config;

  const ConditionRecord *find(const std::string &id) const;
  bool necessary_failed() const;
};

/// B(u, v) = -<A grad u, grad v> + <b . grad u, v> + <q u, v> against the Dirichlet energy.
Verdict assess_homogeneous(const MatrixField &A, const VectorField &b, const ScalarField &q,
                           const VerdictConfig &config = {});
/// The same form against the full Sobolev energy.
Verdict assess_inhomogeneous(const MatrixField &A, const VectorField &b, const ScalarField &q,
                             const VerdictConfig &config = {});
/// (i grad + a)^2 + q with real a: the homogeneous pipeline on a . grad and q + |a|^2.
Verdict assess_magnetic(const VectorField &a, const ScalarField &q,
                        const VerdictConfig &config = {});
/// Small-scale profiles of the inhomogeneous splitting. Every delta must be at least two cells
/// and at most the period.
Verdict assess_infinitesimal(const VectorField &b, const ScalarField &q,
                             std::span<const double> deltas, const VerdictConfig &config = {});

/// Largest power-of-two cube side, in cells, with side * h <= delta.
int cube_side_for(const Grid &grid, double delta);

/// Exit status for a finished verdict: 2 if it certifies unboundedness or a necessary record
/// fails, 0 otherwise.
int exit_status(const Verdict &v) noexcept;

}  // namespace formbound

#endif  // FORMBOUND_VERDICT_HPP
