/*
 * Copyright 2026 The Homtype Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef HOMTYPE_SPACE_H_
#define HOMTYPE_SPACE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "homtype/common.h"

namespace homtype {

// A finite quasi-metric measure space. Distances come either from an
// explicit table or from coordinates raised to a snowflake exponent.
class FiniteHomSpace {
 public:
  FiniteHomSpace() = default;

  // Row-major n x n table. The table is stored as given so that
  // ValidateQuasiMetric can report asymmetric input.
  static FiniteHomSpace FromTable(int n, std::vector<double> table,
                                  std::vector<double> weights);

  // dist(i, j) = |x_i - x_j|^exponent with the Euclidean norm.
  static FiniteHomSpace FromPoints(int dim, std::vector<double> coords,
                                   std::vector<double> weights,
                                   double exponent = 1.);

  int size() const { return n_; }
  int dim() const { return dim_; }
  bool has_coords() const { return !coords_.empty(); }
  double exponent() const { return exponent_; }
  const std::vector<double>& coords() const { return coords_; }
  const double* point(int i) const { return coords_.data() + i * dim_; }
  const std::vector<double>& table() const { return table_; }

  double dist(int i, int j) const;
  double weight(int i) const { return weights_[i]; }
  const std::vector<double>& weights() const { return weights_; }
  double total_mass() const { return total_mass_; }

  // Largest pairwise distance; 0 for a single point.
  double diameter() const { return diameter_; }
  // Smallest positive pairwise distance; 0 when there is none.
  double r_floor() const { return r_floor_; }

  // "euclidean", "snowflake:<e>" or "explicit".
  std::string metric_name() const;

  std::optional<double> declared_a0;
  std::optional<double> declared_omega;

 private:
  void ComputeExtents();

  int n_ = 0;
  int dim_ = 0;
  double exponent_ = 1.;
  std::vector<double> coords_;
  std::vector<double> table_;
  std::vector<double> weights_;
  double total_mass_ = 0.;
  double diameter_ = 0.;
  double r_floor_ = 0.;
};

// Distances from one center sorted ascending with prefix masses, so that
// ball masses at many radii cost one binary search each.
class BallProfile {
 public:
  BallProfile(const FiniteHomSpace& space, int center);

  // mass(B(center, r)) with the strict inequality dist < r.
  double Mass(double r) const;
  // Number of members of B(center, r).
  int Count(double r) const;
  const std::vector<std::pair<double, int>>& sorted() const { return sorted_; }
  const std::vector<double>& prefix() const { return prefix_; }

 private:
  std::vector<std::pair<double, int>> sorted_;
  // prefix_[i] = mass of the first i entries of sorted_.
  std::vector<double> prefix_;
};

double BallMass(const FiniteHomSpace& space, int center, double r);
std::vector<int> BallMembers(const FiniteHomSpace& space, int center,
                             double r);

// `count` radii spaced geometrically from lo to hi inclusive.
std::vector<double> GeometricRadii(double lo, double hi, int count);

struct SamplingOptions {
  int exhaustive_cutoff = 512;
  int64_t samples = 200000;
  uint64_t seed = kDefaultSeed;
};

struct MetricViolation {
  std::string kind;  // symmetry | nonnegativity | identity | triangle
  std::vector<int> ids;
  double lhs = 0.;
  double rhs = 0.;
};

struct QuasiMetricVerdict {
  bool ok = true;
  double a0_used = 1.;
  bool a0_declared = false;
  int64_t violation_count = 0;
  std::vector<MetricViolation> violations;  // first 64 only
};

// Throws "empty space" / "invalid measure".
QuasiMetricVerdict ValidateQuasiMetric(const FiniteHomSpace& space,
                                       const SamplingOptions& options = {});

struct A0Estimate {
  double value = 1.;
  bool exhaustive = true;
  bool degenerate = false;
  int64_t triples = 0;
  std::array<int, 3> witness = {-1, -1, -1};  // (x, y, z)
};

A0Estimate EstimateQuasiTriangleConstant(const FiniteHomSpace& space,
                                         const SamplingOptions& options = {});

struct DoublingEstimate {
  double c_doubling = 1.;
  double omega = 0.;
  int witness_x = 0;
  double witness_r = 0.;
};

DoublingEstimate EstimateDoubling(const FiniteHomSpace& space,
                                  const std::vector<double>& radii);

struct GrowthExponent {
  double exponent = 0.;  // median over centers
  double min_exponent = 0.;
  double max_exponent = 0.;
  std::vector<double> radii;
};

// Median per-center least-squares slope of log mass against log radius.
GrowthExponent EstimateGrowthExponent(const FiniteHomSpace& space,
                                      const std::vector<double>& radii,
                                      int threads = 1);

// Radii from 2 * r_floor to diameter / 2, the default for the estimators.
std::vector<double> DefaultEstimatorRadii(const FiniteHomSpace& space,
                                          int count = 12);

struct LowerBoundOptions {
  int num_radii = 16;
  double exponent_tolerance = 0.2;
  double decay_ratio = 0.1;
  // Two-sided trend: a decay as r grows counts too. Set for the global
  // bound, cleared for the local one.
  bool two_sided = true;
  // Distances are multiplied by this factor; 0 picks 1 / diameter.
  double rescale = 1.;
  int threads = 1;
};

struct LowerBoundWitness {
  int x = -1;
  double r = 0.;
  double mass = 0.;
  double constant = 0.;
  double fitted_exponent = 0.;
  double decay = 1.;
  std::string direction;  // small-r | large-r
};

struct LowerBoundReport {
  Verdict verdict = Verdict::kPass;
  bool local = false;
  bool atomic = false;
  bool insufficient_data = false;
  double omega = 0.;
  double r_min = 0.;
  double r_max = 0.;
  double rescale = 1.;
  double r_floor = 0.;
  double exponent_tolerance = 0.2;
  double decay_ratio = 0.1;
  double c_est = 0.;
  int c_witness_x = -1;
  double c_witness_r = 0.;
  double min_fitted_exponent = 0.;
  double max_fitted_exponent = 0.;
  std::vector<double> radii;
  std::vector<double> c_by_radius;
  std::vector<LowerBoundWitness> witnesses;
  std::vector<std::string> warnings;
};

LowerBoundReport CheckLowerBound(const FiniteHomSpace& space, double omega,
                                 double r_min, double r_max,
                                 const LowerBoundOptions& options = {});

// Same check with r_max = 1 after the optional rescale, one-sided trend.
LowerBoundReport CheckLocalLowerBound(const FiniteHomSpace& space,
                                      double omega,
                                      LowerBoundOptions options = {});

struct ReverseDoublingOptions {
  int num_radii = 12;
  int num_lambdas = 12;
  double decay_ratio = 0.1;
  int threads = 1;
};

struct ReverseDoublingReport {
  Verdict verdict = Verdict::kPass;
  bool atomic_like = false;
  double kappa = 0.;
  double c = 0.;
  int witness_x = -1;
  double witness_r = 0.;
  double witness_lambda = 1.;
  std::vector<double> radii;
  std::vector<double> c_by_radius;
  std::vector<std::string> warnings;
};

ReverseDoublingReport CheckReverseDoubling(
    const FiniteHomSpace& space, double kappa,
    const ReverseDoublingOptions& options = {});

}  // namespace homtype

#endif  // HOMTYPE_SPACE_H_
