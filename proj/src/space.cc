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

#include "homtype/space.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace homtype {

namespace {

constexpr int kMaxListedViolations = 64;

void RequireNonEmpty(const FiniteHomSpace& space) {
  if (space.size() == 0) throw Error(kExitUsage, "empty space");
}

void RequirePositiveWeights(const FiniteHomSpace& space) {
  for (int i = 0; i < space.size(); ++i) {
    if (!(space.weight(i) > 0.) || !std::isfinite(space.weight(i))) {
      std::ostringstream msg;
      msg << "invalid measure: weight[" << i << "] = " << space.weight(i);
      throw Error(kExitUsage, msg.str());
    }
  }
}

// Dense copy of the distance table for the cubic scans.
std::vector<double> DenseTable(const FiniteHomSpace& space) {
  const int n = space.size();
  std::vector<double> d(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) d[static_cast<size_t>(i) * n + j] = space.dist(i, j);
  }
  return d;
}

}  // namespace

FiniteHomSpace FiniteHomSpace::FromTable(int n, std::vector<double> table,
                                         std::vector<double> weights) {
  if (static_cast<int64_t>(table.size()) != static_cast<int64_t>(n) * n ||
      static_cast<int>(weights.size()) != n) {
    throw Error(kExitUsage, "distance table and weights disagree in size");
  }
  FiniteHomSpace space;
  space.n_ = n;
  space.table_ = std::move(table);
  space.weights_ = std::move(weights);
  space.ComputeExtents();
  return space;
}

FiniteHomSpace FiniteHomSpace::FromPoints(int dim, std::vector<double> coords,
                                          std::vector<double> weights,
                                          double exponent) {
  if (dim <= 0 || coords.size() != weights.size() * dim) {
    throw Error(kExitUsage, "coordinates and weights disagree in size");
  }
  if (!(exponent > 0.)) throw Error(kExitUsage, "snowflake exponent must be > 0");
  FiniteHomSpace space;
  space.n_ = static_cast<int>(weights.size());
  space.dim_ = dim;
  space.exponent_ = exponent;
  space.coords_ = std::move(coords);
  space.weights_ = std::move(weights);
  space.ComputeExtents();
  return space;
}

double FiniteHomSpace::dist(int i, int j) const {
  if (coords_.empty()) return table_[static_cast<size_t>(i) * n_ + j];
  const double* a = point(i);
  const double* b = point(j);
  double sq = 0.;
  for (int c = 0; c < dim_; ++c) sq += (a[c] - b[c]) * (a[c] - b[c]);
  const double d = std::sqrt(sq);
  return exponent_ == 1. ? d : std::pow(d, exponent_);
}

std::string FiniteHomSpace::metric_name() const {
  if (coords_.empty()) return "explicit";
  if (exponent_ == 1.) return "euclidean";
  std::ostringstream name;
  name.precision(17);
  name << "snowflake:" << exponent_;
  return name.str();
}

void FiniteHomSpace::ComputeExtents() {
  total_mass_ = 0.;
  for (double w : weights_) total_mass_ += w;
  diameter_ = 0.;
  double floor = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (i == j) continue;
      const double d = dist(i, j);
      diameter_ = std::max(diameter_, d);
      if (d > 0.) floor = std::min(floor, d);
    }
  }
  r_floor_ = std::isfinite(floor) ? floor : 0.;
}

BallProfile::BallProfile(const FiniteHomSpace& space, int center) {
  const int n = space.size();
  sorted_.resize(n);
  for (int j = 0; j < n; ++j) sorted_[j] = {space.dist(center, j), j};
  std::sort(sorted_.begin(), sorted_.end());
  prefix_.assign(n + 1, 0.);
  for (int j = 0; j < n; ++j) {
    prefix_[j + 1] = prefix_[j] + space.weight(sorted_[j].second);
  }
}

int BallProfile::Count(double r) const {
  auto it = std::lower_bound(
      sorted_.begin(), sorted_.end(), r,
      [](const std::pair<double, int>& e, double v) { return e.first < v; });
  return static_cast<int>(it - sorted_.begin());
}

double BallProfile::Mass(double r) const { return prefix_[Count(r)]; }

double BallMass(const FiniteHomSpace& space, int center, double r) {
  double mass = 0.;
  for (int j = 0; j < space.size(); ++j) {
    if (space.dist(center, j) < r) mass += space.weight(j);
  }
  return mass;
}

std::vector<int> BallMembers(const FiniteHomSpace& space, int center,
                             double r) {
  std::vector<int> members;
  for (int j = 0; j < space.size(); ++j) {
    if (space.dist(center, j) < r) members.push_back(j);
  }
  return members;
}

std::vector<double> GeometricRadii(double lo, double hi, int count) {
  std::vector<double> radii;
  if (count <= 1 || !(hi > lo)) {
    radii.push_back(lo);
    return radii;
  }
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) radii.push_back(lo * std::exp(step * i));
  radii.back() = hi;
  return radii;
}

QuasiMetricVerdict ValidateQuasiMetric(const FiniteHomSpace& space,
                                       const SamplingOptions& options) {
  RequireNonEmpty(space);
  RequirePositiveWeights(space);
  QuasiMetricVerdict verdict;
  const int n = space.size();
  auto add = [&verdict](MetricViolation v) {
    ++verdict.violation_count;
    if (verdict.violations.size() < kMaxListedViolations) {
      verdict.violations.push_back(std::move(v));
    }
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double d = space.dist(i, j);
      if (!(d >= 0.)) add({"nonnegativity", {i, j}, d, 0.});
      if (i == j && d != 0.) add({"identity", {i, j}, d, 0.});
      if (i != j && d == 0.) add({"identity", {i, j}, d, 0.});
      if (i < j && d != space.dist(j, i)) {
        add({"symmetry", {i, j}, d, space.dist(j, i)});
      }
    }
  }
  if (space.declared_a0.has_value()) {
    verdict.a0_declared = true;
    verdict.a0_used = *space.declared_a0;
    const double a0 = verdict.a0_used;
    auto check = [&](int x, int y, int z) {
      const double lhs = space.dist(x, y);
      const double rhs = a0 * (space.dist(x, z) + space.dist(z, y));
      // Relative slack absorbs rounding on collinear triples.
      if (lhs > rhs * (1. + 1e-12)) add({"triangle", {x, y, z}, lhs, rhs});
    };
    if (n <= options.exhaustive_cutoff) {
      for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
          if (y == x) continue;
          for (int z = 0; z < n; ++z) {
            if (z != x && z != y) check(x, y, z);
          }
        }
      }
    } else {
      Rng rng(options.seed);
      for (int64_t s = 0; s < options.samples; ++s) {
        const int x = rng.Index(n);
        const int y = rng.Index(n);
        const int z = rng.Index(n);
        if (x != y && y != z && x != z) check(x, y, z);
      }
    }
  } else {
    // Without a declared constant the estimate is used, which certifies the
    // scanned triples by construction.
    verdict.a0_used = EstimateQuasiTriangleConstant(space, options).value;
  }
  verdict.ok = verdict.violation_count == 0;
  return verdict;
}

A0Estimate EstimateQuasiTriangleConstant(const FiniteHomSpace& space,
                                         const SamplingOptions& options) {
  A0Estimate estimate;
  const int n = space.size();
  if (n < 3) {
    estimate.degenerate = true;
    return estimate;
  }
  double best = 0.;
  auto consider = [&](int x, int y, int z, double dxy, double dxz, double dzy) {
    const double denom = dxz + dzy;
    if (!(denom > 0.)) return;
    const double ratio = dxy / denom;
    if (ratio > best) {
      best = ratio;
      estimate.witness = {x, y, z};
    }
  };
  if (n <= options.exhaustive_cutoff) {
    const std::vector<double> d = DenseTable(space);
    auto at = [&d, n](int i, int j) { return d[static_cast<size_t>(i) * n + j]; };
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (y == x) continue;
        const double dxy = at(x, y);
        for (int z = 0; z < n; ++z) {
          if (z == x || z == y) continue;
          consider(x, y, z, dxy, at(x, z), at(z, y));
        }
      }
    }
    estimate.triples = static_cast<int64_t>(n) * (n - 1) * (n - 2);
  } else {
    estimate.exhaustive = false;
    Rng rng(options.seed);
    for (int64_t s = 0; s < options.samples; ++s) {
      const int x = rng.Index(n);
      const int y = rng.Index(n);
      const int z = rng.Index(n);
      if (x == y || y == z || x == z) continue;
      consider(x, y, z, space.dist(x, y), space.dist(x, z), space.dist(z, y));
      ++estimate.triples;
    }
  }
  // Collinear triples of a true metric can round to 1 + ulp.
  estimate.value = best < 1. + 1e-12 ? 1. : best;
  return estimate;
}

DoublingEstimate EstimateDoubling(const FiniteHomSpace& space,
                                  const std::vector<double>& radii) {
  RequireNonEmpty(space);
  if (radii.empty()) throw Error(kExitUsage, "empty radii list");
  for (double r : radii) {
    if (!(r > 0.)) throw Error(kExitUsage, "radii must be positive");
  }
  DoublingEstimate estimate;
  estimate.witness_r = radii.front();
  for (int x = 0; x < space.size(); ++x) {
    const BallProfile profile(space, x);
    for (double r : radii) {
      const double ratio = profile.Mass(2. * r) / profile.Mass(r);
      if (ratio > estimate.c_doubling) {
        estimate.c_doubling = ratio;
        estimate.witness_x = x;
        estimate.witness_r = r;
      }
    }
  }
  estimate.omega = std::log2(estimate.c_doubling);
  return estimate;
}

std::vector<double> DefaultEstimatorRadii(const FiniteHomSpace& space,
                                          int count) {
  if (space.size() < 2) return {1.};
  const double lo = 2. * space.r_floor();
  const double hi = 0.5 * space.diameter();
  if (!(hi > lo)) return {space.r_floor()};
  return GeometricRadii(lo, hi, count);
}

GrowthExponent EstimateGrowthExponent(const FiniteHomSpace& space,
                                      const std::vector<double>& radii,
                                      int threads) {
  RequireNonEmpty(space);
  GrowthExponent result;
  result.radii = radii;
  if (radii.size() < 2) return result;
  std::vector<double> log_r;
  for (double r : radii) log_r.push_back(std::log(r));
  std::vector<double> slopes(space.size());
  ParallelFor(space.size(), threads, [&](int x) {
    const BallProfile profile(space, x);
    std::vector<double> log_m;
    for (double r : radii) log_m.push_back(std::log(profile.Mass(r)));
    slopes[x] = OlsSlope(log_r, log_m);
  });
  result.exponent = Median(slopes);
  result.min_exponent = *std::min_element(slopes.begin(), slopes.end());
  result.max_exponent = *std::max_element(slopes.begin(), slopes.end());
  return result;
}

LowerBoundReport CheckLowerBound(const FiniteHomSpace& space, double omega,
                                 double r_min, double r_max,
                                 const LowerBoundOptions& options) {
  RequireNonEmpty(space);
  RequirePositiveWeights(space);
  if (!(omega > 0.)) throw Error(kExitUsage, "omega must be > 0");
  if (!(r_min > 0.) || !(r_max > r_min)) {
    throw Error(kExitUsage, "lower bound needs 0 < r_min < r_max");
  }
  LowerBoundReport report;
  report.omega = omega;
  report.exponent_tolerance = options.exponent_tolerance;
  report.decay_ratio = options.decay_ratio;
  const int n = space.size();
  double scale = options.rescale;
  if (scale == 0.) scale = space.diameter() > 0. ? 1. / space.diameter() : 1.;
  if (!(scale > 0.)) throw Error(kExitUsage, "rescale must be > 0");
  report.rescale = scale;
  report.r_floor = space.r_floor() * scale;
  report.atomic = n == 1;

  double lo = r_min;
  if (!report.atomic && lo < report.r_floor) {
    report.warnings.push_back("radii below r_floor refused");
    lo = report.r_floor;
  }
  report.r_min = lo;
  report.r_max = r_max;
  if (lo >= r_max) {
    report.warnings.push_back("no admissible radius above r_floor");
    report.verdict = Verdict::kInconclusive;
    report.insufficient_data = true;
    return report;
  }
  report.radii = GeometricRadii(lo, r_max, options.num_radii);
  const int num_r = static_cast<int>(report.radii.size());

  // Saturated radii beyond the diameter carry no trend information.
  std::vector<int> trend;
  for (int i = 0; i < num_r; ++i) {
    if (!report.atomic && report.radii[i] <= space.diameter() * scale) {
      trend.push_back(i);
    }
  }
  report.insufficient_data = !report.atomic && trend.size() < 4;

  std::vector<double> log_r;
  for (int i : trend) log_r.push_back(std::log(report.radii[i]));

  struct CenterResult {
    std::vector<double> constants;
    double slope = 0.;
    bool varies = false;
  };
  std::vector<CenterResult> per_center(n);
  ParallelFor(n, options.threads, [&](int x) {
    const BallProfile profile(space, x);
    CenterResult& out = per_center[x];
    out.constants.resize(num_r);
    std::vector<double> log_m;
    double first_mass = -1.;
    for (int i = 0; i < num_r; ++i) {
      const double r = report.radii[i];
      const double mass = profile.Mass(r / scale);
      out.constants[i] = mass / std::pow(r, omega);
    }
    for (int i : trend) {
      const double mass = profile.Mass(report.radii[i] / scale);
      if (first_mass < 0.) first_mass = mass;
      if (mass != first_mass) out.varies = true;
      log_m.push_back(std::log(mass));
    }
    if (trend.size() >= 2) out.slope = OlsSlope(log_r, log_m);
  });

  report.c_by_radius.assign(num_r, std::numeric_limits<double>::infinity());
  report.c_est = std::numeric_limits<double>::infinity();
  report.min_fitted_exponent = std::numeric_limits<double>::infinity();
  report.max_fitted_exponent = -std::numeric_limits<double>::infinity();
  bool any_varies = false;
  std::vector<LowerBoundWitness> failing;
  for (int x = 0; x < n; ++x) {
    const CenterResult& c = per_center[x];
    int argmin = 0;
    for (int i = 0; i < num_r; ++i) {
      report.c_by_radius[i] = std::min(report.c_by_radius[i], c.constants[i]);
      if (c.constants[i] < c.constants[argmin]) argmin = i;
      if (c.constants[i] < report.c_est) {
        report.c_est = c.constants[i];
        report.c_witness_x = x;
        report.c_witness_r = report.radii[i];
      }
    }
    any_varies = any_varies || c.varies;
    if (report.atomic || report.insufficient_data) continue;
    report.min_fitted_exponent = std::min(report.min_fitted_exponent, c.slope);
    report.max_fitted_exponent = std::max(report.max_fitted_exponent, c.slope);
    const double c_small = c.constants[trend.front()];
    const double c_large = c.constants[trend.back()];
    LowerBoundWitness w;
    w.x = x;
    w.r = report.radii[argmin];
    w.constant = c.constants[argmin];
    w.mass = w.constant * std::pow(w.r, omega);
    w.fitted_exponent = c.slope;
    if (c.slope > omega + options.exponent_tolerance &&
        c_small < options.decay_ratio * c_large) {
      w.direction = "small-r";
      w.decay = c_small / c_large;
      failing.push_back(w);
    } else if (options.two_sided &&
               c.slope < omega - options.exponent_tolerance &&
               c_large < options.decay_ratio * c_small) {
      w.direction = "large-r";
      w.decay = c_large / c_small;
      failing.push_back(w);
    }
  }
  if (report.atomic || report.insufficient_data) {
    report.min_fitted_exponent = report.max_fitted_exponent = 0.;
  }
  if (report.atomic) {
    report.warnings.push_back("atomic space: single point");
    report.verdict = Verdict::kPass;
    return report;
  }
  if (report.insufficient_data) {
    report.warnings.push_back("insufficient data: fewer than 4 radii");
    report.verdict = Verdict::kInconclusive;
    return report;
  }
  if (!any_varies) report.warnings.push_back("resolution too coarse");
  std::stable_sort(failing.begin(), failing.end(),
                   [](const LowerBoundWitness& a, const LowerBoundWitness& b) {
                     return a.decay < b.decay;
                   });
  if (failing.size() > 16) failing.resize(16);
  report.witnesses = std::move(failing);
  report.verdict =
      report.witnesses.empty() ? Verdict::kPass : Verdict::kFail;
  return report;
}

LowerBoundReport CheckLocalLowerBound(const FiniteHomSpace& space,
                                      double omega,
                                      LowerBoundOptions options) {
  RequireNonEmpty(space);
  double scale = options.rescale;
  if (scale == 0.) scale = space.diameter() > 0. ? 1. / space.diameter() : 1.;
  options.rescale = scale;
  options.two_sided = false;
  double r_min = space.r_floor() * scale;
  if (!(r_min > 0.)) r_min = 1e-3;
  LowerBoundReport report;
  if (r_min >= 1.) {
    report.local = true;
    report.omega = omega;
    report.rescale = scale;
    report.r_floor = r_min;
    report.insufficient_data = true;
    report.verdict = Verdict::kInconclusive;
    report.warnings.push_back("r_floor exceeds 1: no local scales");
    return report;
  }
  report = CheckLowerBound(space, omega, r_min, 1., options);
  report.local = true;
  return report;
}

ReverseDoublingReport CheckReverseDoubling(
    const FiniteHomSpace& space, double kappa,
    const ReverseDoublingOptions& options) {
  RequireNonEmpty(space);
  if (!(kappa > 0.)) throw Error(kExitUsage, "kappa must be > 0");
  ReverseDoublingReport report;
  report.kappa = kappa;
  const double diam = space.diameter();
  if (space.size() == 1 || !(diam > 0.)) {
    report.atomic_like = true;
    report.verdict = Verdict::kFail;
    report.warnings.push_back("atomic-like space: no admissible lambda");
    return report;
  }
  report.radii =
      GeometricRadii(space.r_floor(), 0.25 * diam, options.num_radii);
  const int num_r = static_cast<int>(report.radii.size());
  struct Best {
    double c = std::numeric_limits<double>::infinity();
    int r_index = 0;
    double lambda = 1.;
  };
  std::vector<std::vector<Best>> per_center(space.size(),
                                            std::vector<Best>(num_r));
  ParallelFor(space.size(), options.threads, [&](int x) {
    const BallProfile profile(space, x);
    for (int i = 0; i < num_r; ++i) {
      const double r = report.radii[i];
      const double base = profile.Mass(r);
      const double lambda_max = diam / (2. * r);
      if (!(lambda_max > 1.)) continue;
      Best& best = per_center[x][i];
      for (int j = 0; j < options.num_lambdas; ++j) {
        // lambda runs over [1, lambda_max) excluding the endpoint.
        const double lambda =
            std::pow(lambda_max, static_cast<double>(j) / options.num_lambdas);
        const double ratio =
            profile.Mass(lambda * r) / (std::pow(lambda, kappa) * base);
        if (ratio < best.c) {
          best.c = ratio;
          best.r_index = i;
          best.lambda = lambda;
        }
      }
    }
  });
  report.c_by_radius.assign(num_r, std::numeric_limits<double>::infinity());
  report.c = std::numeric_limits<double>::infinity();
  for (int x = 0; x < space.size(); ++x) {
    for (int i = 0; i < num_r; ++i) {
      const Best& best = per_center[x][i];
      report.c_by_radius[i] = std::min(report.c_by_radius[i], best.c);
      if (best.c < report.c) {
        report.c = best.c;
        report.witness_x = x;
        report.witness_r = report.radii[i];
        report.witness_lambda = best.lambda;
      }
    }
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.;
  for (double c : report.c_by_radius) {
    if (!std::isfinite(c)) continue;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  if (!std::isfinite(report.c)) {
    report.c = 0.;
    report.warnings.push_back("no sampled scale admits lambda > 1");
    report.verdict = Verdict::kInconclusive;
    return report;
  }
  report.verdict = (report.c > 0. && lo >= options.decay_ratio * hi)
                       ? Verdict::kPass
                       : Verdict::kFail;
  return report;
}

}  // namespace homtype
