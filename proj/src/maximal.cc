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

#include "homtype/maximal.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace homtype {

namespace {

double MaximalAt(const FiniteHomSpace& space, const std::vector<double>& f,
                 int x) {
  const BallProfile profile(space, x);
  const auto& sorted = profile.sorted();
  // The smallest ball is {x}; its average is |f(x)| without rounding.
  double best = std::fabs(f[x]);
  double weighted = space.weight(x) * best;
  // A strict ball ends right before each jump in distance; the last prefix
  // is the whole space.
  for (size_t i = 1; i < sorted.size(); ++i) {
    const int y = sorted[i].second;
    weighted += space.weight(y) * std::fabs(f[y]);
    const bool boundary = i + 1 == sorted.size() || sorted[i + 1].first > sorted[i].first;
    if (boundary) best = std::max(best, weighted / profile.prefix()[i + 1]);
  }
  return best;
}

double Mixed(const std::vector<std::vector<double>>& family,
             const FiniteHomSpace& space, double p, double q) {
  std::vector<double> integrand(space.size());
  for (int x = 0; x < space.size(); ++x) {
    std::vector<double> terms;
    for (const auto& f : family) terms.push_back(std::pow(std::fabs(f[x]), q));
    integrand[x] = space.weight(x) * std::pow(SortedSum(terms), p / q);
  }
  return std::pow(SortedSum(integrand), 1. / p);
}

}  // namespace

std::vector<double> HlMaximal(const FiniteHomSpace& space,
                              const std::vector<double>& f, int threads) {
  std::vector<int> all(space.size());
  for (int i = 0; i < space.size(); ++i) all[i] = i;
  return HlMaximalAt(space, f, all, threads);
}

std::vector<double> HlMaximalAt(const FiniteHomSpace& space,
                                const std::vector<double>& f,
                                const std::vector<int>& points, int threads) {
  if (static_cast<int>(f.size()) != space.size()) {
    throw Error(kExitUsage, "function length does not match the space");
  }
  std::vector<double> out(points.size());
  ParallelFor(static_cast<int>(points.size()), threads,
              [&](int i) { out[i] = MaximalAt(space, f, points[i]); });
  return out;
}

double DefaultKernelExponent(double p) {
  if (std::isinf(p)) return 1.;
  return p / (1. + p);
}

void ValidateKernelParams(const KernelParams& params) {
  std::ostringstream why;
  if (!(params.eta > 0. && params.eta <= 1.)) {
    why << "eta = " << params.eta << " outside (0, 1]";
  } else if (!(params.epsilon > 0. && params.epsilon < params.eta)) {
    why << "epsilon = " << params.epsilon << " outside (0, eta)";
  } else if (!(params.r_exp > 0. && params.r_exp <= 1.)) {
    why << "r = " << params.r_exp << " outside (0, 1]";
  } else if (!(params.gamma > 0.)) {
    why << "gamma = " << params.gamma << " must be positive";
  } else if (!(params.gamma * params.r_exp - params.omega * (1. - params.r_exp) > 0.)) {
    why << "gamma*r - omega*(1-r) = "
        << params.gamma * params.r_exp - params.omega * (1. - params.r_exp) << " <= 0";
  } else {
    return;
  }
  throw Error(kExitUsage, "inadmissible kernel parameters: " + why.str());
}

double AlmostOrthKernel(const IndexSet& index, const FiniteHomSpace& space,
                        int k, int alpha, int j, int tau,
                        const KernelParams& params) {
  ValidateKernelParams(params);
  const IndexCube& a = index.Cube(k, alpha);
  const IndexCube& t = index.Cube(j, tau);
  const double scale = std::pow(index.delta, std::min(k, j));
  const double d = space.dist(a.center, t.center);
  // Grouped pairwise so that swapping the indices gives the same bits.
  const double volume =
      (BallMass(space, a.center, scale) + BallMass(space, t.center, scale)) +
      (BallMass(space, a.center, d) + BallMass(space, t.center, d));
  return std::pow(index.delta, std::abs(k - j) * params.epsilon) *
         std::sqrt(a.mass * t.mass) / volume * std::pow(scale / (scale + d), params.gamma);
}

KernelBoundResult KernelMaximalBoundCheck(const IndexSet& index,
                                          const FiniteHomSpace& space,
                                          const CoefSequence& seq, int k,
                                          int j, int x,
                                          const KernelParams& params,
                                          double constant) {
  ValidateKernelParams(params);
  if (x < 0 || x >= space.size()) throw Error(kExitUsage, "point outside the space");
  const double r = params.r_exp;
  const double scale = std::pow(index.delta, std::min(k, j));
  const double own = BallMass(space, x, scale);

  std::vector<double> lhs_terms;
  std::vector<double> g(space.size(), 0.);
  for (const Coefficient& c : seq) {
    if (c.k != k || c.value == 0.) continue;
    const IndexCube& cube = index.Cube(c.k, c.alpha);
    const double d = space.dist(x, cube.center);
    const double volume = BallMass(space, cube.center, scale) + own +
                          BallMass(space, cube.center, d) + BallMass(space, x, d);
    lhs_terms.push_back(std::sqrt(cube.mass) / volume *
                        std::pow(scale / (scale + d), params.gamma) * std::fabs(c.value));
    const double level = std::pow(cube.mass, -r / 2.) * std::pow(std::fabs(c.value), r);
    for (int y : cube.members) g[y] += level;
  }

  KernelBoundResult result;
  if (lhs_terms.empty()) return result;
  result.lhs = SortedSum(lhs_terms);

  const std::vector<int> ball = BallMembers(space, x, scale);
  const std::vector<double> maximal = HlMaximalAt(space, g, ball);
  const double inf = *std::min_element(maximal.begin(), maximal.end());
  result.rhs = std::pow(index.delta, k * params.omega * (1. - 1. / r)) *
               std::pow(own, 1. / r - 1.) * std::pow(inf, 1. / r);
  result.ratio = result.lhs / result.rhs;
  result.verdict = result.lhs <= constant * result.rhs * (1. + 1e-12) ? Verdict::kPass
                                                                      : Verdict::kFail;
  return result;
}

std::vector<KernelTrial> RandomKernelTrials(const IndexSet& index, int count,
                                            uint64_t seed) {
  std::vector<int> usable;
  for (int i = 0; i < static_cast<int>(index.levels.size()); ++i) {
    if (!index.levels[i].cubes.empty()) usable.push_back(i);
  }
  if (usable.empty()) throw Error(kExitUsage, "index set has no cubes");
  Rng rng(seed);
  std::vector<KernelTrial> trials(count);
  for (KernelTrial& trial : trials) {
    const IndexLevel& level = index.levels[usable[rng.Index(static_cast<int>(usable.size()))]];
    trial.k = level.k;
    trial.j = index.levels[usable[rng.Index(static_cast<int>(usable.size()))]].k;
    trial.x = rng.Index(index.num_points());
    for (int a = 0; a < static_cast<int>(level.cubes.size()); ++a) {
      const double keep = rng.Uniform();
      const double value = rng.Uniform(-1., 1.);
      if (keep < 0.5) trial.seq.push_back({level.k, a, value});
    }
    if (trial.seq.empty()) trial.seq.push_back({level.k, 0, 1.});
  }
  return trials;
}

KernelCalibration CalibrateKernelConstant(const IndexSet& index,
                                          const FiniteHomSpace& space,
                                          const KernelParams& params,
                                          int trials, uint64_t seed,
                                          int threads) {
  ValidateKernelParams(params);
  const std::vector<KernelTrial> batch = RandomKernelTrials(index, trials, seed);
  std::vector<double> ratios(batch.size());
  ParallelFor(trials, threads, [&](int i) {
    const KernelTrial& t = batch[i];
    ratios[i] = KernelMaximalBoundCheck(index, space, t.seq, t.k, t.j, t.x, params, 0.).ratio;
  });
  KernelCalibration calibration;
  calibration.trials = trials;
  for (int i = 0; i < trials; ++i) {
    if (ratios[i] > calibration.constant) {
      calibration.constant = ratios[i];
      calibration.witness_trial = i;
    }
  }
  return calibration;
}

FsResult FsVectorMaximalCheck(const FiniteHomSpace& space,
                              const std::vector<std::vector<double>>& family,
                              double p, double q, double r_exp, int threads) {
  if (!(p > 0.) || !(q > 0.) || std::isinf(p) || std::isinf(q)) {
    throw Error(kExitUsage, "vector maximal check needs finite p, q > 0");
  }
  if (!(r_exp > 0. && r_exp < std::min(p, q))) {
    throw Error(kExitUsage, "vector maximal check needs 0 < r < min(p, q)");
  }
  std::vector<std::vector<double>> maximal;
  for (const auto& f : family) maximal.push_back(HlMaximal(space, f, threads));
  FsResult result;
  result.lhs = Mixed(maximal, space, p, q);
  result.rhs = Mixed(family, space, p, q);
  result.ratio = result.rhs > 0. ? result.lhs / result.rhs : 1.;
  return result;
}

}  // namespace homtype
