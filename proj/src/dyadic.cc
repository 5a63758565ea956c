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

#include "homtype/dyadic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace homtype {

namespace {

constexpr int kMaxListedViolations = 64;
constexpr double kRelSlack = 1e-12;

// Nearest candidate to x; ties go to the lowest id since candidates are
// sorted ascending and only a strictly smaller distance replaces the best.
int Nearest(const FiniteHomSpace& space, int x,
            const std::vector<int>& candidates) {
  int best = -1;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < candidates.size(); ++i) {
    const double d = space.dist(x, candidates[i]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(i);
    }
  }
  return best;
}

std::string Describe(const char* what, double lhs, const char* op,
                     double rhs) {
  std::ostringstream s;
  s.precision(17);
  s << what << " " << lhs << " " << op << " " << rhs;
  return s.str();
}

}  // namespace

void CheckAdmissible(const NetConstants& c) {
  if (!(c.delta > 0. && c.delta < 1.)) {
    throw Error(kExitUsage, "delta must lie in (0, 1)");
  }
  if (!(c.c0 > 0.) || !(c.C0 > 0.) || !(c.a0 >= 1.)) {
    throw Error(kExitUsage, "c0, C0 must be > 0 and A0 >= 1");
  }
  const double lhs = 12. * c.a0 * c.a0 * c.a0 * c.C0 * c.delta;
  if (lhs > c.c0) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "inadmissible constants: 12*A0^3*C0*delta = 12*" << c.a0 << "^3*"
        << c.C0 << "*" << c.delta << " = " << lhs << " > c0 = " << c.c0;
    throw Error(kExitInadmissible, msg.str());
  }
}

double DefaultDelta(double a0, double c0, double C0) {
  double delta = 0.5;
  while (12. * a0 * a0 * a0 * C0 * delta > c0) delta *= 0.5;
  return delta;
}

LevelWindow DefaultLevelWindow(const FiniteHomSpace& space,
                               const NetConstants& c) {
  LevelWindow window;
  const double diam = space.diameter();
  const double floor = space.r_floor();
  if (space.size() < 2 || !(diam > 0.)) return window;
  auto scale = [&c](int k) { return std::pow(c.delta, k); };
  int k = static_cast<int>(std::floor(std::log(diam / c.C0) / std::log(c.delta)));
  while (c.C0 * scale(k) < diam) --k;
  while (c.C0 * scale(k + 1) >= diam) ++k;
  window.k_min = k;
  k = static_cast<int>(std::ceil(std::log(floor / c.c0) / std::log(c.delta)));
  k = std::max(k, window.k_min);
  while (c.c0 * scale(k) > floor) ++k;
  while (k - 1 >= window.k_min && c.c0 * scale(k - 1) <= floor) --k;
  window.k_max = k;
  return window;
}

std::vector<int> NetSystem::NewCenters(int k) const {
  const std::vector<int>& coarse = Centers(k);
  const std::vector<int>& fine = Centers(k + 1);
  std::vector<int> fresh;
  std::set_difference(fine.begin(), fine.end(), coarse.begin(), coarse.end(),
                      std::back_inserter(fresh));
  return fresh;
}

NetSystem BuildNets(const FiniteHomSpace& space, const NetConstants& constants,
                    const LevelWindow& window, uint64_t seed) {
  CheckAdmissible(constants);
  if (space.size() == 0) throw Error(kExitUsage, "empty space");
  if (window.k_max < window.k_min) throw Error(kExitUsage, "empty level range");
  NetSystem nets;
  nets.constants = constants;
  nets.window = window;
  nets.seed = seed;
  const int n = space.size();
  const std::vector<int> order = SeededPermutation(n, seed);
  std::vector<bool> is_center(n, false);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  for (int k = window.k_min; k <= window.k_max; ++k) {
    const double separation = constants.c0 * std::pow(constants.delta, k);
    for (int p : order) {
      if (is_center[p] || nearest[p] < separation) continue;
      is_center[p] = true;
      for (int x = 0; x < n; ++x) nearest[x] = std::min(nearest[x], space.dist(x, p));
    }
    const double cover = constants.C0 * std::pow(constants.delta, k);
    for (int x = 0; x < n; ++x) {
      if (!(nearest[x] < cover)) {
        throw Error(kExitInadmissible,
                    "covering fails at level " + std::to_string(k) +
                        ": raise C0 to at least c0");
      }
    }
    std::vector<int> level;
    for (int x = 0; x < n; ++x) {
      if (is_center[x]) level.push_back(x);
    }
    nets.centers.push_back(std::move(level));
  }
  return nets;
}

double CubeSystem::Scale(int k) const { return std::pow(constants.delta, k); }

void RefreshCubeLinks(CubeSystem& cubes, const FiniteHomSpace& space) {
  const int n = space.size();
  for (int li = 0; li < cubes.num_levels(); ++li) {
    CubeLevel& level = cubes.levels[li];
    const int m = static_cast<int>(level.centers.size());
    level.members.assign(m, {});
    level.mass.assign(m, 0.);
    for (int x = 0; x < n; ++x) {
      const int a = level.assignment[x];
      if (a < 0 || a >= m) continue;
      level.members[a].push_back(x);
      level.mass[a] += space.weight(x);
    }
    level.parent.assign(m, -1);
    level.inherited.assign(m, false);
    level.children.assign(m, {});
    if (li == 0) continue;
    const CubeLevel& coarse = cubes.levels[li - 1];
    std::vector<bool> coarse_center(n, false);
    for (int z : coarse.centers) coarse_center[z] = true;
    for (int b = 0; b < m; ++b) {
      level.parent[b] = coarse.assignment[level.centers[b]];
      level.inherited[b] = coarse_center[level.centers[b]];
    }
  }
  for (int li = 1; li < cubes.num_levels(); ++li) {
    CubeLevel& level = cubes.levels[li];
    CubeLevel& coarse = cubes.levels[li - 1];
    for (int b = 0; b < static_cast<int>(level.centers.size()); ++b) {
      const int p = level.parent[b];
      if (p >= 0 && p < static_cast<int>(coarse.centers.size())) {
        coarse.children[p].push_back(b);
      }
    }
  }
}

CubeSystem BuildCubes(const NetSystem& nets, const FiniteHomSpace& space) {
  CubeSystem cubes;
  cubes.constants = nets.constants;
  const double a0 = nets.constants.a0;
  cubes.c1 = nets.constants.c0 / (3. * a0 * a0);
  cubes.C1 = 2. * a0 * nets.constants.C0;
  cubes.window = nets.window;
  cubes.total_mass = space.total_mass();
  const int n = space.size();
  const int num_levels = nets.window.k_max - nets.window.k_min + 1;
  cubes.levels.resize(num_levels);
  for (int li = 0; li < num_levels; ++li) {
    cubes.levels[li].k = nets.window.k_min + li;
    cubes.levels[li].centers = nets.centers[li];
    cubes.levels[li].assignment.assign(n, -1);
  }
  // Finest level: nearest center, which is the point itself whenever the
  // window reaches r_floor.
  CubeLevel& finest = cubes.levels.back();
  for (int x = 0; x < n; ++x) finest.assignment[x] = Nearest(space, x, finest.centers);
  for (int li = num_levels - 2; li >= 0; --li) {
    CubeLevel& coarse = cubes.levels[li];
    const CubeLevel& fine = cubes.levels[li + 1];
    std::vector<int> position(n, -1);
    for (size_t a = 0; a < coarse.centers.size(); ++a) {
      position[coarse.centers[a]] = static_cast<int>(a);
    }
    std::vector<int> parent(fine.centers.size());
    for (size_t b = 0; b < fine.centers.size(); ++b) {
      const int z = fine.centers[b];
      parent[b] = position[z] >= 0 ? position[z] : Nearest(space, z, coarse.centers);
    }
    for (int x = 0; x < n; ++x) coarse.assignment[x] = parent[fine.assignment[x]];
  }
  RefreshCubeLinks(cubes, space);
  const AxiomReport axioms = VerifyCubeAxioms(cubes, space);
  if (!axioms.pass) {
    const AxiomViolation& v = axioms.violations.front();
    throw Error(kExitInternal, "cube axiom violated: " + v.axiom + " at level " +
                                   std::to_string(v.k) + ", cube " +
                                   std::to_string(v.cube) + ", point " +
                                   std::to_string(v.point) + ": " + v.detail);
  }
  return cubes;
}

AxiomReport VerifyCubeAxioms(const CubeSystem& cubes,
                             const FiniteHomSpace& space) {
  AxiomReport report;
  auto add = [&report](AxiomViolation v) {
    ++report.violation_count;
    if (report.violations.size() < kMaxListedViolations) {
      report.violations.push_back(std::move(v));
    }
  };
  const int n = space.size();
  const double total = space.total_mass();

  for (const CubeLevel& level : cubes.levels) {
    const int m = static_cast<int>(level.centers.size());
    std::vector<double> mass(m, 0.);
    bool in_range = true;
    for (int x = 0; x < n; ++x) {
      const int a = level.assignment[x];
      if (a < 0 || a >= m) {
        add({"partition", level.k, a, x, level.k, "point not assigned"});
        in_range = false;
        continue;
      }
      mass[a] += space.weight(x);
    }
    double sum = 0.;
    for (double w : mass) sum += w;
    if (in_range && std::fabs(sum - total) > kRelSlack * total) {
      add({"partition", level.k, -1, -1, level.k,
           Describe("mass sum", sum, "!=", total)});
    }
    for (int a = 0; a < m; ++a) {
      if (level.assignment[level.centers[a]] != a) {
        add({"partition", level.k, a, level.centers[a], level.k,
             "center outside its cube"});
      }
    }
  }

  for (int li = 1; li < cubes.num_levels(); ++li) {
    const CubeLevel& fine = cubes.levels[li];
    const CubeLevel& coarse = cubes.levels[li - 1];
    for (int x = 0; x < n; ++x) {
      const int b = fine.assignment[x];
      if (b < 0 || b >= static_cast<int>(fine.centers.size())) continue;
      const int expected = coarse.assignment[fine.centers[b]];
      if (coarse.assignment[x] != expected) {
        add({"nesting", fine.k, b, x, coarse.k,
             "cube meets two parents at level " + std::to_string(coarse.k)});
      }
    }
  }

  for (const CubeLevel& level : cubes.levels) {
    const double inner = cubes.c1 * cubes.Scale(level.k);
    const double outer = cubes.C1 * cubes.Scale(level.k);
    for (int a = 0; a < static_cast<int>(level.centers.size()); ++a) {
      const int z = level.centers[a];
      for (int y = 0; y < n; ++y) {
        const double d = space.dist(z, y);
        const bool member = level.assignment[y] == a;
        if (d < inner && !member) {
          add({"ball-sandwich-inner", level.k, a, y, level.k,
               Describe("dist", d, "<", inner)});
        }
        if (member && !(d < outer)) {
          add({"ball-sandwich-outer", level.k, a, y, level.k,
               Describe("dist", d, ">=", outer)});
        }
      }
    }
  }

  for (int li = 1; li < cubes.num_levels(); ++li) {
    const CubeLevel& fine = cubes.levels[li];
    const double fine_radius = cubes.C1 * cubes.Scale(fine.k);
    for (int b = 0; b < static_cast<int>(fine.centers.size()); ++b) {
      const int zb = fine.centers[b];
      std::vector<int> ball;
      for (int y = 0; y < n; ++y) {
        if (space.dist(zb, y) < fine_radius) ball.push_back(y);
      }
      for (int lj = 0; lj < li; ++lj) {
        const CubeLevel& coarse = cubes.levels[lj];
        const int a = coarse.assignment[zb];
        if (a < 0 || a >= static_cast<int>(coarse.centers.size())) continue;
        const int za = coarse.centers[a];
        const double coarse_radius = cubes.C1 * cubes.Scale(coarse.k);
        for (int y : ball) {
          const double d = space.dist(za, y);
          if (!(d < coarse_radius)) {
            add({"center-containment", fine.k, b, y, coarse.k,
                 Describe("dist", d, ">=", coarse_radius)});
          }
        }
      }
    }
  }
  report.pass = report.violation_count == 0;
  return report;
}

int ChainBound(double delta, double c1, double C1) {
  const double value = std::log(C1 / c1) / std::log(1. / delta);
  // Guard exact powers against rounding just below an integer.
  return static_cast<int>(std::floor(value + 1e-12)) + 1;
}

ChainReport MaxSingleChildChain(const CubeSystem& cubes) {
  ChainReport report;
  report.bound_n = ChainBound(cubes.constants.delta, cubes.c1, cubes.C1);
  const int num_levels = cubes.num_levels();
  report.branching.resize(num_levels);
  for (int li = 0; li < num_levels; ++li) {
    const CubeLevel& level = cubes.levels[li];
    for (size_t a = 0; a < level.centers.size(); ++a) {
      const int m = static_cast<int>(level.children[a].size());
      report.branching[li].push_back(m);
      if (m >= 2 && (report.m_min == 0 || m < report.m_min)) report.m_min = m;
      if (level.members[a].size() == 1 && li + 1 < num_levels) report.atomic = true;
    }
  }
  for (int li = 0; li + 1 < num_levels; ++li) {
    const CubeLevel& level = cubes.levels[li];
    for (int a = 0; a < static_cast<int>(level.centers.size()); ++a) {
      int len = 0;
      int lj = li;
      int cur = a;
      while (lj + 1 < num_levels && cubes.levels[lj].children[cur].size() == 1 &&
             cubes.levels[lj].members[cur].size() > 1) {
        cur = cubes.levels[lj].children[cur].front();
        ++lj;
        ++len;
      }
      if (len > report.max_chain_len) {
        report.max_chain_len = len;
        report.witness_k = level.k;
        report.witness_cube = a;
      }
    }
  }
  report.within_bound = report.max_chain_len <= report.bound_n;
  return report;
}

PropagationReport PropagateCubeLowerBound(const CubeSystem& cubes, double c,
                                          double omega, IndexScope scope) {
  if (c < 0. || !(omega > 0.)) throw Error(kExitUsage, "need C >= 0 and omega > 0");
  PropagationReport report;
  report.c = c;
  report.omega = omega;
  const ChainReport chains = MaxSingleChildChain(cubes);
  report.m_min = chains.m_min;
  report.bound_n = chains.bound_n;
  auto in_scope = [scope](int k) {
    return scope == IndexScope::kAllLevels || k >= 0;
  };
  // A cube whose center is new at level j is the cube of an index at
  // level j - 1; the bound is taken at the cube's own level.
  for (int li = 1; li < cubes.num_levels(); ++li) {
    const CubeLevel& level = cubes.levels[li];
    if (!in_scope(level.k - 1)) continue;
    const double required = c * std::pow(cubes.Scale(level.k), omega);
    for (int a = 0; a < static_cast<int>(level.centers.size()); ++a) {
      if (level.inherited[a]) continue;
      if (level.mass[a] < required * (1. - kRelSlack)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "hypothesis violated: cube " << a << " at level " << level.k
            << " has mass " << level.mass[a] << " < " << required;
        throw Error(kExitUsage, msg.str());
      }
    }
  }
  if (c == 0. || chains.m_min < 2) {
    report.c_tilde = 0.;
    return report;
  }
  report.c_tilde = c * (chains.m_min - 1) *
                   std::pow(cubes.constants.delta, (chains.bound_n + 1) * omega);
  for (const CubeLevel& level : cubes.levels) {
    if (!in_scope(level.k)) continue;
    const double required = report.c_tilde * std::pow(cubes.Scale(level.k), omega);
    for (int a = 0; a < static_cast<int>(level.centers.size()); ++a) {
      if (level.mass[a] < required * (1. - kRelSlack)) {
        report.verdict = Verdict::kFail;
        report.witness_k = level.k;
        report.witness_cube = a;
        report.witness_mass = level.mass[a];
        report.witness_required = required;
        return report;
      }
    }
  }
  return report;
}

double ShrinkFactor(double delta) { return 1. / (1. + 2. / delta); }

BallBoundReport BallLowerBoundFromCubes(const CubeSystem& cubes,
                                        const FiniteHomSpace& space, int x,
                                        double r, double c, double omega) {
  if (x < 0 || x >= space.size()) throw Error(kExitUsage, "point out of range");
  if (!(r > 0.) || (space.size() > 1 && r < space.r_floor())) {
    throw Error(kExitUsage, "scale out of range: r below r_floor");
  }
  BallBoundReport report;
  const double delta = cubes.constants.delta;
  report.alpha = ShrinkFactor(delta);
  const double target = report.alpha * r;
  // C1 delta^(k+1) <= alpha r < C1 delta^k.
  int k = static_cast<int>(std::floor(std::log(target / cubes.C1) / std::log(delta)));
  while (!(target < cubes.C1 * std::pow(delta, k))) --k;
  while (cubes.C1 * std::pow(delta, k + 1) > target) ++k;
  if (k < cubes.window.k_min || k > cubes.window.k_max) {
    throw Error(kExitUsage, "scale out of range: level " + std::to_string(k) +
                                " outside the window");
  }
  report.level = k;
  const CubeLevel& level = cubes.Level(k);
  std::vector<bool> used(level.centers.size(), false);
  for (int y = 0; y < space.size(); ++y) {
    if (space.dist(x, y) < target) used[level.assignment[y]] = true;
  }
  const double required = c * std::pow(cubes.Scale(k), omega);
  for (size_t a = 0; a < used.size(); ++a) {
    if (!used[a]) continue;
    ++report.cubes_used;
    if (level.mass[a] < required * (1. - kRelSlack)) {
      throw Error(kExitUsage, "hypothesis violated: cube " + std::to_string(a) +
                                  " at level " + std::to_string(k));
    }
    for (int y : level.members[a]) {
      if (!(space.dist(x, y) < r)) report.contained = false;
    }
  }
  report.c_tilde = c * std::pow(report.alpha / cubes.C1, omega);
  report.certified = report.c_tilde * std::pow(r, omega);
  report.actual = BallMass(space, x, r);
  report.verdict = (report.contained && report.certified <= report.actual)
                       ? Verdict::kPass
                       : Verdict::kFail;
  return report;
}

}  // namespace homtype
