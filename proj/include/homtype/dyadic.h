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

#ifndef HOMTYPE_DYADIC_H_
#define HOMTYPE_DYADIC_H_

#include <string>
#include <vector>

#include "homtype/space.h"

namespace homtype {

struct NetConstants {
  double delta = 1. / 32.;
  double c0 = 1.;
  double C0 = 2.;
  double a0 = 1.;
};

// Throws kExitInadmissible with the inequality when 12 A0^3 C0 delta > c0.
void CheckAdmissible(const NetConstants& constants);

// Largest power of 1/2 that is admissible for the given A0, c0, C0.
double DefaultDelta(double a0, double c0 = 1., double C0 = 2.);

struct LevelWindow {
  int k_min = 0;
  int k_max = 0;
};

// k_min: largest k with C0 delta^k >= diameter.
// k_max: smallest k >= k_min with c0 delta^k <= r_floor.
LevelWindow DefaultLevelWindow(const FiniteHomSpace& space,
                               const NetConstants& constants);

struct NetSystem {
  NetConstants constants;
  LevelWindow window;
  uint64_t seed = kDefaultSeed;
  // centers[k - k_min]: sorted point ids of the level-k net.
  std::vector<std::vector<int>> centers;

  const std::vector<int>& Centers(int k) const { return centers[k - window.k_min]; }
  // Points of the level-(k+1) net that are not in the level-k net.
  std::vector<int> NewCenters(int k) const;
};

NetSystem BuildNets(const FiniteHomSpace& space, const NetConstants& constants,
                    const LevelWindow& window, uint64_t seed = kDefaultSeed);

struct CubeLevel {
  int k = 0;
  std::vector<int> centers;     // point id of each cube's center
  std::vector<int> assignment;  // point -> cube index
  std::vector<int> parent;      // cube -> index at level k - 1, -1 at k_min
  std::vector<std::vector<int>> children;
  std::vector<std::vector<int>> members;
  std::vector<double> mass;
  // Center also belongs to the level k - 1 net.
  std::vector<bool> inherited;
};

struct CubeSystem {
  NetConstants constants;
  double c1 = 0.;
  double C1 = 0.;
  LevelWindow window;
  double total_mass = 0.;
  std::vector<CubeLevel> levels;

  const CubeLevel& Level(int k) const { return levels[k - window.k_min]; }
  CubeLevel& Level(int k) { return levels[k - window.k_min]; }
  int num_levels() const { return static_cast<int>(levels.size()); }
  double Scale(int k) const;
};

// Assigns points bottom-up: each new center joins the cube of its nearest
// coarser center. Throws kExitInternal when the axioms fail.
CubeSystem BuildCubes(const NetSystem& nets, const FiniteHomSpace& space);

// Recomputes members, masses, parents and children from the assignments.
void RefreshCubeLinks(CubeSystem& cubes, const FiniteHomSpace& space);

struct AxiomViolation {
  std::string axiom;  // partition | nesting | ball-sandwich-inner |
                      // ball-sandwich-outer | center-containment
  int k = 0;
  int cube = -1;
  int point = -1;
  int other_level = 0;
  std::string detail;
};

struct AxiomReport {
  bool pass = true;
  int64_t violation_count = 0;
  std::vector<AxiomViolation> violations;  // first 64 only
  std::string interior_closure = "not applicable";
};

AxiomReport VerifyCubeAxioms(const CubeSystem& cubes,
                             const FiniteHomSpace& space);

// floor(log_{1/delta}(C1 / c1)) + 1.
int ChainBound(double delta, double c1, double C1);

struct ChainReport {
  int max_chain_len = 0;
  int bound_n = 0;
  bool within_bound = true;
  bool atomic = false;
  int witness_k = 0;
  int witness_cube = -1;
  // Smallest branching count M >= 2 over all cubes; 0 when none branch.
  int m_min = 0;
  // branching[k - k_min][cube] = number of children.
  std::vector<std::vector<int>> branching;
};

// Singleton cubes model one resolution cell; their chains are not counted.
ChainReport MaxSingleChildChain(const CubeSystem& cubes);

enum class IndexScope { kAllLevels, kNonnegativeLevels };

struct PropagationReport {
  Verdict verdict = Verdict::kPass;
  double c = 0.;
  double c_tilde = 0.;
  double omega = 0.;
  int m_min = 0;
  int bound_n = 0;
  int witness_k = 0;
  int witness_cube = -1;
  double witness_mass = 0.;
  double witness_required = 0.;
};

// Hypothesis: every cube whose center is new at its level carries
// mass >= C delta^(k omega). Throws "hypothesis violated" otherwise.
PropagationReport PropagateCubeLowerBound(const CubeSystem& cubes, double c,
                                          double omega, IndexScope scope);

struct BallBoundReport {
  Verdict verdict = Verdict::kPass;
  double alpha = 0.;
  int level = 0;
  int cubes_used = 0;
  bool contained = true;
  double c_tilde = 0.;
  double certified = 0.;
  double actual = 0.;
};

// Shrink factor 1 / (1 + 2 / delta).
double ShrinkFactor(double delta);

BallBoundReport BallLowerBoundFromCubes(const CubeSystem& cubes,
                                        const FiniteHomSpace& space, int x,
                                        double r, double c, double omega);

}  // namespace homtype

#endif  // HOMTYPE_DYADIC_H_
